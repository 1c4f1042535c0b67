"""Slow, exact reference computations used to cross-check the fast paths.

Everything here runs in exact rational arithmetic (:class:`~fractions.Fraction`)
over the parsed decimal values, enumerates exhaustively instead of pruning,
and is deliberately independent of the production algorithms: shortest paths
by full simple-path enumeration, effective resistance by spanning-tree /
two-forest counts, block structure by induced-path enumeration.  Sizes are
capped; these are test oracles, not user-facing tools.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator

from .core import ConductanceGraph, Path, WeightedGraph, edge_key
from .errors import SameVertex, TooLarge

PATH_CAP = 12
TREE_CAP = 8

ExactWeight = Fraction | None  # None spells +infinity in the exact lane.


def exact_weight(g: WeightedGraph, u: int, v: int) -> ExactWeight:
    """w(u, v) as an exact rational, or None for infinity."""
    if u == v:
        return Fraction(0)
    key = edge_key(u, v)
    if key in g.exact:
        return g.exact[key]
    w = g.weights.get(key)
    if w is None or math.isinf(w):
        return None
    return Fraction(repr(w))


def exact_conductance(g: ConductanceGraph, u: int, v: int) -> Fraction:
    if u == v:
        return Fraction(0)
    key = edge_key(u, v)
    if key in g.exact:
        return g.exact[key]
    return Fraction(repr(g.b.get(key, 0.0)))


def enumerate_simple_paths(
    g: WeightedGraph,
    x: int,
    y: int,
    include_infinite_steps: bool = False,
) -> Iterator[Path]:
    """All injective paths from x to y, in lexicographic vertex order.

    By default only finite-weight steps are walked; with
    ``include_infinite_steps`` every vertex pair is a step, which makes the
    enumeration factorial and is only usable on tiny graphs.
    """
    if g.n > PATH_CAP:
        raise TooLarge(f"path enumeration capped at {PATH_CAP} vertices, got {g.n}")
    if x == y:
        yield Path((x,))
        return
    on_path = [False] * g.n
    on_path[x] = True
    stack: list[int] = [x]

    def successors(u: int) -> list[int]:
        if include_infinite_steps:
            return [v for v in range(g.n) if not on_path[v]]
        return [v for v, _ in g.neighbors(u) if not on_path[v]]

    def walk(u: int) -> Iterator[Path]:
        for v in successors(u):
            stack.append(v)
            on_path[v] = True
            if v == y:
                yield Path(tuple(stack))
            else:
                yield from walk(v)
            on_path[v] = False
            stack.pop()

    yield from walk(x)


def exact_path_length(g: WeightedGraph, path: Path) -> ExactWeight:
    total = Fraction(0)
    for u, v in path.steps():
        w = exact_weight(g, u, v)
        if w is None:
            return None
        total += w
    return total


def brute_metric(g: WeightedGraph, x: int, y: int) -> ExactWeight:
    """Exact shortest-path value by enumerating every injective path."""
    best: ExactWeight = None
    for path in enumerate_simple_paths(g, x, y):
        length = exact_path_length(g, path)
        if length is not None and (best is None or length < best):
            best = length
    return best


def brute_metric_from(g: WeightedGraph, x: int) -> list[ExactWeight]:
    """Exact distances from x to every vertex via one DFS over injective paths."""
    if g.n > PATH_CAP:
        raise TooLarge(f"path enumeration capped at {PATH_CAP} vertices, got {g.n}")
    best: list[ExactWeight] = [None] * g.n
    best[x] = Fraction(0)
    on_path = [False] * g.n
    on_path[x] = True

    def walk(u: int, acc: Fraction) -> None:
        for v, _ in g.neighbors(u):
            if on_path[v]:
                continue
            w = exact_weight(g, u, v)
            if w is None:
                continue
            total = acc + w
            if best[v] is None or total < best[v]:
                best[v] = total
            on_path[v] = True
            walk(v, total)
            on_path[v] = False

    walk(x, Fraction(0))
    return best


def _forest_sum(
    n: int,
    edges: list[tuple[int, int, Fraction]],
    groups: tuple[tuple[int, ...], ...],
) -> Fraction:
    """Sum of edge-conductance products over constrained spanning forests.

    A subset of edges counts when it is acyclic, has exactly ``len(groups)``
    trees once all ``n`` vertices are included, and each group lies entirely
    in its own tree (distinct groups in distinct trees).  With one group this
    is the weighted spanning-tree sum; with two singleton groups it is the
    two-forest sum whose ratio to the tree sum is the effective resistance.

    Enumerates include/exclude per edge; an edge may only be included while
    its endpoints are in different components, which walks each acyclic
    subset exactly once.
    """
    target = len(groups)
    side = [-1] * n
    for gi, members in enumerate(groups):
        for v in members:
            side[v] = gi

    def shore_conflict(comp: list[int]) -> bool:
        seen: dict[int, int] = {}
        for v in range(n):
            s = side[v]
            if s < 0:
                continue
            r = comp[v]
            if r in seen and seen[r] != s:
                return True
            seen[r] = s
        return False

    def rec(idx: int, comp: list[int], acc: Fraction) -> Fraction:
        if shore_conflict(comp):
            return Fraction(0)
        # Prune: even merging every remaining edge cannot reach the target
        # component count.
        trial = comp[:]
        for a, b, _ in edges[idx:]:
            ra, rb = trial[a], trial[b]
            if ra != rb:
                trial = [ra if c == rb else c for c in trial]
        if len(set(trial)) > target:
            return Fraction(0)
        if idx == len(edges):
            if len(set(comp)) != target:
                return Fraction(0)
            shores = {comp[v] for v in range(n) if side[v] >= 0}
            return acc if len(shores) == target else Fraction(0)
        u, v, c = edges[idx]
        total = rec(idx + 1, comp, acc)  # leave the edge out
        ru, rv = comp[u], comp[v]
        if ru != rv:
            merged = [ru if x == rv else x for x in comp]
            total += rec(idx + 1, merged, acc * c)
        return total

    return rec(0, list(range(n)), Fraction(1))


def spanning_tree_sum(g: ConductanceGraph) -> Fraction:
    """Weighted count of spanning trees (sum of edge-conductance products)."""
    if g.n > TREE_CAP:
        raise TooLarge(f"tree enumeration capped at {TREE_CAP} vertices, got {g.n}")
    if g.n == 0:
        return Fraction(1)
    edges = [(u, v, exact_conductance(g, u, v)) for u, v, _ in g.edges()]
    return _forest_sum(g.n, edges, ((0,),))


def two_forest_sum(g: ConductanceGraph, x: int, y: int) -> Fraction:
    """Weighted count of 2-tree spanning forests separating x from y."""
    if g.n > TREE_CAP:
        raise TooLarge(f"tree enumeration capped at {TREE_CAP} vertices, got {g.n}")
    if x == y:
        raise SameVertex("the separated vertices must be distinct")
    edges = [(u, v, exact_conductance(g, u, v)) for u, v, _ in g.edges()]
    return _forest_sum(g.n, edges, ((x,), (y,)))


def spanning_tree_resistance(g: ConductanceGraph, x: int, y: int) -> ExactWeight:
    """Exact effective resistance as the two-forest / spanning-tree ratio.

    Computed on the component containing x, so unrelated components do not
    zero out the tree sum; None when x and y are not connected.
    """
    if x == y:
        raise SameVertex("resistance needs two distinct vertices")
    if g.n > TREE_CAP:
        raise TooLarge(f"tree enumeration capped at {TREE_CAP} vertices, got {g.n}")
    members = [x]
    seen = {x}
    while members != []:
        frontier = []
        for u in members:
            for v, _ in g.neighbors(u):
                if v not in seen:
                    seen.add(v)
                    frontier.append(v)
        members = frontier
    if y not in seen:
        return None
    comp = sorted(seen)
    index = {v: i for i, v in enumerate(comp)}
    edges = [
        (index[u], index[v], exact_conductance(g, u, v))
        for u, v, _ in g.edges()
        if u in index and v in index
    ]
    t = _forest_sum(len(comp), edges, ((index[x],),))
    f = _forest_sum(len(comp), edges, ((index[x],), (index[y],)))
    return f / t


def unique_induced_path(g: ConductanceGraph, x: int, y: int) -> tuple[bool, list[Path]]:
    """Whether exactly one induced x-y path exists; returns up to two found.

    A path is induced when no edge joins two non-consecutive path vertices.
    The search stops as soon as two induced paths are known.
    """
    if g.n > PATH_CAP:
        raise TooLarge(f"path enumeration capped at {PATH_CAP} vertices, got {g.n}")
    if x == y:
        raise SameVertex("induced-path search needs two distinct vertices")
    found: list[Path] = []
    on_path = [False] * g.n
    on_path[x] = True
    stack = [x]

    def induced(candidate: tuple[int, ...]) -> bool:
        k = len(candidate)
        for i in range(k):
            for j in range(i + 2, k):
                if g.conductance(candidate[i], candidate[j]) > 0:
                    return False
        return True

    def walk(u: int) -> None:
        for v, _ in g.neighbors(u):
            if on_path[v] or len(found) >= 2:
                continue
            stack.append(v)
            on_path[v] = True
            if v == y:
                if induced(tuple(stack)):
                    found.append(Path(tuple(stack)))
            else:
                walk(v)
            on_path[v] = False
            stack.pop()

    walk(x)
    return len(found) == 1, found
