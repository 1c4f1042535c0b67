"""Separation, triangle equality, and the tree / block-graph resistance theorems.

A vertex y separates x from z exactly when the resistance triangle
inequality is tight at (x, y, z); resistance equals the inverse-conductance
path metric exactly on trees; and resistance is itself a path metric for a
weight that lives only on edges exactly on block graphs (every biconnected
component a clique, equivalently unique induced paths).  Each recognition
returns a constructive certificate or counterexample, and each theorem is
exercised from both directions in the test suites.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .core import TAU_EQ, ConductanceGraph, Path, WeightedGraph, weights_close
from .errors import Disconnected, NotDistinct
from .pathmetric import MetricTable, all_pairs_metric
from .resistance import components, resistance_matrix


@dataclass
class SeparationCertificate:
    """Separator plus the two shores it cuts x's and z's sides into."""

    separator: int
    side_x: list[int]
    side_z: list[int]
    verified: bool

    @property
    def separated(self) -> bool:
        return True


@dataclass
class NotSeparated:
    """Witness path from x to z that avoids the candidate separator."""

    witness: Path

    @property
    def separated(self) -> bool:
        return False


def _component_avoiding(b: ConductanceGraph, banned: int, start: int) -> tuple[list[int], dict[int, int]]:
    """Vertices reachable from start in b - banned, with BFS parents."""
    parent: dict[int, int] = {start: start}
    order = [start]
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v, _ in b.neighbors(u):
            if v == banned or v in parent:
                continue
            parent[v] = u
            order.append(v)
            queue.append(v)
    return order, parent


def separates(
    b: ConductanceGraph, y: int, x: int, z: int
) -> SeparationCertificate | NotSeparated:
    """Does every path from x to z pass through y?

    Equivalent to x and z falling into different components after deleting
    y; linear-time reachability instead of path enumeration.  Returns a
    verified certificate with the two shores, or the witness path avoiding y.
    """
    for v in (x, y, z):
        b._check_vertex(v)
    if len({x, y, z}) != 3:
        raise NotDistinct("separator and endpoints must be pairwise distinct")
    comp_x = next((c for c in components(b) if x in c), [x])
    if z not in comp_x:
        raise Disconnected(f"{b.label(x)} and {b.label(z)} are not connected")
    side_x, parent = _component_avoiding(b, y, x)
    if z in parent:
        route = [z]
        while route[-1] != x:
            route.append(parent[route[-1]])
        return NotSeparated(witness=Path(tuple(reversed(route))))
    side_z, _ = _component_avoiding(b, y, z)
    cert = SeparationCertificate(
        separator=y,
        side_x=sorted(side_x),
        side_z=sorted(side_z),
        verified=False,
    )
    cert.verified = _verify_certificate(b, cert)
    return cert


def _verify_certificate(b: ConductanceGraph, cert: SeparationCertificate) -> bool:
    """Re-check the certificate invariants independently of how it was built."""
    sx, sz = set(cert.side_x), set(cert.side_z)
    if sx & sz:
        return False
    if cert.separator in sx or cert.separator in sz:
        return False
    return all(b.conductance(v, w) == 0.0 for v in sx for w in sz)


@dataclass
class TriangleReport:
    """Both sides of the resistance triangle inequality at (x, y, z)."""

    lhs: float
    rhs: float
    equal: bool
    separated: bool

    @property
    def consistent(self) -> bool:
        return self.equal == self.separated

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs


def check_triangle_equality(
    b: ConductanceGraph,
    x: int,
    y: int,
    z: int,
    tol: float = TAU_EQ,
    table: MetricTable | None = None,
) -> TriangleReport:
    """Compare R(x,z) with R(x,y) + R(y,z) and the separation test at y.

    Equality within relative tolerance ``tol`` must coincide with y
    separating x from z.  ``table`` may carry a precomputed resistance
    matrix so triple sweeps do not redo the linear solves.
    """
    if len({x, y, z}) != 3:
        raise NotDistinct("triangle check needs three pairwise distinct vertices")
    if table is None:
        table = resistance_matrix(b)
    lhs = float(table.d[x, z])
    rhs = float(table.d[x, y]) + float(table.d[y, z])
    if math.isinf(lhs) or math.isinf(rhs):
        raise Disconnected("triangle check needs a connected triple")
    equal = weights_close(lhs, rhs, rel=tol)
    separated = separates(b, y, x, z).separated
    return TriangleReport(lhs=lhs, rhs=rhs, equal=equal, separated=separated)


def is_tree(b: ConductanceGraph) -> bool:
    """Connected and acyclic: edge count n - 1 with a single component."""
    return len(components(b)) <= 1 and len(b.edges()) == max(b.n - 1, 0)


def biconnected_components(b: ConductanceGraph) -> list[list[int]]:
    """Vertex sets of the biconnected components (blocks), via DFS low-links.

    Bridges appear as two-vertex blocks; isolated vertices yield no block.
    """
    index = [0] * b.n
    low = [0] * b.n
    visited = [False] * b.n
    counter = [1]
    edge_stack: list[tuple[int, int]] = []
    blocks: list[list[int]] = []

    def dfs(u: int, parent: int) -> None:
        visited[u] = True
        index[u] = low[u] = counter[0]
        counter[0] += 1
        for v, _ in b.neighbors(u):
            if v == parent:
                continue
            if not visited[v]:
                edge_stack.append((u, v))
                dfs(v, u)
                low[u] = min(low[u], low[v])
                if low[v] >= index[u]:
                    members: set[int] = set()
                    while True:
                        edge = edge_stack.pop()
                        members.update(edge)
                        if edge == (u, v):
                            break
                    blocks.append(sorted(members))
            elif index[v] < index[u]:
                edge_stack.append((u, v))
                low[u] = min(low[u], index[v])

    for s in range(b.n):
        if not visited[s]:
            dfs(s, -1)
    return blocks


def is_block_graph(b: ConductanceGraph) -> tuple[bool, list[int] | None]:
    """Is every biconnected component a clique in the positive-edge set?

    Classically equivalent to every vertex pair having a unique induced
    path (the definitional form, used as the oracle in tests).  Returns the
    first offending block when the answer is no.
    """
    if len(components(b)) > 1:
        raise Disconnected("block-graph recognition expects a connected graph")
    for block in biconnected_components(b):
        for i, u in enumerate(block):
            for v in block[i + 1 :]:
                if b.conductance(u, v) == 0.0:
                    return False, block
    return True, None


@dataclass
class CompatibilityCertificate:
    """Whether resistance is a path metric of a weight living only on edges."""

    verdict: str
    weight: WeightedGraph | None = None
    counterexample: tuple[int, int] | None = None

    @property
    def compatible(self) -> bool:
        return self.verdict == "COMPATIBLE"


def compatible_resistance_weight(b: ConductanceGraph) -> CompatibilityCertificate:
    """Try w = R on edges (inf off edges) and test whether delta_w = R.

    The candidate is the only possible one: a compatible weight generating
    R must agree with R on edges.  COMPATIBLE comes with the constructed
    weight; INCOMPATIBLE with a pair where the shortest-path value differs
    from the resistance.  The verdict matches block-graph recognition.
    """
    if len(components(b)) > 1:
        raise Disconnected("compatibility check expects a connected graph")
    R = resistance_matrix(b)
    weights = {(u, v): float(R.d[u, v]) for u, v, _ in b.edges()}
    w_graph = WeightedGraph(b.n, weights, b.labels)
    d = all_pairs_metric(w_graph).d
    for x in range(b.n):
        for y in range(x + 1, b.n):
            if not weights_close(float(d[x, y]), float(R.d[x, y])):
                return CompatibilityCertificate(
                    verdict="INCOMPATIBLE", counterexample=(x, y)
                )
    return CompatibilityCertificate(verdict="COMPATIBLE", weight=w_graph)


def inverse_conductance_weight(b: ConductanceGraph) -> WeightedGraph:
    """The weight 1/b on positive-conductance edges, inf elsewhere."""
    weights = {(u, v): 1.0 / c for u, v, c in b.edges()}
    return WeightedGraph(b.n, weights, b.labels)


@dataclass
class TreeTheoremReport:
    """R = delta_{1/b} happens exactly on trees; both facts side by side."""

    is_tree: bool
    metrics_equal: bool

    @property
    def consistent(self) -> bool:
        return self.is_tree == self.metrics_equal


def check_tree_theorem(b: ConductanceGraph, tol: float = TAU_EQ) -> TreeTheoremReport:
    """Compare delta_{1/b} with the resistance matrix entrywise."""
    if len(components(b)) > 1:
        raise Disconnected("tree theorem check expects a connected graph")
    d = all_pairs_metric(inverse_conductance_weight(b)).d
    R = resistance_matrix(b).d
    equal = all(
        weights_close(float(d[x, y]), float(R[x, y]), rel=tol)
        for x in range(b.n)
        for y in range(x + 1, b.n)
    )
    return TreeTheoremReport(is_tree=is_tree(b), metrics_equal=equal)
