"""Shortest-path pseudo metrics, geodesic enumeration, geodesic weights, and
essential local finiteness checks.

A weight function induces the pseudo metric delta(x, y) = inf over injective
paths of the summed step weights.  On a finite graph the infimum is attained,
``inf`` marks unreachable pairs, and the induced table satisfies the triangle
inequality.  The geodesic weight keeps delta on pairs whose only geodesic is
the direct two-vertex path and is ``inf`` elsewhere; it generates the same
metric and dominates every other weight that does.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    INFINITY,
    TAU_EQ,
    TAU_GEO,
    Path,
    WeightedGraph,
    weights_close,
)
from .errors import InvalidMetric, SizeMismatch, Unreachable


@dataclass
class MetricTable:
    """Symmetric all-pairs distance matrix with pseudo-metric invariants."""

    n: int
    d: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        self.d = np.asarray(self.d, dtype=float)
        if self.d.shape != (self.n, self.n):
            raise SizeMismatch(f"expected a {self.n}x{self.n} matrix, got {self.d.shape}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MetricTable):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.d, other.d))

    def label(self, u: int) -> str:
        return self.labels[u] if self.labels is not None else str(u)

    def validate(self, tol: float = TAU_EQ) -> list[str]:
        """Diagnostics for violated pseudo-metric invariants (empty iff valid).

        Zero off-diagonal entries are legal in a pseudo metric but worth
        surfacing, so they are reported as well.
        """
        report: list[str] = []
        d = self.d
        if np.isnan(d).any():
            report.append("matrix contains NaN")
            return report
        for x in range(self.n):
            if d[x, x] != 0.0:
                report.append(f"diagonal entry at {self.label(x)} is {d[x, x]}, not 0")
        if not np.array_equal(d, d.T):
            x, y = np.argwhere(d != d.T)[0]
            report.append(f"asymmetry at ({self.label(x)}, {self.label(y)})")
        if (d < 0).any():
            x, y = np.argwhere(d < 0)[0]
            report.append(f"negative entry at ({self.label(x)}, {self.label(y)})")
        viol = _triangle_violation(d, tol)
        if viol is not None:
            x, y, z = viol
            report.append(
                f"triangle inequality fails: d({self.label(x)}, {self.label(z)}) > "
                f"d({self.label(x)}, {self.label(y)}) + d({self.label(y)}, {self.label(z)})"
            )
        finite_zero = (d == 0) & ~np.eye(self.n, dtype=bool)
        if finite_zero.any():
            x, y = np.argwhere(finite_zero)[0]
            report.append(
                f"zero distance between distinct vertices ({self.label(x)}, {self.label(y)}) "
                "(pseudo metric, not definite)"
            )
        return report

    def as_weight_graph(self) -> WeightedGraph:
        """Reinterpret the table as a weight function (metric-as-weight)."""
        weights = {
            (x, y): float(self.d[x, y])
            for x in range(self.n)
            for y in range(x + 1, self.n)
            if math.isfinite(self.d[x, y])
        }
        return WeightedGraph(self.n, weights, self.labels)


def _triangle_violation(d: np.ndarray, tol: float) -> tuple[int, int, int] | None:
    """First (x, y, z) with d[x,z] > d[x,y] + d[y,z] beyond tolerance, if any."""
    n = d.shape[0]
    for y in range(n):
        sums = d[:, y, None] + d[None, y, :]
        bad = d > sums + tol * np.maximum(1.0, np.abs(d))
        # inf > inf + tol is False; inf entries only flag finite sums.
        if bad.any():
            x, z = np.argwhere(bad)[0]
            return int(x), int(y), int(z)
    return None


@dataclass
class GeodesicWeight:
    """The weight that is delta on unique-geodesic pairs and inf elsewhere."""

    n: int
    table: np.ndarray
    labels: tuple[str, ...] | None = None

    def weight(self, x: int, y: int) -> float:
        return float(self.table[x, y])

    def as_weight_graph(self) -> WeightedGraph:
        weights = {
            (x, y): float(self.table[x, y])
            for x in range(self.n)
            for y in range(x + 1, self.n)
            if math.isfinite(self.table[x, y])
        }
        return WeightedGraph(self.n, weights, self.labels)


@dataclass
class ElfReport:
    """Count of vertices whose direct weight from ``vertex`` is below ``radius``."""

    vertex: int
    radius: float
    count: int
    exhausted: bool
    verdict: str | None = None


@dataclass
class GeodesicSet:
    """All geodesics between a pair, cap-truncated, with the realized distance."""

    paths: list[Path]
    distance: float
    truncated: bool = False


def path_length(g: WeightedGraph, p: Path) -> float:
    """l_w(p): sum of step weights; 0 for a single vertex, inf absorbing."""
    for u in p:
        g._check_vertex(u)
    total = 0.0
    for u, v in p.steps():
        total += g.weight(u, v)
    return total


def single_source_distances(g: WeightedGraph, x: int) -> np.ndarray:
    """Dijkstra distances from x; inf-weight pairs are not edges."""
    g._check_vertex(x)
    dist = np.full(g.n, INFINITY)
    dist[x] = 0.0
    heap: list[tuple[float, int]] = [(0.0, x)]
    done = [False] * g.n
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w in g.neighbors(u):
            if done[v] or math.isinf(w):
                continue
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def path_metric(g: WeightedGraph, x: int, y: int) -> float:
    """delta_w(x, y) by label-setting search; inf iff no finite-weight route."""
    g._check_vertex(x)
    g._check_vertex(y)
    if x == y:
        return 0.0
    dist = [INFINITY] * g.n
    dist[x] = 0.0
    heap: list[tuple[float, int]] = [(0.0, x)]
    done = [False] * g.n
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        if u == y:
            return d
        done[u] = True
        for v, w in g.neighbors(u):
            if done[v] or math.isinf(w):
                continue
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return INFINITY


def all_pairs_metric(g: WeightedGraph) -> MetricTable:
    """All-pairs delta_w as a MetricTable.

    Computed by min-plus closure iterated to a float fixpoint rather than
    per-source searches: at the fixpoint d[x,y] <= fl(d[x,z] + d[z,y]) holds
    exactly for every z, which makes the table idempotent — feeding it back
    in as a weight function reproduces it bit for bit (delta_delta = delta
    with no tolerance), something per-source float accumulation cannot
    promise at the last ulp.
    """
    n = g.n
    d = np.full((n, n), INFINITY)
    np.fill_diagonal(d, 0.0)
    for (u, v), w in g.weights.items():
        if u != v and math.isfinite(w):
            d[u, v] = min(d[u, v], w)
            d[v, u] = d[u, v]
    while True:
        before = d.copy()
        for k in range(n):
            via = d[:, k, None] + d[None, k, :]
            np.minimum(d, via, out=d)
        if np.array_equal(before, d):
            break
    return MetricTable(n, d, g.labels)


def _integral_weights(g: WeightedGraph) -> bool:
    return all(w.is_integer() for w in g.weights.values() if math.isfinite(w))


def enumerate_geodesics(g: WeightedGraph, x: int, y: int, cap: int = 64) -> GeodesicSet:
    """All w-geodesics from x to y in lexicographic vertex order.

    A path qualifies when its recomputed length equals delta_w(x, y) —
    exactly when every finite weight is an integer (sums are then exact),
    within relative tolerance TAU_GEO otherwise.  Stops after ``cap`` paths
    and sets the truncation flag.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    g._check_vertex(x)
    g._check_vertex(y)
    target = path_metric(g, x, y)
    if math.isinf(target):
        raise Unreachable(f"no finite-weight path from {g.label(x)} to {g.label(y)}")
    if x == y:
        return GeodesicSet([Path((x,))], 0.0)
    slack = 0.0 if _integral_weights(g) else TAU_GEO * max(1.0, target)
    to_y = single_source_distances(g, y)
    paths: list[Path] = []
    truncated = False
    on_path = [False] * g.n
    on_path[x] = True
    stack = [x]

    def walk(u: int, acc: float) -> bool:
        for v, w in g.neighbors(u):
            if on_path[v] or math.isinf(w):
                continue
            length = acc + w
            if length + to_y[v] > target + slack:
                continue
            stack.append(v)
            on_path[v] = True
            if v == y:
                if abs(length - target) <= slack:
                    if len(paths) >= cap:
                        on_path[v] = False
                        stack.pop()
                        return True
                    paths.append(Path(tuple(stack)))
            elif walk(v, length):
                on_path[v] = False
                stack.pop()
                return True
            on_path[v] = False
            stack.pop()
        return False

    truncated = walk(x, 0.0)
    return GeodesicSet(paths, target, truncated)


def geodesic_weight(t: MetricTable, tol: float = TAU_EQ) -> GeodesicWeight:
    """w_delta: keep d(x, y) when no third vertex sits metrically between
    x and y, use inf otherwise (and always on infinite-distance pairs).

    A strictly-between z (d(x,z) + d(z,y) = d(x,y), z distinct from both)
    witnesses a second geodesic through z, so the direct pair is no longer
    the unique one.  Betweenness is decided within relative tolerance
    ``tol``.  Raises InvalidMetric when the input violates the triangle
    inequality.
    """
    n, d = t.n, t.d
    viol = _triangle_violation(d, tol)
    if viol is not None:
        x, y, z = viol
        raise InvalidMetric(
            f"d({t.label(x)}, {t.label(z)}) > d({t.label(x)}, {t.label(y)}) "
            f"+ d({t.label(y)}, {t.label(z)})"
        )
    out = np.full((n, n), INFINITY)
    np.fill_diagonal(out, 0.0)
    for x in range(n):
        row = d[x]
        sums = row[:, None] + d  # sums[z, y] = d(x,z) + d(z,y)
        with np.errstate(invalid="ignore"):
            # inf - inf in columns of infinite distance; those y are skipped.
            gap = np.abs(sums - row[None, :])
        allowed = tol * np.maximum(1.0, np.abs(row))[None, :]
        between = gap <= allowed
        between[x, :] = False
        np.fill_diagonal(between, False)  # z == y
        for y in range(n):
            if y == x or math.isinf(row[y]):
                continue
            if not between[:, y].any():
                out[x, y] = row[y]
    # Symmetrize pedantically: betweenness is symmetric in exact arithmetic,
    # and the tolerance test above is symmetric too, but keep the invariant
    # structural rather than implicit.
    out = np.minimum(out, out.T)
    return GeodesicWeight(n, out, t.labels)


def is_generating(g: WeightedGraph, t: MetricTable) -> bool:
    """Whether g's weight generates the metric t (delta_w = t entrywise)."""
    if g.n != t.n:
        raise SizeMismatch(f"graph has {g.n} vertices, table {t.n}")
    d = all_pairs_metric(g).d
    for x in range(g.n):
        for y in range(g.n):
            if not weights_close(float(d[x, y]), float(t.d[x, y])):
                return False
    return True


def check_elf(g: WeightedGraph, x: int, radius: float) -> ElfReport:
    """Count vertices y != x with direct weight w(x, y) < radius.

    On a finite graph the count is always finite; the report exists so the
    same shape can carry budgeted scans of infinite families.
    """
    g._check_vertex(x)
    count = sum(1 for v, w in g.neighbors(x) if w < radius)
    return ElfReport(vertex=x, radius=radius, count=count, exhausted=True)
