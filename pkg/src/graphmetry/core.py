"""Core graph types, edge-list parsing, validation, and canonical serialization.

The toolkit works with two views of a finite simple graph over vertices
``0 .. n-1``:

* :class:`WeightedGraph` carries a symmetric weight in ``[0, inf]`` per
  vertex pair; an absent entry means ``inf`` (no finite connection).
  Weights are lengths and induce the shortest-path pseudo metric.
* :class:`ConductanceGraph` carries a symmetric finite conductance per
  pair; an absent entry means ``0`` (no edge).  Conductances define the
  energy form and the resistance metric.

Extended weights are plain ``float`` values with ``math.inf`` as the
distinguished infinity; this gives the required total order and absorbing
addition for free.  Exact rational shadows of parsed decimal values are
kept alongside the float pipeline so the brute-force oracles never
inherit rounding error.

Both graph classes are immutable after construction and safe to read from
any number of concurrent workers.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import (
    AsymmetryError,
    DiagonalError,
    NegativeWeightError,
    ParseError,
    UnknownVertex,
)

INFINITY: float = math.inf

# Shared comparison tolerances.  TAU_EQ guards float equality of derived
# quantities (metric entries, resistances), TAU_GEO the tighter geodesic
# length equality, TAU_HARM the harmonicity residual of grounded solves.
TAU_EQ: float = 1e-9
TAU_GEO: float = 1e-12
TAU_HARM: float = 1e-8

VertexId = int


def edge_key(u: int, v: int) -> tuple[int, int]:
    """Canonical unordered key for a vertex pair."""
    return (u, v) if u <= v else (v, u)


def weights_close(a: float, b: float, rel: float = TAU_EQ) -> bool:
    """Equality of extended weights: exact at infinity, relative otherwise.

    Finite values compare with relative tolerance ``rel`` floored at
    absolute scale 1, so tiny values do not demand impossible precision.
    """
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


@dataclass(frozen=True)
class Path:
    """Injective finite vertex sequence with at least one entry."""

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.vertices) == 0:
            raise ValueError("a path needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError(f"path vertices must be pairwise distinct: {self.vertices}")

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __getitem__(self, i: int) -> int:
        return self.vertices[i]

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def steps(self) -> Iterator[tuple[int, int]]:
        """Consecutive vertex pairs along the path."""
        return zip(self.vertices[:-1], self.vertices[1:])


def _check_ids(n: int, entries: Iterable[tuple[int, int]]) -> None:
    for u, v in entries:
        if not (0 <= u < n and 0 <= v < n):
            raise UnknownVertex(f"vertex pair ({u}, {v}) out of range for {n} vertices")


def _canonical_map(
    n: int,
    raw: Mapping[tuple[int, int], float],
    drop_value: float,
) -> dict[tuple[int, int], float]:
    """Normalize pair keys, merge symmetric duplicates, drop default entries."""
    _check_ids(n, raw.keys())
    out: dict[tuple[int, int], float] = {}
    for (u, v), value in raw.items():
        value = float(value)
        key = edge_key(u, v)
        if key in out and out[key] != value and not (math.isnan(out[key]) and math.isnan(value)):
            raise AsymmetryError(
                f"conflicting values for pair {key}: {out[key]} vs {value}"
            )
        out[key] = value
    if not math.isnan(drop_value):
        out = {k: w for k, w in out.items() if w != drop_value or k[0] == k[1]}
    return dict(sorted(out.items()))


@dataclass
class WeightedGraph:
    """Finite vertex set with a symmetric extended weight per pair.

    ``weights`` holds finite entries under canonical ``(min, max)`` keys;
    an absent off-diagonal pair has weight ``INFINITY``.  ``exact`` is an
    optional rational shadow of parsed decimal values, consumed by the
    oracle module and ignored by equality.
    """

    n: int
    weights: dict[tuple[int, int], float]
    labels: tuple[str, ...] | None = None
    exact: dict[tuple[int, int], Fraction] = field(
        default_factory=dict, compare=False, repr=False
    )
    _adj: list[list[tuple[int, float]]] | None = field(
        default=None, init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("label table size must equal the vertex count")
        self.weights = _canonical_map(self.n, self.weights, drop_value=INFINITY)
        self.exact = {edge_key(u, v): q for (u, v), q in self.exact.items()}

    def weight(self, u: int, v: int) -> float:
        """w(u, v): zero on the diagonal, INFINITY when no entry is stored."""
        if u == v:
            self._check_vertex(u)
            return 0.0
        self._check_vertex(u)
        self._check_vertex(v)
        return self.weights.get(edge_key(u, v), INFINITY)

    def neighbors(self, u: int) -> list[tuple[int, float]]:
        """Stored finite-weight partners of ``u`` in ascending vertex order."""
        if self._adj is None:
            adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
            for (a, b), w in self.weights.items():
                if a == b:
                    continue
                adj[a].append((b, w))
                adj[b].append((a, w))
            for lst in adj:
                lst.sort()
            self._adj = adj
        self._check_vertex(u)
        return self._adj[u]

    def label(self, u: int) -> str:
        self._check_vertex(u)
        return self.labels[u] if self.labels is not None else str(u)

    def resolve(self, token: str | int) -> int:
        """Map a label (or numeric index) to a vertex id."""
        if isinstance(token, int):
            self._check_vertex(token)
            return token
        if self.labels is not None and token in self.labels:
            return self.labels.index(token)
        if token.lstrip("-").isdigit():
            u = int(token)
            self._check_vertex(u)
            return u
        raise UnknownVertex(f"unknown vertex {token!r}")

    def _check_vertex(self, u: int) -> None:
        if not (0 <= u < self.n):
            raise UnknownVertex(f"vertex {u} out of range for {self.n} vertices")

    @classmethod
    def of(
        cls,
        n: int,
        edges: Iterable[tuple[int, int, float]],
        labels: tuple[str, ...] | None = None,
    ) -> "WeightedGraph":
        return cls(n, {(u, v): w for u, v, w in edges}, labels)


@dataclass
class ConductanceGraph:
    """Finite vertex set with a symmetric nonnegative finite conductance per pair.

    ``b`` holds positive entries under canonical keys; an absent pair has
    conductance 0 (no edge).
    """

    n: int
    b: dict[tuple[int, int], float]
    labels: tuple[str, ...] | None = None
    exact: dict[tuple[int, int], Fraction] = field(
        default_factory=dict, compare=False, repr=False
    )
    _adj: list[list[tuple[int, float]]] | None = field(
        default=None, init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("label table size must equal the vertex count")
        self.b = _canonical_map(self.n, self.b, drop_value=0.0)
        self.exact = {edge_key(u, v): q for (u, v), q in self.exact.items()}

    def conductance(self, u: int, v: int) -> float:
        if u == v:
            self._check_vertex(u)
            return 0.0
        self._check_vertex(u)
        self._check_vertex(v)
        return self.b.get(edge_key(u, v), 0.0)

    def edges(self) -> list[tuple[int, int, float]]:
        """Positive-conductance edges as (u, v, value), u < v, sorted."""
        return [(u, v, w) for (u, v), w in self.b.items() if u != v]

    def neighbors(self, u: int) -> list[tuple[int, float]]:
        if self._adj is None:
            adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
            for (a, c), w in self.b.items():
                if a == c:
                    continue
                adj[a].append((c, w))
                adj[c].append((a, w))
            for lst in adj:
                lst.sort()
            self._adj = adj
        self._check_vertex(u)
        return self._adj[u]

    def degree_sum(self, u: int) -> float:
        """Row sum of conductances about ``u``; finite by construction."""
        return sum(w for _, w in self.neighbors(u))

    def label(self, u: int) -> str:
        self._check_vertex(u)
        return self.labels[u] if self.labels is not None else str(u)

    def resolve(self, token: str | int) -> int:
        if isinstance(token, int):
            self._check_vertex(token)
            return token
        if self.labels is not None and token in self.labels:
            return self.labels.index(token)
        if token.lstrip("-").isdigit():
            u = int(token)
            self._check_vertex(u)
            return u
        raise UnknownVertex(f"unknown vertex {token!r}")

    def _check_vertex(self, u: int) -> None:
        if not (0 <= u < self.n):
            raise UnknownVertex(f"vertex {u} out of range for {self.n} vertices")

    @classmethod
    def of(
        cls,
        n: int,
        edges: Iterable[tuple[int, int, float]],
        labels: tuple[str, ...] | None = None,
    ) -> "ConductanceGraph":
        return cls(n, {(u, v): w for u, v, w in edges}, labels)


Graph = WeightedGraph | ConductanceGraph


def _parse_value(token: str, line_no: int) -> tuple[float, Fraction | None]:
    if token.lower() == "inf":
        return INFINITY, None
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"line {line_no}: bad value {token!r}") from None
    if math.isnan(value):
        raise ParseError(f"line {line_no}: NaN is not a valid value")
    if math.isinf(value):
        # Only the literal token spells infinity; 1e999 style overflow is
        # rejected so the exact shadow stays faithful.
        raise ParseError(f"line {line_no}: overflowing value {token!r}; use 'inf'")
    if value < 0:
        raise NegativeWeightError(f"line {line_no}: negative value {token!r}")
    return value, Fraction(token)


def parse_graph(text: str, mode: str = "weight") -> Graph:
    """Parse an edge-list document into a validated graph.

    Format: UTF-8 text, one edge per line ``<label> <label> <value>`` where
    value is a nonnegative decimal or the token ``inf``; ``#`` starts a
    comment, blank lines are ignored, and ``vertex <label>`` declares an
    isolated vertex.  Labels map to dense ids in first-appearance order.

    ``mode`` selects the semantics: ``weight`` (absent pair = inf, values
    are lengths) or ``conductance`` (absent pair = 0, values finite).
    """
    if mode not in ("weight", "conductance"):
        raise ValueError(f"unknown mode {mode!r}")
    ids: dict[str, int] = {}

    def vid(label: str) -> int:
        if label not in ids:
            ids[label] = len(ids)
        return ids[label]

    entries: dict[tuple[int, int], float] = {}
    exact: dict[tuple[int, int], Fraction] = {}
    for line_no, raw_line in enumerate(text.splitlines(), 1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) == 2 and tokens[0] == "vertex":
            vid(tokens[1])
            continue
        if len(tokens) != 3:
            raise ParseError(f"line {line_no}: expected '<label> <label> <value>', got {raw_line!r}")
        u, v = vid(tokens[0]), vid(tokens[1])
        value, frac = _parse_value(tokens[2], line_no)
        if u == v:
            if mode == "conductance":
                raise DiagonalError(f"line {line_no}: self-loop on {tokens[0]!r}")
            if value != 0.0:
                raise DiagonalError(
                    f"line {line_no}: self-loop on {tokens[0]!r} with nonzero weight"
                )
            continue
        if mode == "weight" and value == 0.0:
            raise ParseError(
                f"line {line_no}: zero weight between distinct vertices "
                f"{tokens[0]!r} and {tokens[1]!r} breaks definiteness"
            )
        if mode == "conductance" and math.isinf(value):
            raise ParseError(f"line {line_no}: conductances must be finite")
        key = edge_key(u, v)
        if key in entries and entries[key] != value:
            raise AsymmetryError(
                f"line {line_no}: pair ({tokens[0]}, {tokens[1]}) redeclared "
                f"with conflicting value {tokens[2]}"
            )
        entries[key] = value
        if frac is not None:
            exact[key] = frac

    labels = tuple(ids)
    n = len(labels)
    if mode == "weight":
        graph: Graph = WeightedGraph(n, entries, labels, exact)
    else:
        graph = ConductanceGraph(n, entries, labels, exact)
    report = validate(graph)
    if report:
        raise ParseError("; ".join(report))
    return graph


def validate(g: Graph) -> list[str]:
    """Diagnostics for every violated graph invariant; empty iff all hold.

    Construction keeps graphs representable even when invalid, so library
    users can inspect what is wrong; parsing rejects any diagnosed input.
    """
    report: list[str] = []
    if isinstance(g, WeightedGraph):
        for (u, v), w in g.weights.items():
            pair = f"({g.label(u)}, {g.label(v)})"
            if u == v:
                if w != 0.0:
                    report.append(f"diagonal entry {pair} must be zero, got {w}")
                continue
            if math.isnan(w):
                report.append(f"weight {pair} is NaN")
            elif w < 0:
                report.append(f"weight {pair} is negative: {w}")
            elif w == 0.0:
                report.append(f"weight {pair} is zero off diagonal")
    else:
        for (u, v), w in g.b.items():
            pair = f"({g.label(u)}, {g.label(v)})"
            if u == v:
                report.append(f"diagonal conductance {pair} must be absent")
                continue
            if math.isnan(w):
                report.append(f"conductance {pair} is NaN")
            elif w < 0:
                report.append(f"conductance {pair} is negative: {w}")
            elif math.isinf(w):
                report.append(f"conductance {pair} must be finite")
        for u in range(g.n):
            if math.isinf(g.degree_sum(u)):
                report.append(f"conductance row sum at {g.label(u)} is not finite")
    if g.labels is not None and len(set(g.labels)) != len(g.labels):
        report.append("duplicate vertex labels")
    return report


def serialize_graph(g: Graph) -> str:
    """Canonical edge-list text; parsing it back reproduces the graph.

    Values use the shortest round-tripping decimal form, so the exact
    rational shadow survives a serialize/parse cycle.
    """
    entries = g.weights if isinstance(g, WeightedGraph) else g.b
    lines = []
    touched = set()
    for (u, v), w in sorted(entries.items()):
        if u == v:
            continue
        lines.append(f"{g.label(u)} {g.label(v)} {repr(w)}")
        touched.add(u)
        touched.add(v)
    for u in range(g.n):
        if u not in touched:
            lines.append(f"vertex {g.label(u)}")
    return "\n".join(lines) + ("\n" if lines else "")


def graph_digest(g: Graph) -> str:
    """Content hash of the parsed graph (over its canonical serialization)."""
    kind = "weight" if isinstance(g, WeightedGraph) else "conductance"
    payload = f"{kind}\n{serialize_graph(g)}".encode()
    return hashlib.sha256(payload).hexdigest()
