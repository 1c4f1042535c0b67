"""Energy form, Laplacian, and effective resistance of a conductance graph.

The quadratic form Q(f) = 1/2 sum b(x,y) (f(x) - f(y))^2 splits into
per-vertex densities Gamma(f)(x); its Laplacian is Lf(v) = sum_w b(v,w)
(f(v) - f(w)).  The effective resistance R(x, y) is the supremum of
(f(y) - f(x))^2 over potentials of unit energy; it is computed here by the
grounded linear solve (fix f(y) = 0, inject unit current at x) and checked
against that variational description by sampling, against harmonicity of
the maximizer, and — in the tests — against an exact spanning-forest oracle.
R is a metric; disconnected pairs get resistance inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .core import INFINITY, TAU_EQ, ConductanceGraph
from .errors import Disconnected, SameVertex, SizeMismatch
from .pathmetric import MetricTable


@dataclass
class PotentialFunction:
    """Real-valued vertex potential with finite entries."""

    values: np.ndarray

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 1:
            raise SizeMismatch("potential must be a flat vector")
        if not np.isfinite(self.values).all():
            raise ValueError("potential entries must be finite")

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, x: int) -> float:
        return float(self.values[x])


@dataclass
class EnergyBreakdown:
    """Total energy Q(f) with its per-vertex densities Gamma(f)."""

    total: float
    per_vertex: np.ndarray


def _as_values(b: ConductanceGraph, f: PotentialFunction | np.ndarray) -> np.ndarray:
    values = f.values if isinstance(f, PotentialFunction) else np.asarray(f, dtype=float)
    if values.shape != (b.n,):
        raise SizeMismatch(f"potential has shape {values.shape}, graph has {b.n} vertices")
    return values


def gamma(b: ConductanceGraph, f: PotentialFunction | np.ndarray, x: int) -> float:
    """Gamma(f)(x) = 1/2 sum_y b(x,y) (f(x) - f(y))^2."""
    values = _as_values(b, f)
    b._check_vertex(x)
    return 0.5 * sum(c * (values[x] - values[v]) ** 2 for v, c in b.neighbors(x))


def energy(b: ConductanceGraph, f: PotentialFunction | np.ndarray) -> EnergyBreakdown:
    """Q(f) together with the Gamma densities; Q(f) = sum_x Gamma(f)(x)."""
    values = _as_values(b, f)
    per_vertex = np.zeros(b.n)
    total = 0.0
    for u, v, c in b.edges():
        d2 = c * (values[u] - values[v]) ** 2
        total += d2
        per_vertex[u] += 0.5 * d2
        per_vertex[v] += 0.5 * d2
    return EnergyBreakdown(total=total, per_vertex=per_vertex)


def laplacian_apply(b: ConductanceGraph, f: PotentialFunction | np.ndarray, x: int) -> float:
    """Lf(x) = sum_w b(x,w) (f(x) - f(w))."""
    values = _as_values(b, f)
    b._check_vertex(x)
    return float(sum(c * (values[x] - values[v]) for v, c in b.neighbors(x)))


def laplacian_matrix(b: ConductanceGraph) -> np.ndarray:
    """Dense Laplacian L = diag(row sums) - conductance matrix."""
    L = np.zeros((b.n, b.n))
    for u, v, c in b.edges():
        L[u, v] -= c
        L[v, u] -= c
        L[u, u] += c
        L[v, v] += c
    return L


def components(b: ConductanceGraph) -> list[list[int]]:
    """Connected components of the positive-conductance edge set, sorted."""
    comp = [-1] * b.n
    out: list[list[int]] = []
    for s in range(b.n):
        if comp[s] >= 0:
            continue
        members = [s]
        comp[s] = s
        queue = [s]
        while queue:
            u = queue.pop()
            for v, _ in b.neighbors(u):
                if comp[v] < 0:
                    comp[v] = s
                    members.append(v)
                    queue.append(v)
        out.append(sorted(members))
    return out


def _solve_spd(A: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve the SPD grounded system, degrading gracefully near singularity."""
    try:
        return cho_solve(cho_factor(A), rhs)
    except np.linalg.LinAlgError:
        pass
    try:
        return np.linalg.solve(A, rhs)
    except np.linalg.LinAlgError:
        return np.linalg.lstsq(A, rhs, rcond=None)[0]


def _grounded_potential(b: ConductanceGraph, x: int, y: int) -> np.ndarray | None:
    """Potential of a unit current from x to ground y, zero off the component.

    Returns None when x and y are not connected.
    """
    comp = next((c for c in components(b) if x in c), [x])
    if y not in comp:
        return None
    free = [v for v in comp if v != y]
    idx = {v: i for i, v in enumerate(free)}
    L = laplacian_matrix(b)
    A = L[np.ix_(free, free)]
    rhs = np.zeros(len(free))
    rhs[idx[x]] = 1.0
    sol = _solve_spd(A, rhs)
    values = np.zeros(b.n)
    values[free] = sol
    return values


def effective_resistance(b: ConductanceGraph, x: int, y: int) -> float:
    """R(x, y) via the grounded solve; inf when x, y are not connected."""
    b._check_vertex(x)
    b._check_vertex(y)
    if x == y:
        raise SameVertex("resistance needs two distinct vertices")
    values = _grounded_potential(b, x, y)
    if values is None:
        return INFINITY
    return float(values[x])


def resistance_matrix(b: ConductanceGraph) -> MetricTable:
    """All-pairs effective resistance as a MetricTable.

    One grounded factorization per component: ground the least vertex g,
    invert the grounded Laplacian to G, and read off
    R(i, j) = G[i,i] + G[j,j] - 2 G[i,j] (with G extended by zeros at g).
    The Green-matrix route keeps the table exactly symmetric.
    """
    d = np.full((b.n, b.n), INFINITY)
    np.fill_diagonal(d, 0.0)
    for comp in components(b):
        if len(comp) == 1:
            continue
        g0 = comp[0]
        free = comp[1:]
        L = laplacian_matrix(b)
        A = L[np.ix_(free, free)]
        G = _solve_spd(A, np.eye(len(free)))
        G = (G + G.T) / 2.0
        diag = np.concatenate(([0.0], np.diag(G)))
        Gfull = np.zeros((len(comp), len(comp)))
        Gfull[1:, 1:] = G
        R = diag[:, None] + diag[None, :] - 2.0 * Gfull
        np.fill_diagonal(R, 0.0)
        d[np.ix_(comp, comp)] = R
    return MetricTable(b.n, d, b.labels)


def harmonic_maximizer(b: ConductanceGraph, x: int, y: int) -> PotentialFunction:
    """The unit-energy potential attaining R: harmonic off {x, y}.

    Normalized so Q(f) = 1 and f(x) > f(y); then (f(y) - f(x))^2 = R(x, y).
    """
    b._check_vertex(x)
    b._check_vertex(y)
    if x == y:
        raise SameVertex("harmonic maximizer needs two distinct vertices")
    values = _grounded_potential(b, x, y)
    if values is None:
        raise Disconnected(f"{b.label(x)} and {b.label(y)} are not connected")
    resistance = values[x]
    # Q(v) equals the injected current times the potential gap, i.e. R itself.
    return PotentialFunction(values / math.sqrt(resistance))


@dataclass
class VariationalReport:
    """Sampled evidence for the variational description of R."""

    resistance: float
    max_quotient: float
    bound_holds: bool
    maximizer_quotient: float
    maximizer_attains: bool
    trials: int
    skipped: int

    @property
    def passed(self) -> bool:
        return self.bound_holds and self.maximizer_attains


def verify_variational(
    b: ConductanceGraph, x: int, y: int, trials: int = 1000, seed: int = 0
) -> VariationalReport:
    """Sample random potentials and check (f(y)-f(x))^2 / Q(f) <= R(x, y).

    Near-constant samples (vanishing energy) are excluded — the supremum
    ranges over potentials with Q(f) > 0 — and the harmonic maximizer must
    attain the bound within tolerance.
    """
    b._check_vertex(x)
    b._check_vertex(y)
    if x == y:
        raise SameVertex("the variational quotient needs two distinct vertices")
    resistance = effective_resistance(b, x, y)
    if math.isinf(resistance):
        raise Disconnected(f"{b.label(x)} and {b.label(y)} are not connected")
    rng = np.random.default_rng(seed)
    samples = rng.standard_normal((trials, b.n))
    edges = b.edges()
    q = np.zeros(trials)
    for u, v, c in edges:
        q += c * (samples[:, u] - samples[:, v]) ** 2
    gap2 = (samples[:, y] - samples[:, x]) ** 2
    alive = q > 1e-300
    skipped = int(trials - alive.sum())
    quotients = gap2[alive] / q[alive]
    max_quotient = float(quotients.max()) if quotients.size else 0.0
    bound_holds = bool((quotients <= resistance * (1.0 + TAU_EQ)).all())
    f = harmonic_maximizer(b, x, y)
    fq = energy(b, f).total
    fgap2 = (f[y] - f[x]) ** 2
    maximizer_quotient = fgap2 / fq
    maximizer_attains = abs(maximizer_quotient - resistance) <= TAU_EQ * max(
        1.0, abs(resistance)
    )
    return VariationalReport(
        resistance=resistance,
        max_quotient=max_quotient,
        bound_holds=bound_holds,
        maximizer_quotient=maximizer_quotient,
        maximizer_attains=maximizer_attains,
        trials=trials,
        skipped=skipped,
    )
