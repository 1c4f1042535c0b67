"""Tests for the path pseudo metric, geodesics, and geodesic weights."""

import math
import random

import numpy as np
import pytest

from graphmetry import (
    INFINITY,
    InvalidMetric,
    MetricTable,
    Path,
    SizeMismatch,
    Unreachable,
    UnknownVertex,
    WeightedGraph,
    all_pairs_metric,
    check_elf,
    enumerate_geodesics,
    geodesic_weight,
    is_generating,
    path_length,
    path_metric,
    single_source_distances,
)
from graphmetry.oracle import brute_metric_from, enumerate_simple_paths, exact_path_length
from .suites import random_weighted_graph


def p3() -> WeightedGraph:
    return WeightedGraph(3, {(0, 1): 1.0, (1, 2): 1.0}, labels=("a", "b", "c"))


def c4() -> WeightedGraph:
    return WeightedGraph(4, {(0, 1): 1.0, (1, 2): 1.0, (2, 3): 1.0, (0, 3): 1.0})


def test_path_length_examples():
    g = p3()
    assert path_length(g, Path((0, 1, 2))) == 2.0
    assert path_length(g, Path((1,))) == 0.0
    assert path_length(g, Path((0, 2))) == INFINITY
    with pytest.raises(UnknownVertex):
        path_length(g, Path((0, 5)))


def test_path_metric_examples():
    g = p3()
    assert path_metric(g, 0, 2) == 2.0
    assert path_metric(g, 2, 0) == 2.0
    assert path_metric(g, 1, 1) == 0.0
    # Direct heavy edge loses to the two-step route.
    t = WeightedGraph(3, {(0, 1): 1.0, (1, 2): 1.0, (0, 2): 3.0})
    assert path_metric(t, 0, 2) == 2.0
    # Disconnected pair.
    assert path_metric(WeightedGraph(2, {}), 0, 1) == INFINITY


def test_single_source_distances():
    g = p3()
    assert list(single_source_distances(g, 0)) == [0.0, 1.0, 2.0]
    two = WeightedGraph(4, {(0, 1): 1.0, (2, 3): 1.0})
    assert list(single_source_distances(two, 0)) == [0.0, 1.0, INFINITY, INFINITY]


def test_all_pairs_metric_matches_per_pair():
    rng = random.Random(19)
    for _ in range(30):
        g = random_weighted_graph(rng, rng.randint(1, 8))
        t = all_pairs_metric(g)
        assert t.validate() == []
        for x in range(g.n):
            for y in range(g.n):
                # The closure and the per-pair search may associate float
                # additions differently; agreement is up to rounding only.
                assert math.isclose(t.d[x, y], path_metric(g, x, y), rel_tol=1e-12)


def test_metric_dominated_by_weight():
    rng = random.Random(29)
    for _ in range(30):
        g = random_weighted_graph(rng, rng.randint(2, 8))
        t = all_pairs_metric(g)
        for x in range(g.n):
            for y in range(g.n):
                assert t.d[x, y] <= g.weight(x, y)


def test_metric_as_weight_is_fixed_point():
    # Feeding the metric back in as a weight reproduces it bit for bit.
    rng = random.Random(31)
    for _ in range(40):
        g = random_weighted_graph(rng, rng.randint(1, 8), integer=rng.random() < 0.5)
        t = all_pairs_metric(g)
        again = all_pairs_metric(t.as_weight_graph())
        assert np.array_equal(t.d, again.d)


def test_metric_agrees_with_exact_oracle():
    rng = random.Random(37)
    for _ in range(25):
        g = random_weighted_graph(rng, rng.randint(2, 7))
        t = all_pairs_metric(g)
        for x in range(g.n):
            row = brute_metric_from(g, x)
            for y in range(g.n):
                if row[y] is None:
                    assert math.isinf(t.d[x, y])
                else:
                    assert abs(t.d[x, y] - float(row[y])) <= 1e-9 * max(1.0, float(row[y]))


def test_metric_table_validate_diagnostics():
    good = MetricTable(2, np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert good.validate() == []
    asym = MetricTable(2, np.array([[0.0, 1.0], [2.0, 0.0]]))
    assert any("asymmetry" in r for r in asym.validate())
    neg = MetricTable(2, np.array([[0.0, -1.0], [-1.0, 0.0]]))
    assert any("negative" in r for r in neg.validate())
    diag = MetricTable(1, np.array([[3.0]]))
    assert any("diagonal" in r for r in diag.validate())
    tri = MetricTable(
        3, np.array([[0.0, 1.0, 3.0], [1.0, 0.0, 1.0], [3.0, 1.0, 0.0]])
    )
    assert any("triangle" in r for r in tri.validate())
    pseudo = MetricTable(2, np.zeros((2, 2)))
    assert any("pseudo metric" in r for r in pseudo.validate())
    nan = MetricTable(2, np.array([[0.0, math.nan], [math.nan, 0.0]]))
    assert any("NaN" in r for r in nan.validate())
    with pytest.raises(SizeMismatch):
        MetricTable(3, np.zeros((2, 2)))


def test_enumerate_geodesics_examples():
    assert [p.vertices for p in enumerate_geodesics(p3(), 0, 2).paths] == [(0, 1, 2)]
    found = enumerate_geodesics(c4(), 0, 2)
    assert [p.vertices for p in found.paths] == [(0, 1, 2), (0, 3, 2)]
    assert found.distance == 2.0 and not found.truncated
    same = enumerate_geodesics(p3(), 1, 1)
    assert [p.vertices for p in same.paths] == [(1,)] and same.distance == 0.0
    with pytest.raises(Unreachable):
        enumerate_geodesics(WeightedGraph(2, {}), 0, 1)
    with pytest.raises(ValueError):
        enumerate_geodesics(p3(), 0, 2, cap=0)


def test_enumerate_geodesics_cap():
    # Five parallel two-step routes; a cap of three truncates.
    w = {}
    for m in range(1, 6):
        w[(0, m)] = 1.0
        w[(m, 6)] = 1.0
    g = WeightedGraph(7, w)
    full = enumerate_geodesics(g, 0, 6)
    assert len(full.paths) == 5 and not full.truncated
    cut = enumerate_geodesics(g, 0, 6, cap=3)
    assert len(cut.paths) == 3 and cut.truncated
    assert cut.paths == full.paths[:3]


def test_geodesics_match_brute_filter():
    rng = random.Random(41)
    for _ in range(25):
        g = random_weighted_graph(rng, rng.randint(2, 6), integer=rng.random() < 0.5)
        t = all_pairs_metric(g)
        for x in range(g.n):
            for y in range(g.n):
                if x == y or math.isinf(t.d[x, y]):
                    continue
                found = enumerate_geodesics(g, x, y, cap=4096)
                assert not found.truncated
                lengths = [exact_path_length(g, p) for p in enumerate_simple_paths(g, x, y)]
                best = min(q for q in lengths if q is not None)
                expected = [
                    p.vertices
                    for p in enumerate_simple_paths(g, x, y)
                    if exact_path_length(g, p) == best
                ]
                assert [p.vertices for p in found.paths] == expected


def test_geodesic_weight_examples():
    t = all_pairs_metric(p3())
    w = geodesic_weight(t)
    assert w.weight(0, 1) == 1.0
    assert w.weight(1, 2) == 1.0
    assert math.isinf(w.weight(0, 2))
    assert w.weight(0, 0) == 0.0

    # Unit 4-cycle: every adjacent pair is a unique geodesic, both diagonals
    # have two geodesics, so their entries blow up to inf.
    wc = geodesic_weight(all_pairs_metric(c4()))
    assert wc.weight(0, 1) == 1.0 and wc.weight(2, 3) == 1.0
    assert math.isinf(wc.weight(0, 2)) and math.isinf(wc.weight(1, 3))

    # Two points: the metric itself.
    pair = MetricTable(2, np.array([[0.0, 5.0], [5.0, 0.0]]))
    assert geodesic_weight(pair).weight(0, 1) == 5.0

    # Unreachable pairs stay infinite.
    split = all_pairs_metric(WeightedGraph(2, {}))
    assert math.isinf(geodesic_weight(split).weight(0, 1))


def test_geodesic_weight_rejects_non_metric():
    tri = MetricTable(
        3, np.array([[0.0, 1.0, 3.0], [1.0, 0.0, 1.0], [3.0, 1.0, 0.0]])
    )
    with pytest.raises(InvalidMetric):
        geodesic_weight(tri)


def test_geodesic_weight_regenerates_metric():
    rng = random.Random(43)
    for _ in range(40):
        g = random_weighted_graph(rng, rng.randint(1, 8), integer=rng.random() < 0.5)
        t = all_pairs_metric(g)
        w = geodesic_weight(t)
        back = all_pairs_metric(w.as_weight_graph())
        for x in range(g.n):
            for y in range(g.n):
                a, b = float(back.d[x, y]), float(t.d[x, y])
                if math.isinf(a) or math.isinf(b):
                    assert a == b
                else:
                    assert abs(a - b) <= 1e-9 * max(1.0, b)
        # The geodesic weight dominates the generating weight everywhere.
        for (x, y), wv in g.weights.items():
            if x != y:
                assert wv <= w.table[x, y]


def test_is_generating_examples():
    g = p3()
    t = all_pairs_metric(g)
    assert is_generating(g, t)
    assert is_generating(t.as_weight_graph(), t)
    shortcut = WeightedGraph(3, {(0, 1): 1.0, (1, 2): 1.0, (0, 2): 1.5})
    assert not is_generating(shortcut, t)
    with pytest.raises(SizeMismatch):
        is_generating(WeightedGraph(2, {}), t)


def test_check_elf_examples():
    g = p3()
    near_b = check_elf(g, 1, 2.0)
    assert near_b.count == 2 and near_b.exhausted
    assert check_elf(g, 0, 0.5).count == 0
    assert check_elf(g, 0, 1.5).count == 1
    star = WeightedGraph(101, {(0, k): 1.0 for k in range(1, 101)})
    assert check_elf(star, 0, 2.0).count == 100
    assert check_elf(star, 1, 2.0).count == 1
    with pytest.raises(UnknownVertex):
        check_elf(g, 9, 1.0)


def test_first_step_lower_bound():
    # A route out of x costs at least the cheapest incident weight, so the
    # metric separates distinct vertices whenever weights do.
    rng = random.Random(47)
    for _ in range(30):
        g = random_weighted_graph(rng, rng.randint(2, 8))
        t = all_pairs_metric(g)
        for x in range(g.n):
            floor = min((w for _, w in g.neighbors(x)), default=INFINITY)
            for y in range(g.n):
                if y != x:
                    assert t.d[x, y] >= floor
                    assert t.d[x, y] > 0
