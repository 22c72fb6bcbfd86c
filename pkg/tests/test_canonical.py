"""Canonical coordinates: lifting, membership, classification, charts."""

import math

import numpy as np
import pytest

import confspace as cs
from helpers import sample_config, sample_noncollinear_triple, direction_error


def lift(pts):
    return cs.lift_configuration(np.asarray(pts, dtype=float))


# -- lifting and normalization -----------------------------------------------------


def test_lift_hand_values():
    a = lift([[0, 0], [1, 0], [0, 1]])
    assert np.allclose(a.u[(1, 2)], [-1.0, 0.0])
    assert np.allclose(a.u[(2, 3)], [0.70710678, -0.70710678])
    assert abs(a.d[(2, 1, 3)] - 0.70710678) < 1e-8


def test_lift_line_two_points():
    a = lift([[0.0], [1.0]])
    assert a.u[(1, 2)][0] == -1.0
    assert a.u[(2, 1)][0] == 1.0
    assert a.d == {}


def test_lift_rejects_duplicates():
    with pytest.raises(ValueError, match="coincide"):
        lift([[0.0, 0.0], [0.0, 0.0]])


def test_lift_permutation_equivariance_exact():
    rng = np.random.default_rng(1)
    for _ in range(10):
        n = int(rng.integers(2, 6))
        pts = sample_config(rng, n, 3)
        perm = tuple(int(v) for v in rng.permutation(n) + 1)
        left = cs.permute(perm, lift(pts))
        right = lift(np.stack([pts[p - 1] for p in perm]))
        assert cs.ambient_distance(left, right) == 0.0


def test_normalize_examples():
    out = cs.normalize(np.array([[0.0], [4.0]]))
    assert np.array_equal(out.points, [[-1.0], [1.0]])
    again = cs.normalize(out)
    assert np.array_equal(again.points, out.points)


def test_normalize_preserves_directions_and_ratios():
    rng = np.random.default_rng(2)
    for _ in range(100):
        n = int(rng.integers(2, 6))
        pts = sample_config(rng, n, 2)
        a = lift(pts)
        b = lift(cs.normalize(pts).points)
        assert direction_error(a.u, b.u) < 1e-12
        for key in a.d:
            assert abs(a.d[key] - b.d[key]) < 1e-12


# -- law of sines --------------------------------------------------------------------


def ratio_via_directions(a, i, j, k, tol=1e-9):
    return cs.ratio_from_directions(
        a.u[(i, j)], a.u[(j, i)], a.u[(j, k)], a.u[(k, j)],
        a.u[(i, k)], a.u[(k, i)], tol,
    )


def test_ratio_right_triangle():
    a = lift([[0, 0], [1, 0], [0, 1]])
    assert abs(ratio_via_directions(a, 1, 2, 3) - 1.0) < 1e-12


def test_ratio_cluster_zero():
    e1 = np.array([1.0, 0.0])
    e2 = np.array([0.0, 1.0])
    out = cs.ratio_from_directions(e2, -e2, e1, -e1, e1, -e1)
    assert out == 0.0


def test_ratio_collinear_indeterminate():
    e1 = np.array([1.0, 0.0])
    assert cs.ratio_from_directions(e1, -e1, e1, -e1, e1, -e1) is None


def test_ratio_rejects_non_unit():
    e1 = np.array([2.0, 0.0])
    with pytest.raises(ValueError, match="unit"):
        cs.ratio_from_directions(e1, -e1, e1, -e1, e1, -e1)


def test_law_of_sines_against_distance_ratio():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        m = int(rng.integers(2, 5))
        pts = sample_noncollinear_triple(rng, m)
        a = lift(pts)
        got = ratio_via_directions(a, 1, 2, 3)
        want = a.d[(1, 2, 3)]
        assert abs(got - want) / want < 1e-9


# -- extended ratios --------------------------------------------------------------------


def test_extended_ratio_convention():
    assert cs.xr_mul(0.0, math.inf) == 1.0
    assert cs.xr_mul(math.inf, 0.0) == 1.0
    assert cs.xr_mul(2.0, math.inf) == math.inf
    assert cs.xr_mul(0.5, 2.0) == 1.0


def test_extended_product_patterns():
    from confspace.canonical import extended_product_residual

    assert extended_product_residual([0.5, 2.0]) == 0.0
    assert extended_product_residual([0.0, math.inf, 1.0]) == 0.0
    assert extended_product_residual([0.0, math.inf, math.inf]) == 0.0
    assert extended_product_residual([0.0, 1.0, 1.0]) == math.inf
    assert extended_product_residual([math.inf, math.inf]) == math.inf
    assert abs(extended_product_residual([2.0, 1.0, 1.0]) - 1.0) < 1e-15


def test_ratio_cocycles_on_lifts():
    rng = np.random.default_rng(4)
    for _ in range(200):
        n = int(rng.integers(3, 8))
        m = int(rng.integers(1, 5))
        a = lift(sample_config(rng, n, m, min_sep=0.15))
        for i, j, k in cs.canonical.ordered_triples(n):
            assert abs(a.d[(i, j, k)] * a.d[(i, k, j)] - 1.0) <= 1e-12
        import itertools

        for i, j, k, l in itertools.permutations(range(1, n + 1), 4):
            prod = a.d[(i, j, k)] * a.d[(i, k, l)] * a.d[(i, l, j)]
            assert abs(prod - 1.0) <= 1e-10


# -- membership ----------------------------------------------------------------------------


def test_membership_passes_on_lifts():
    rng = np.random.default_rng(5)
    for _ in range(50):
        n = int(rng.integers(2, 8))
        m = int(rng.integers(1, 5))
        verdict = cs.membership_canonical(lift(sample_config(rng, n, m)))
        assert verdict.passed
        assert verdict.max_residual <= 1e-10


def test_membership_flags_negated_direction():
    rng = np.random.default_rng(6)
    a = lift(sample_config(rng, 4, 2))
    u = dict(a.u)
    u[(1, 2)] = -u[(1, 2)]
    broken = cs.ambient_point(a.x, u, a.d)
    verdict = cs.membership_canonical(broken)
    assert not verdict.passed
    assert any(v.condition.startswith(("1-", "3-")) for v in verdict.violations)


def test_membership_sphere_tangency():
    north = np.array([0.0, 0.0, 1.0])
    x = np.stack([north, north])
    u = {(1, 2): north.copy(), (2, 1): -north}
    a = cs.ambient_point(x, u, {})
    verdict = cs.membership_canonical(a, cs.Sphere(2))
    assert not verdict.passed
    assert any(v.condition == "5-tangency" for v in verdict.violations)
    # a tangent direction at the same double point is accepted
    tangent = np.array([1.0, 0.0, 0.0])
    ok = cs.ambient_point(x, {(1, 2): tangent, (2, 1): -tangent}, {})
    assert cs.membership_canonical(ok, cs.Sphere(2)).passed


def test_membership_rejects_perturbed_ratio():
    rng = np.random.default_rng(90)
    for _ in range(50):
        a = lift(sample_config(rng, 4, 2))
        d = dict(a.d)
        d[(1, 2, 3)] = d[(1, 2, 3)] * 1.5
        bad = cs.ambient_point(a.x, a.u, d)
        assert not cs.membership_canonical(bad).passed


def test_boundary_membership_all_trees_low_and_high_dim():
    for n in (2, 3, 4):
        for t in cs.enumerate_trees(n):
            for m in (1, 3):
                s = cs.stratum_sample(t, m, seed=5)
                frozen = cs.StratumPoint(
                    t, s.root_config, s.configs, {v: 0.0 for v in s.scales}
                )
                a = cs.expand_chart(frozen)
                assert cs.membership_canonical(a).passed
                assert cs.stratum_tree(a) == t
                from confspace.simplicial import membership_simplicial, to_simplicial

                assert membership_simplicial(to_simplicial(a)).passed


def test_membership_sphere_off_manifold():
    a = lift([[2.0, 0.0, 0.0], [0.0, 2.0, 0.0]])
    verdict = cs.membership_canonical(a, cs.Sphere(2))
    assert any(v.condition == "5-on-manifold" for v in verdict.violations)


# -- classification ---------------------------------------------------------------------------


def test_stratum_tree_generic_is_corolla():
    rng = np.random.default_rng(7)
    a = lift(sample_config(rng, 5, 3))
    assert cs.stratum_tree(a) == cs.corolla(5)


def test_stratum_tree_two_point_cluster():
    t = cs.tree_from_nested([{1, 2}], 3)
    s = cs.stratum_sample(t, 2, seed=0)
    frozen = cs.StratumPoint(t, s.root_config, s.configs, {v: 0.0 for v in s.scales})
    a = cs.expand_chart(frozen)
    assert a.d[(1, 2, 3)] == 0.0 and a.d[(2, 1, 3)] == 0.0
    assert np.array_equal(a.x[0], a.x[1])
    assert cs.stratum_tree(a) == t


def test_stratum_tree_trunk_when_all_collide():
    t = cs.tree_from_nested([{1, 2, 3}], 3)
    s = cs.stratum_sample(t, 2, seed=1)
    frozen = cs.StratumPoint(t, s.root_config, s.configs, {v: 0.0 for v in s.scales})
    a = cs.expand_chart(frozen)
    got = cs.stratum_tree(a)
    assert got.has_trunk and got == t


def test_stratum_tree_rejects_inconsistent_pattern():
    rng = np.random.default_rng(8)
    a = lift(sample_config(rng, 3, 2))
    d = dict(a.d)
    d[(1, 2, 3)] = 0.0  # without the mirror entry the axioms fail
    bad = cs.ambient_point(a.x, a.u, d)
    with pytest.raises(ValueError):
        cs.stratum_tree(bad, tol=1e-6)


# -- charts -----------------------------------------------------------------------------------


def trunk_stratum(t_scale):
    t = cs.tree_from_nested([{1, 2}], 2)
    return cs.StratumPoint(
        t, np.array([[0.0]]), {3: np.array([[-1.0], [1.0]])}, {3: t_scale}
    )


def test_expand_chart_trunk_example():
    out = cs.expand_chart(trunk_stratum(0.25))
    assert np.allclose(out.x.ravel(), [-0.25, 0.25])
    assert out.u[(1, 2)][0] == -1.0


def test_expand_chart_boundary_point():
    out = cs.expand_chart(trunk_stratum(0.0))
    assert np.array_equal(out.x, np.zeros((2, 1)))
    assert out.u[(1, 2)][0] == -1.0
    assert cs.stratum_tree(out) == cs.tree_from_nested([{1, 2}], 2)
    assert cs.membership_canonical(out).passed


def test_expand_chart_interior_equals_lift():
    rng = np.random.default_rng(9)
    for n in (3, 4, 5):
        for t in cs.enumerate_trees(n)[:20]:
            s = cs.stratum_sample(t, 2, seed=int(rng.integers(10_000)))
            if any(v == 0.0 for v in s.scales.values()):
                continue
            a = cs.expand_chart(s)
            # directions recomputed from tight-cluster positions lose digits
            assert cs.ambient_distance(a, lift(a.x)) < 1e-8
            assert cs.membership_canonical(a).passed


def test_expand_partial_scales_classify_as_contraction():
    t = cs.tree_from_nested([{1, 2}, {1, 2, 3}], 4)
    s = cs.stratum_sample(t, 2, seed=3)
    inner = t.vertex_over({1, 2})
    outer = t.vertex_over({1, 2, 3})
    half = cs.StratumPoint(
        t, s.root_config, s.configs, {inner: s.scales[inner], outer: 0.0}
    )
    got = cs.stratum_tree(cs.expand_chart(half))
    assert got == cs.contract(t, [inner])


def test_invert_chart_trunk_example():
    a = lift([[-0.25], [0.25]])
    t = cs.tree_from_nested([{1, 2}], 2)
    s = cs.invert_chart(t, a)
    assert np.allclose(s.root_config, [[0.0]])
    assert np.allclose(s.configs[3], [[-1.0], [1.0]])
    assert abs(s.scales[3] - 0.25) < 1e-15


def test_invert_chart_boundary_recovers_exactly():
    rng = np.random.default_rng(10)
    for n in (3, 4):
        for t in cs.enumerate_trees(n):
            if t == cs.corolla(n):
                continue
            s = cs.stratum_sample(t, 2, seed=int(rng.integers(10_000)))
            frozen = cs.StratumPoint(
                t, s.root_config, s.configs, {v: 0.0 for v in s.scales}
            )
            back = cs.invert_chart(t, cs.expand_chart(frozen))
            assert np.abs(back.root_config - frozen.root_config).max() < 1e-10
            for v in t.internal_vertices:
                assert np.abs(back.configs[v] - frozen.configs[v]).max() < 1e-10
                assert back.scales[v] < 1e-12


def test_invert_chart_corolla_is_identity():
    rng = np.random.default_rng(11)
    pts = sample_config(rng, 4, 3)
    a = lift(pts)
    s = cs.invert_chart(cs.corolla(4), a)
    assert np.allclose(s.root_config, pts)
    assert s.scales == {}


def test_invert_chart_interior_roundtrip():
    rng = np.random.default_rng(12)
    for n in (3, 4):
        for t in cs.enumerate_trees(n):
            s = cs.stratum_sample(t, 3, seed=int(rng.integers(10_000)))
            a = cs.expand_chart(s)
            again = cs.expand_chart(cs.invert_chart(t, a))
            assert cs.ambient_distance(a, again) < 1e-8


def test_invert_chart_outside_region_raises():
    t = cs.tree_from_nested([{1, 2}], 3)
    boundary = cs.stratum_sample(t, 2, seed=4)
    frozen = cs.StratumPoint(
        t, boundary.root_config, boundary.configs, {v: 0.0 for v in boundary.scales}
    )
    a = cs.expand_chart(frozen)
    with pytest.raises(ValueError, match="chart region"):
        cs.invert_chart(cs.corolla(3), a)


def test_stratum_point_validation():
    t = cs.tree_from_nested([{1, 2}], 2)
    with pytest.raises(ValueError, match="not centered"):
        cs.StratumPoint(t, np.array([[0.0]]), {3: np.array([[0.0], [1.0]])}, {3: 0.1})
    with pytest.raises(ValueError, match="outside"):
        cs.StratumPoint(t, np.array([[0.0]]), {3: np.array([[-1.0], [1.0]])}, {3: 0.5})
    with pytest.raises(ValueError, match="missing"):
        cs.StratumPoint(t, np.array([[0.0]]), {}, {})


def test_stratum_sample_deterministic_and_valid():
    t = cs.tree_from_nested([{1, 2}, {1, 2, 3}], 4)
    for seed in range(50):
        s = cs.stratum_sample(t, 2, seed)
        assert cs.membership_canonical(cs.expand_chart(s)).passed
    a = cs.stratum_sample(t, 3, 123)
    b = cs.stratum_sample(t, 3, 123)
    assert np.array_equal(a.root_config, b.root_config)
    assert all(np.array_equal(a.configs[v], b.configs[v]) for v in a.configs)
    assert a.scales == b.scales


def test_degeneration_trajectory_cauchy():
    t = cs.tree_from_nested([{1, 2}, {1, 2, 3}], 4)
    s = cs.stratum_sample(t, 2, seed=5)
    frozen = cs.StratumPoint(t, s.root_config, s.configs, {v: 0.0 for v in s.scales})
    limit = cs.expand_chart(frozen)
    errs = []
    for k in (5, 10, 20, 40):
        scaled = cs.StratumPoint(
            t, s.root_config, s.configs,
            {v: tv * 2.0 ** (-k) for v, tv in s.scales.items()},
        )
        errs.append(cs.ambient_distance(cs.expand_chart(scaled), limit))
    assert errs == sorted(errs, reverse=True)
    assert errs[-1] < 1e-6
    assert cs.stratum_tree(cs.expand_chart(frozen), tol=1e-6) == t


def test_permute_identity_and_freeness():
    t = cs.tree_from_nested([{1, 2}], 3)
    s = cs.stratum_sample(t, 2, seed=6)
    frozen = cs.StratumPoint(t, s.root_config, s.configs, {v: 0.0 for v in s.scales})
    a = cs.expand_chart(frozen)
    same = cs.permute((1, 2, 3), a)
    assert cs.ambient_distance(a, same) == 0.0
    swapped = cs.permute((1, 3, 2), a)
    assert cs.ambient_distance(a, swapped) > 0.1
    with pytest.raises(ValueError):
        cs.permute((1, 1, 2), a)


def test_permute_acts_on_stratum_trees():
    t = cs.tree_from_nested([{1, 2}], 3)
    s = cs.stratum_sample(t, 2, seed=7)
    frozen = cs.StratumPoint(t, s.root_config, s.configs, {v: 0.0 for v in s.scales})
    a = cs.expand_chart(frozen)
    perm = (3, 1, 2)  # new index i carries old perm[i-1]
    got = cs.stratum_tree(cs.permute(perm, a))
    inverse = {perm[i - 1]: i for i in (1, 2, 3)}
    assert got == cs.relabel(t, inverse)
