import numpy as np
import pytest

from oracles import brute_max_pairwise, sampled_rhombus_distance
from fifcover.analysis import FixedPoint, fixed_point
from fifcover.covering import (
    APPENDIX_MODE_NOTES,
    MODE_APPENDIX,
    MODE_THEOREM,
    Covering,
    RangeBounds,
    Rhombus,
    build_covering,
    compare_with_reference,
    covering_distances,
    max_pairwise_distance,
    point_to_covering_distance,
    range_bounds,
)
from fifcover.errors import DepthCapExceeded, TooFewPoints
from fifcover.formats import load_bundled_reference
from fifcover.model import InterpolationData, build_system

THETA1 = 15 / 17
# Radius of the maximal-constant rhombus of dataset1 at depth 1:
# (83/17) * 0.625 * (1 + 0.5367647...) / (1 - 0.625 * 0.5367647...).
RADIUS_WORD_2 = 7.056789520787567


def single_rhombus_covering(center, radius, theta=1.0):
    r = Rhombus(center=FixedPoint(*center), radius=radius, theta=theta,
                word=(1,), lipschitz=0.5)
    return Covering(
        depth=1, mode=MODE_THEOREM, theta=theta, rhombi=(r,),
        diameter_bound=max(radius, 1.0), lipschitz_sorted=(0.5,),
        bounds=RangeBounds(center[1] - radius / theta,
                           center[1] + radius / theta),
        x_span=(center[0] - radius, center[0] + radius),
        centers_u=np.array([center[0]]), centers_v=np.array([center[1]]),
        radii=np.array([radius]),
    )


class TestMaxPairwiseDistance:
    def test_identical_points(self):
        assert max_pairwise_distance([(1.0, 2.0), (1.0, 2.0)], 0.5) == 0.0

    def test_too_few_points(self):
        with pytest.raises(TooFewPoints):
            max_pairwise_distance([(0.0, 0.0)], 1.0)

    def test_dataset1_fixed_points(self, system1):
        pts = [fixed_point(m) for m in system1.maps]
        assert max_pairwise_distance(pts, THETA1) == pytest.approx(
            83 / 17, rel=1e-12)
        assert brute_max_pairwise(np.array(pts), THETA1) == pytest.approx(
            83 / 17, rel=1e-12)

    def test_spread_formula_matches_brute_force(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            pts = rng.uniform(-100, 100, size=(50, 2))
            theta = rng.uniform(0.05, 2.0)
            fast = max_pairwise_distance(pts, theta)
            assert fast == pytest.approx(brute_max_pairwise(pts, theta),
                                         abs=1e-12, rel=1e-12)


class TestBuildCovering:
    def test_dataset1_depth1_theorem(self, system1):
        c = build_covering(system1, 1)
        assert len(c.rhombi) == 4
        assert c.lipschitz_sorted == pytest.approx(
            (0.4044117647058824, 0.5367647058823529, 0.5367647058823529,
             0.625), rel=1e-12)
        assert c.diameter_bound == pytest.approx(83 / 17, rel=1e-12)
        by_word = {r.word: r for r in c.rhombi}
        assert by_word[(2,)].radius == pytest.approx(RADIUS_WORD_2,
                                                     rel=1e-12)

    def test_equal_constants_collapse_both_formulas(self):
        # Constant data with equal scaling: both maps share s, so the two
        # radius branches coincide at M*s/(1-s).
        data = InterpolationData.create([0, 1, 2], [5, 5, 5], [0.4, 0.4])
        system = build_system(data)
        c = build_covering(system, 1)
        s = c.lipschitz_sorted[0]
        expected = c.diameter_bound * s / (1 - s)
        for r in c.rhombi:
            assert r.radius == pytest.approx(expected, rel=1e-12)

    def test_rhombus_count_and_radii(self, system3):
        for depth in (1, 2, 3):
            for mode in (MODE_THEOREM, MODE_APPENDIX):
                c = build_covering(system3, depth, mode=mode)
                assert len(c.rhombi) == system3.n**depth
                assert np.all(c.radii > 0)
                assert np.all(np.isfinite(c.radii))

    def test_words_in_lexicographic_order(self, system1):
        c = build_covering(system1, 2)
        words = [r.word for r in c.rhombi]
        assert words == sorted(words)

    def test_modes_agree_on_symmetric_input(self):
        # Equal constants and horizontally collinear fixed points: the
        # Euclidean and weighted max distances coincide, as do the radii.
        data = InterpolationData.create([0, 1, 2], [5, 5, 5], [0.4, 0.4])
        system = build_system(data)
        theorem = build_covering(system, 1, mode=MODE_THEOREM)
        appendix = build_covering(system, 1, mode=MODE_APPENDIX)
        assert theorem.diameter_bound == appendix.diameter_bound
        np.testing.assert_allclose(theorem.radii, appendix.radii, rtol=1e-15)

    def test_appendix_mode_flags_its_deviations(self, system1):
        c = build_covering(system1, 1, mode=MODE_APPENDIX)
        assert c.mode_notes == APPENDIX_MODE_NOTES
        assert build_covering(system1, 1).mode_notes == ()

    def test_deterministic(self, system2):
        a = build_covering(system2, 3)
        b = build_covering(system2, 3)
        assert a.rhombi == b.rhombi
        assert a.bounds == b.bounds
        np.testing.assert_array_equal(a.radii, b.radii)

    def test_depth_cap(self, system2):
        with pytest.raises(DepthCapExceeded):
            build_covering(system2, 5, cap=10**4)


class TestRhombusGeometry:
    def test_unit_vertices(self):
        r = Rhombus(FixedPoint(0, 0), 1.0, 1.0, (1,), 0.5)
        assert r.vertices() == ((1, 0), (-1, 0), (0, 1), (0, -1))

    def test_scaled_vertices(self):
        r = Rhombus(FixedPoint(2, 3), 2.0, 0.5, (1,), 0.5)
        assert r.vertices() == ((4, 3), (0, 3), (2, 7), (2, -1))

    def test_vertices_lie_on_the_boundary(self, system1):
        c = build_covering(system1, 2)
        for r in c.rhombi[:8]:
            for v in r.vertices():
                d = abs(v[0] - r.center.u) + r.theta * abs(v[1] - r.center.v)
                assert d == pytest.approx(r.radius, rel=1e-12)

    def test_contains_center_and_vertices(self):
        r = Rhombus(FixedPoint(2, 3), 2.0, 0.5, (1,), 0.5)
        assert r.contains((2, 3))
        for v in r.vertices():
            assert r.contains(v, tol=1e-12)

    def test_excludes_outside_point(self):
        r = Rhombus(FixedPoint(0, 0), 1.0, 1.0, (1,), 0.5)
        assert not r.contains((0.6, 0.6))
        assert r.contains((0.6, 0.6), tol=0.3)


class TestPointToCoveringDistance:
    def test_zero_inside(self, system1):
        c = build_covering(system1, 1)
        for r in c.rhombi:
            assert point_to_covering_distance(tuple(r.center), c) == 0.0

    def test_collinear_single_rhombus(self):
        c = single_rhombus_covering((0, 0), 1.0, theta=1.0)
        assert point_to_covering_distance((3, 0), c) == 2.0

    def test_matches_boundary_sampling_oracle(self, system1):
        c = build_covering(system1, 1)
        rng = np.random.default_rng(23)
        for _ in range(30):
            p = tuple(rng.uniform(-15, 25, size=2))
            fast = point_to_covering_distance(p, c)
            sampled = min(sampled_rhombus_distance(r, p, 10_000)
                          for r in c.rhombi)
            # Resolution: weighted-L1 perimeter 8r over 1e4 samples.
            res = 8 * max(r.radius for r in c.rhombi) / 10_000
            assert abs(fast - sampled) <= res

    def test_kdtree_path_agrees_with_direct_scan(self, system2):
        c = build_covering(system2, 4)  # 6561 rhombi: tree path
        rng = np.random.default_rng(29)
        pts = rng.uniform([-2, -10], [11, 20], size=(200, 2))
        fast = covering_distances(pts, c)
        theta = c.theta
        direct = np.array([
            max(0.0, (np.abs(p[0] - c.centers_u)
                      + theta * np.abs(p[1] - c.centers_v)
                      - c.radii).min())
            for p in pts
        ])
        np.testing.assert_allclose(fast, direct, atol=1e-12)


class TestRangeBounds:
    def test_constant_data_symmetric_about_level(self):
        data = InterpolationData.create([0, 1, 2], [5, 5, 5], [0.3, 0.6])
        c = build_covering(build_system(data), 1)
        assert c.bounds.midpoint == pytest.approx(5.0, rel=1e-12)
        assert c.bounds.lower < 5.0 < c.bounds.upper

    def test_brackets_interpolation_values(self, systems):
        for system in systems.values():
            for depth in (1, 3):
                c = build_covering(system, depth)
                assert c.bounds.lower <= min(system.data.ys)
                assert c.bounds.upper >= max(system.data.ys)

    def test_recompute_matches_build(self, system3):
        c = build_covering(system3, 2)
        again = range_bounds(c)
        assert again.lower == pytest.approx(c.bounds.lower, rel=1e-12)
        assert again.upper == pytest.approx(c.bounds.upper, rel=1e-12)

    def test_bounding_box(self, system1):
        c = build_covering(system1, 1)
        (x_lo, x_hi), (y_lo, y_hi) = c.bounding_box()
        assert (x_lo, x_hi) == (0.0, 4.0)
        assert (y_lo, y_hi) == (c.bounds.lower, c.bounds.upper)


class TestCompareWithReference:
    def test_zero_deviation_against_itself(self, system1):
        bounds = {m: build_covering(system1, m).bounds for m in (1, 2)}
        ref = {m: (b.lower, b.upper) for m, b in bounds.items()}
        rows = compare_with_reference({"theorem": bounds}, ref)
        for row in rows:
            assert row.lower_abs_dev == 0.0
            assert row.upper_abs_dev == 0.0
            assert row.half_width_rel_dev == 0.0
            assert row.midpoint_dev == 0.0

    def test_bundled_reference_values(self):
        ref2 = load_bundled_reference("dataset2")
        assert ref2[5] == (0.3393, 7.0176)
        ref3 = load_bundled_reference("dataset3")
        assert ref3[1] == (-335.3988, 376.9781)

    def test_depth_mismatch_rejected(self, system1):
        bounds = {1: build_covering(system1, 1).bounds}
        with pytest.raises(ValueError):
            compare_with_reference({"theorem": bounds},
                                   {1: (0, 1), 2: (0, 1)})
