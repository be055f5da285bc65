"""Smoke tests for the python bindings."""

import math

import pytest

import otdepth

FIVE = [[1.0], [2.0], [3.0], [4.0], [5.0]]
DIAMOND = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]


def test_version():
    assert otdepth.__version__


def test_depths_1d():
    d = otdepth.tukey_depth([3.0], FIVE)
    assert (d.depth.count, d.depth.n) == (3, 5)
    assert d.exact
    lo = otdepth.lower_tukey_depth([3.0], FIVE)
    assert (lo.depth.count, lo.depth.n) == (3, 5)
    assert otdepth.tukey_depth([5.0], FIVE).depth == otdepth.DepthValue(1, 5)


def test_depths_diamond():
    assert otdepth.tukey_depth([0.0, 0.0], DIAMOND).depth == otdepth.DepthValue(3, 5)
    assert otdepth.lower_tukey_depth([0.0, 0.0], DIAMOND).depth == otdepth.DepthValue(2, 5)
    tau, deepest = otdepth.max_depth(DIAMOND)
    assert tau == otdepth.DepthValue(3, 5)
    assert deepest == [[0.0, 0.0]]


def test_min_depth_direction_tie_break():
    assert otdepth.min_depth_direction([3.0], FIVE) == [-1.0]


def test_assignment_and_monotonicity():
    m = otdepth.solve_assignment(FIVE, FIVE)
    assert m.sigma == [0, 1, 2, 3, 4]
    assert m.total_cost == 0.0
    brute = otdepth.brute_force_assignment(FIVE, FIVE)
    assert brute.total_cost == m.total_cost
    assert otdepth.check_pairwise_monotone(m, FIVE, FIVE)


def test_transport_objects():
    q = otdepth.TransportQuantileFn.make(FIVE, FIVE)
    assert otdepth.transport_depth(2, q) == otdepth.DepthValue(3, 5)
    assert otdepth.transport_median(q) == [[3.0]]
    contour = otdepth.transport_contour(otdepth.DepthValue(1, 5), q)
    assert sorted(contour.points) == [[1.0], [5.0]]
    ranks = otdepth.transport_ranks(q)
    assert ranks[0][0] == 2


def test_hausdorff_and_geometry():
    assert otdepth.hausdorff([[0.0], [1.0]], [[0.0], [5.0]]) == pytest.approx(4.0)
    assert otdepth.in_general_position([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    assert not otdepth.in_general_position(DIAMOND)
    assert otdepth.max_hyperplane_count(DIAMOND) == 3


def test_reference_generation():
    pts = otdepth.generate_reference("halton_cube", n=3, dim=1)
    assert pts == [[0.0], [-0.5], [0.5]]
    ball = otdepth.generate_reference("spherical_uniform", n=50, dim=2, seed=11)
    assert all(math.hypot(*p) <= 1.0 + 1e-12 for p in ball)
    again = otdepth.generate_reference("spherical_uniform", n=50, dim=2, seed=11)
    assert ball == again
    fixed = otdepth.ensure_general_position(DIAMOND, jitter=1e-6, seed=3)
    assert otdepth.in_general_position(fixed)


def test_breakdown_map():
    est = otdepth.estimate_bp_map(DIAMOND, DIAMOND, 0)
    assert est.bp_estimate == otdepth.DepthValue(2, 5)
    assert est.bracket_lo == otdepth.DepthValue(2, 5)
    assert est.bracket_hi == otdepth.DepthValue(3, 5)
    assert est.within_bracket


def test_breakdown_median_and_contour():
    est = otdepth.estimate_bp_median(FIVE, FIVE)
    assert est.bp_estimate == otdepth.DepthValue(3, 5)
    assert est.within_bracket
    contour = otdepth.estimate_bp_contour(DIAMOND, DIAMOND, otdepth.DepthValue(1, 5))
    assert contour.bp_estimate == otdepth.DepthValue(1, 5)
    assert contour.within_bracket


def test_csv_roundtrip(tmp_path):
    path = str(tmp_path / "cloud.csv")
    otdepth.write_cloud_csv(path, DIAMOND)
    assert otdepth.read_cloud_csv(path) == DIAMOND


def test_errors_are_python_exceptions():
    with pytest.raises(ValueError):
        otdepth.tukey_depth([1.0, 2.0], FIVE)  # dimension mismatch
    with pytest.raises(ValueError):
        otdepth.solve_assignment(FIVE, DIAMOND)
