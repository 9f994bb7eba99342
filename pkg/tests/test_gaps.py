"""Tests for gap eigenvalues of the bent chain."""
from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from ringchain import (
    gap_eigenvalues,
    gap_function,
    gap_function_negative,
    gap_function_negative_curvature,
    gap_intervals,
    double_points_in_gap,
    is_singular_angle,
    kappa_cutoff,
    lowest_band_threshold,
    odd_zero_crossing_angle,
    recover_double_angle,
    singular_angles,
    solve_gap,
    solve_negative,
    trace_eigenvalue_curve,
)

THETA = st.floats(min_value=0.3, max_value=math.pi - 0.3, allow_nan=False)
COUPLING = st.floats(min_value=1.0, max_value=6.0, allow_nan=False)


def test_gap_intervals_repulsive_layout():
    gaps = gap_intervals(3.0, 3)
    assert [g.n for g in gaps] == [0, 1, 2, 3]
    for g in gaps[1:]:
        # Gaps open upward from each flat-band momentum for alpha > 0.
        assert g.k_lo == float(g.n)
        assert g.k_lo < g.k_hi < g.n + 1
        assert g.integer_edge == float(g.n)
        assert g.band_edge == g.k_hi


def test_gap_intervals_attractive_layout():
    gaps = gap_intervals(-3.0, 3)
    for g in gaps:
        if g.n == 0:
            continue
        # Gaps open downward from each flat-band momentum for alpha < 0.
        assert g.k_hi == float(g.n)
        assert g.integer_edge == float(g.n)
        assert g.band_edge == g.k_lo
        assert g.k_lo < g.k_hi


def test_first_gap_fixture_roots():
    gap1 = gap_intervals(3.0, 1)[1]
    k_even = solve_gap(3.0, math.pi / 5.0, gap1, "+")
    k_odd = solve_gap(3.0, math.pi / 5.0, gap1, "-")
    assert math.isclose(k_even, 1.1239278679448357, rel_tol=1e-12)
    assert math.isclose(k_odd, 1.3239223583327728, rel_tol=1e-12)


def test_solved_roots_satisfy_matching_conditions():
    gap1 = gap_intervals(3.0, 1)[1]
    theta = math.pi / 5.0
    k_even = solve_gap(3.0, theta, gap1, "+")
    k_odd = solve_gap(3.0, theta, gap1, "-")
    assert abs(math.cos(k_even * theta) - gap_function(k_even, 3.0)) < 1e-10
    assert abs(-math.cos(k_odd * theta) - gap_function(k_odd, 3.0)) < 1e-10


def test_solve_gap_root_is_unique_in_gap():
    # Independent audit: a dense scan of the matching condition over the
    # gap finds exactly one sign change, at the solver's root.
    alpha, theta = 3.0, 1.1
    gap = gap_intervals(alpha, 2)[2]
    k_root = solve_gap(alpha, theta, gap, "+")
    xs = np.linspace(gap.k_lo + 1e-9, gap.k_hi - 1e-9, 4001)
    vals = [math.cos(x * theta) - gap_function(x, alpha) for x in xs]
    crossings = [
        i for i in range(len(xs) - 1) if vals[i] * vals[i + 1] < 0.0
    ]
    assert len(crossings) == 1
    i = crossings[0]
    assert xs[i] <= k_root <= xs[i + 1]


def test_singular_angle_inventory_small_n():
    # Even-sector singular angles are (n+1-2l)*pi/n, odd-sector (n-2l)*pi/n,
    # both restricted to [0, pi).
    for n in range(1, 7):
        for parity, offset in (("+", n + 1), ("-", n)):
            angles = singular_angles(n, parity)
            expected = sorted(
                {
                    (offset - 2 * ell) * math.pi / n
                    for ell in range(offset + 1)
                    if 0.0 <= (offset - 2 * ell) * math.pi / n < math.pi
                }
            )
            assert sorted(angles) == pytest.approx(expected)


def test_singular_angle_examples():
    assert sorted(singular_angles(3, "+")) == pytest.approx([0.0, 2 * math.pi / 3])
    assert sorted(singular_angles(3, "-")) == pytest.approx([math.pi / 3])
    assert is_singular_angle(2 * math.pi / 3 + 1e-12, 3, "+")
    assert not is_singular_angle(2 * math.pi / 3 + 1e-3, 3, "+")


def test_eigenvalue_absent_exactly_at_singular_angle():
    gap3 = gap_intervals(3.0, 3)[3]
    assert solve_gap(3.0, 2.0 * math.pi / 3.0, gap3, "+") is None
    assert solve_gap(3.0, 2.0 * math.pi / 3.0 + 0.05, gap3, "+") is not None


def test_gap_eigenvalue_records_are_consistent():
    records = gap_eigenvalues(3.0, 1.0, 3)
    assert records
    for r in records:
        assert r.theta == 1.0
        assert r.residual < 1e-9
        assert r.multiplicity == 1
        assert r.energy == pytest.approx(r.k * r.k)
        gap = gap_intervals(3.0, 3)[r.gap_index]
        assert gap.k_lo < r.k < gap.k_hi


def test_double_points_satisfy_tangent_relation():
    # Parity-degenerate momenta solve k*tan(pi*k) = alpha/2.
    for gap in gap_intervals(3.0, 3)[1:]:
        points = double_points_in_gap(3.0, gap)
        assert len(points) == 1
        k_star = points[0]
        assert abs(k_star * math.tan(math.pi * k_star) - 1.5) < 1e-9


def test_double_angle_recovery_and_merged_record():
    gap1 = gap_intervals(3.0, 1)[1]
    k_star = double_points_in_gap(3.0, gap1)[0]
    theta_star = recover_double_angle(k_star, 3.0)
    assert math.isclose(k_star, 1.2756700453097611, rel_tol=1e-12)
    assert math.isclose(theta_star, 1.2313500129365125, rel_tol=1e-12)
    # Both parity solvers land on the same momentum there...
    k_even = solve_gap(3.0, theta_star, gap1, "+")
    k_odd = solve_gap(3.0, theta_star, gap1, "-")
    assert abs(k_even - k_star) < 1e-9
    assert abs(k_odd - k_star) < 1e-9
    # ...and the record set reports one eigenvalue of multiplicity two.
    merged = [r for r in gap_eigenvalues(3.0, theta_star, 1) if r.gap_index == 1]
    assert len(merged) == 1
    assert merged[0].multiplicity == 2
    assert merged[0].parity == "+-"


def test_negative_roots_fixtures_and_conditions():
    kappa_even = solve_negative(-3.0, 1.0, "+")
    kappa_odd = solve_negative(-3.0, 1.0, "-")
    assert math.isclose(kappa_even, 0.8615691865149844, rel_tol=1e-12)
    assert math.isclose(kappa_odd, 0.45543538071420087, rel_tol=1e-12)
    assert abs(
        math.cosh(kappa_even) - gap_function_negative(kappa_even, -3.0)
    ) < 1e-10
    assert abs(
        -math.cosh(kappa_odd) - gap_function_negative(kappa_odd, -3.0)
    ) < 1e-10


def test_negative_even_root_is_bracketed():
    # The even negative eigenvalue sits between the threshold momentum and
    # the sweep cutoff for every bend angle.
    alpha = -3.0
    x1 = math.sqrt(-lowest_band_threshold(alpha))
    cutoff = kappa_cutoff(alpha)
    assert math.isclose(cutoff, 1.5002417505725039, rel_tol=1e-12)
    for theta in (0.3, 1.0, 1.9, 2.7):
        kappa = solve_negative(alpha, theta, "+")
        assert x1 < kappa < cutoff


def test_odd_negative_root_exists_below_crossing_angle_only():
    alpha = -3.0
    theta_c = odd_zero_crossing_angle(alpha)
    assert math.isclose(
        theta_c,
        math.sqrt(2.0 * gap_function_negative_curvature(alpha)),
        rel_tol=1e-12,
    )
    assert math.isclose(theta_c, 1.958929867883135, rel_tol=1e-12)
    assert solve_negative(alpha, theta_c - 0.05, "-") is not None
    assert solve_negative(alpha, theta_c + 0.05, "-") is None


def test_traced_odd_curve_crosses_zero_energy():
    alpha = -4.0
    theta_c = odd_zero_crossing_angle(alpha)
    grid = np.linspace(theta_c - 0.2, theta_c + 0.2, 41)
    curve = trace_eigenvalue_curve(alpha, "-", 1, grid, jump_factor=3.0)
    energies = np.asarray(curve.energies(), dtype=float)
    thetas = np.asarray(curve.thetas(), dtype=float)
    assert len(energies) == 41
    signs = np.sign(energies)
    flips = np.nonzero(np.diff(signs))[0]
    assert len(flips) == 1
    i = flips[0]
    t_cross = thetas[i] - energies[i] * (thetas[i + 1] - thetas[i]) / (
        energies[i + 1] - energies[i]
    )
    assert abs(t_cross - theta_c) < 5e-3


@settings(max_examples=40, deadline=None)
@given(alpha=COUPLING, theta=THETA)
def test_first_gap_even_root_properties(alpha, theta):
    assume(all(abs(theta - t) > 1e-2 for t in singular_angles(1, "+")))
    gap1 = gap_intervals(alpha, 1)[1]
    k = solve_gap(alpha, theta, gap1, "+")
    assume(k is not None)
    assert gap1.k_lo < k < gap1.k_hi
    assert abs(math.cos(k * theta) - gap_function(k, alpha)) < 1e-9
