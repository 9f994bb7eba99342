"""Tests for the ring-to-ring transfer matrix and coefficient recursion."""
from __future__ import annotations

import math

import pytest
from hypothesis import assume, given, strategies as st

from ringchain import (
    DegenerateError,
    OverflowNormError,
    boundary_vector_even,
    coefficient_sequence,
    discriminant,
    gap_eigenvalues,
    measured_decay_rate,
    transfer_eigen,
    transfer_matrix,
)

K_RE = st.floats(min_value=0.1, max_value=5.9, allow_nan=False)
K_IM = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)
ALPHA = st.floats(min_value=-6.0, max_value=6.0, allow_nan=False)


@given(re=K_RE, im=K_IM, alpha=ALPHA)
def test_determinant_is_one(re, im, alpha):
    assume(im != 0.0 or abs(re - round(re)) > 1e-6)
    m = transfer_matrix(complex(re, im), alpha)
    assert abs(m.det - 1.0) < 1e-9


@given(re=K_RE, im=K_IM, alpha=ALPHA)
def test_trace_is_twice_the_halftrace(re, im, alpha):
    assume(im != 0.0 or abs(re - round(re)) > 1e-6)
    k = complex(re, im)
    m = transfer_matrix(k, alpha)
    assert abs(m.trace - 2.0 * discriminant(k, alpha)) < 1e-9


def test_apply_is_matrix_action():
    m = transfer_matrix(1.3 + 0.2j, 3.0)
    v = (0.7 - 0.1j, -0.4 + 0.9j)
    out = m.apply(v)
    assert out[0] == pytest.approx(m.m11 * v[0] + m.m12 * v[1])
    assert out[1] == pytest.approx(m.m21 * v[0] + m.m22 * v[1])


def test_eigen_pairs_satisfy_eigen_equation():
    k, alpha = 1.15, 3.0  # inside the first gap
    m = transfer_matrix(k, alpha)
    eig = transfer_eigen(k, alpha)
    for lam, vec in (
        (eig.expanding, eig.v_expanding),
        (eig.contracting, eig.v_contracting),
    ):
        mv = m.apply(vec)
        assert abs(mv[0] - lam * vec[0]) < 1e-9
        assert abs(mv[1] - lam * vec[1]) < 1e-9


def test_eigenvalues_are_reciprocal_and_ordered():
    eig = transfer_eigen(1.15, 3.0)
    assert abs(eig.expanding * eig.contracting - 1.0) < 1e-12
    assert abs(eig.expanding) > 1.0 > abs(eig.contracting)


def test_flat_band_point_is_rejected():
    # Integer momenta are flat-band points; the period map has no safe
    # eigenbasis there and the constructor refuses them up front.
    with pytest.raises(ValueError):
        transfer_eigen(2.0, 3.0)


def test_band_edge_is_degenerate():
    # At a band edge the two multipliers coalesce at +-1.
    with pytest.raises(DegenerateError):
        transfer_eigen(1.327409862383918, 3.0)


def test_boundary_vector_rejects_integer_momentum():
    with pytest.raises(ValueError):
        boundary_vector_even(2.0, 3.0, 1.0)


def test_even_gap_eigenvalue_coefficients_decay_at_contracting_rate():
    # Frozen gap eigenvalue: alpha=3, theta=1.3, even sector, first gap.
    records = [
        r for r in gap_eigenvalues(3.0, 1.3, 4, "+")
        if r.energy > 0.0 and r.gap_index >= 1
    ]
    rec = records[0]
    assert math.isclose(rec.k, 1.2876960620127247, rel_tol=1e-12)
    k = complex(rec.k)
    eig = transfer_eigen(k, 3.0)
    seed = boundary_vector_even(k, 3.0, rec.theta)
    pairs = coefficient_sequence(seed, k, 3.0, 14)
    assert pairs[0].ring_index == 1
    assert [p.ring_index for p in pairs] == list(range(1, 15))
    rate = measured_decay_rate(pairs)
    assert abs(rate - abs(eig.contracting)) <= 1e-6


def test_decay_rate_needs_enough_rings():
    k = complex(1.2876960620127247)
    seed = boundary_vector_even(k, 3.0, 1.3)
    pairs = coefficient_sequence(seed, k, 3.0, 6)
    with pytest.raises(ValueError):
        measured_decay_rate(pairs)


def test_growing_seed_overflows_loudly():
    # A seed aligned with the expanding direction blows past the float
    # range; the recursion reports that instead of returning inf silently.
    with pytest.raises(OverflowNormError):
        coefficient_sequence((1e250, 1e250), complex(0.3), -3.0, 400)
