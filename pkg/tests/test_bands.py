"""Tests for the straight-chain band structure."""
from __future__ import annotations

import math

import numpy as np

from ringchain import (
    ZERO_ENERGY_ALPHA_MIN,
    compute_bands,
    discriminant,
    discriminant_negative,
    in_spectrum,
    lowest_band_threshold,
)


def test_repulsive_upper_edges_are_squares():
    spectrum = compute_bands(3.0, 30.0)
    assert len(spectrum.bands) == 6
    for i, band in enumerate(spectrum.bands):
        assert abs(band.e_hi - (i + 1) ** 2) <= 1e-10
        assert band.closed_hi


def test_repulsive_bands_sit_between_consecutive_squares():
    spectrum = compute_bands(3.0, 30.0)
    for i, band in enumerate(spectrum.bands):
        assert band.e_lo > i * i
        assert band.e_hi <= (i + 1) ** 2 + 1e-10
        assert band.width > 0.0


def test_attractive_lower_edges_are_squares():
    spectrum = compute_bands(-3.0, 30.0)
    for i, band in enumerate(spectrum.bands):
        if i == 0:
            continue  # the threshold band starts below zero instead
        assert abs(band.e_lo - i * i) <= 1e-10
        assert band.closed_lo


def test_attractive_threshold_band():
    spectrum = compute_bands(-3.0, 30.0)
    band0 = spectrum.bands[0]
    assert math.isclose(band0.e_lo, lowest_band_threshold(-3.0), rel_tol=1e-12)
    assert math.isclose(band0.e_lo, -0.7369125399334089, rel_tol=1e-12)
    # For coupling below the borderline the threshold band tops out below 0.
    assert math.isclose(band0.e_hi, -0.22441022678705386, rel_tol=1e-10)


def test_borderline_band_touches_zero():
    spectrum = compute_bands(ZERO_ENERGY_ALPHA_MIN, 10.0)
    assert abs(spectrum.bands[0].e_hi) <= 1e-10


def test_mildly_attractive_band_straddles_zero():
    spectrum = compute_bands(-2.0, 10.0)
    assert spectrum.bands[0].e_lo < 0.0 < spectrum.bands[0].e_hi


def test_flat_eigenvalues_are_integer_squares():
    spectrum = compute_bands(3.0, 30.0)
    assert spectrum.flat_eigenvalues == (1.0, 4.0, 9.0, 16.0, 25.0)


def test_threshold_solves_defining_equation():
    # The threshold is the half-trace = +1 crossing of the hyperbolic form,
    # equivalently kappa * tanh(pi*kappa/2) = -alpha/4.
    alpha = -3.0
    kappa0 = math.sqrt(-lowest_band_threshold(alpha))
    assert abs(discriminant_negative(kappa0, alpha) - 1.0) <= 1e-9
    assert abs(kappa0 * math.tanh(0.5 * math.pi * kappa0) + 0.25 * alpha) <= 1e-9


def test_in_spectrum_matches_discriminant_oracle():
    rng = np.random.default_rng(7)
    for alpha in (3.0, -3.0, 0.5):
        for energy in rng.uniform(-10.0, 30.0, 300):
            energy = float(energy)
            if energy >= 0.0:
                k = math.sqrt(energy)
                if abs(k - round(k)) < 1e-7:
                    continue  # flat-band points are spectrum by convention
                inside = abs(discriminant(k, alpha)) <= 1.0
            elif energy < -1e-12:
                inside = abs(discriminant_negative(math.sqrt(-energy), alpha)) <= 1.0
            assert in_spectrum(energy, alpha) == inside


def test_flat_band_energies_belong_to_spectrum():
    for alpha in (3.0, -3.0):
        for n in (1, 2, 3):
            assert in_spectrum(float(n * n), alpha)


def test_band_serialization_round_trip():
    spectrum = compute_bands(3.0, 10.0)
    d = spectrum.as_dict()
    assert d["alpha"] == 3.0
    assert d["e_max"] == 10.0
    assert len(d["bands"]) == len(spectrum.bands)
    first = d["bands"][0]
    assert set(first) == {"e_lo", "e_hi", "k_lo", "k_hi", "closed_lo", "closed_hi"}
    assert first["e_hi"] == spectrum.bands[0].e_hi


def test_emax_truncates_band_list_not_edges():
    # A band whose interior crosses e_max is kept with its true upper edge.
    spectrum = compute_bands(3.0, 30.0)
    assert spectrum.bands[-1].e_hi == 36.0
    assert spectrum.bands[-1].e_lo < 30.0
