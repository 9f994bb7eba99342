"""Band spectrum of the straight ring chain.

Spectral bands are the energies where the period-map half-trace lies in
``[-1, 1]``; on top of them sits a flat (infinitely degenerate) eigenvalue
``n**2`` at every positive integer ``n``.  Energies are swept along a
single signed axis ``s`` with ``E = sign(s) * s**2``, so the negative
branch (``s = -kappa``) and the positive branch (``s = k``) assemble into
one ordered list of bands; the threshold band of an attractive coupling
comes out of the same sweep as any other band.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._rootfind import bisect, brackets_from_samples
from .dispersion import (
    INTEGER_WINDOW,
    discriminant,
    discriminant_negative,
    discriminant_zero_limit,
    is_near_integer,
)

__all__ = [
    "BAND_SCAN_PER_UNIT",
    "Band",
    "BandSpectrum",
    "in_spectrum",
    "compute_bands",
    "lowest_band_threshold",
]

# Sample density used to bracket |half-trace| = 1 edges, per unit of k.
BAND_SCAN_PER_UNIT = 128
# Grid offset keeping scan samples off the exact integers, where the
# half-trace equals ±1 identically.
_EDGE_OFFSET = 1e-10
# Scan roots closer than this to an integer collapse onto the integer.
_SNAP = 1e-9


@dataclass(frozen=True)
class Band:
    """One spectral band ``[e_lo, e_hi]``.

    ``k_lo``/``k_hi`` hold the signed wavenumber edges with the convention
    ``E = sign(s) * s**2`` (negative ``s`` means ``E = -s**2``, i.e. the
    decaying branch).  ``closed_*`` flags are False only for artificial
    window boundaries (the ``alpha = 0`` half-line cut at ``e_max``), never
    for genuine spectral edges.
    """

    e_lo: float
    e_hi: float
    k_lo: float
    k_hi: float
    closed_lo: bool = True
    closed_hi: bool = True

    def __post_init__(self) -> None:
        if not self.e_lo <= self.e_hi:
            raise ValueError("band edges out of order")

    @property
    def width(self) -> float:
        return self.e_hi - self.e_lo

    def as_dict(self) -> dict:
        return {
            "e_lo": self.e_lo,
            "e_hi": self.e_hi,
            "k_lo": self.k_lo,
            "k_hi": self.k_hi,
            "closed_lo": self.closed_lo,
            "closed_hi": self.closed_hi,
        }


@dataclass(frozen=True)
class BandSpectrum:
    """Bands and flat eigenvalues of the straight chain up to ``e_max``."""

    alpha: float
    e_max: float
    bands: tuple[Band, ...]
    flat_eigenvalues: tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        for prev, cur in zip(self.bands, self.bands[1:]):
            if not prev.e_hi < cur.e_lo:
                raise ValueError("bands must be disjoint and ordered")

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "e_max": self.e_max,
            "bands": [b.as_dict() for b in self.bands],
            "flat_eigenvalues": list(self.flat_eigenvalues),
        }


def in_spectrum(energy: float, alpha: float) -> bool:
    """Membership test against the straight-chain essential spectrum.

    Positive energies with integer ``sqrt(E)`` are the flat eigenvalues and
    always belong; otherwise membership is ``|half-trace| <= 1`` on the
    matching (positive or negative) branch.
    """
    if energy > 0.0:
        k = math.sqrt(energy)
        if is_near_integer(k):
            return True
        return abs(discriminant(k, alpha)) <= 1.0
    if energy < 0.0:
        return abs(discriminant_negative(math.sqrt(-energy), alpha)) <= 1.0
    return abs(discriminant_zero_limit(alpha)) <= 1.0


def _halftrace_signed(s: float, alpha: float) -> float:
    """Half-trace as a function of the signed sweep variable."""
    if s >= 0.0:
        return float(discriminant(s, alpha))
    return discriminant_negative(-s, alpha)


def _halftrace_signed_vec(ss: np.ndarray, alpha: float) -> np.ndarray:
    out = np.empty_like(ss)
    pos = ss >= 0.0
    kp = ss[pos]
    # sin(pi k)/k = pi * sinc(k); numpy's sinc handles k = 0 continuously.
    out[pos] = np.cos(np.pi * kp) + 0.25 * alpha * np.pi * np.sinc(kp)
    kn = -ss[~pos]
    x = np.pi * kn
    out[~pos] = np.cosh(x) + 0.25 * alpha * np.pi * np.where(
        x > 1e-8, np.sinh(x) / np.where(x > 0, x, 1.0), 1.0
    )
    return out


def _edge_roots(alpha: float, s_lo: float, s_hi: float) -> list[float]:
    """Non-integer roots of |half-trace| = 1 on ``(s_lo, s_hi)``.

    The interval is scanned separately against the targets +1 and -1 on a
    grid kept off the integers (the half-trace equals ±1 there by
    construction); bracketed crossings are bisected to full precision and
    roots landing within the snap window of an integer are discarded —
    integers enter the edge list explicitly.
    """
    roots: list[float] = []
    n_pts = max(64, int(BAND_SCAN_PER_UNIT * (s_hi - s_lo)))
    m_lo = math.floor(s_lo)
    for cell in range(m_lo, math.ceil(s_hi)):
        a = max(float(cell) + _EDGE_OFFSET, s_lo)
        b = min(float(cell) + 1.0 - _EDGE_OFFSET, s_hi - _EDGE_OFFSET)
        if not a < b:
            continue
        grid = np.linspace(a, b, max(64, n_pts // max(1, math.ceil(s_hi - s_lo))))
        vals = _halftrace_signed_vec(grid, alpha)
        for target in (1.0, -1.0):
            for lo, hi in brackets_from_samples(grid, vals - target):
                if lo == hi:
                    root = lo
                else:
                    root = bisect(
                        lambda s: _halftrace_signed(s, alpha) - target, lo, hi
                    )
                if abs(root - round(root)) > _SNAP:
                    roots.append(root)
    roots.sort()
    deduped: list[float] = []
    for r in roots:
        if not deduped or r - deduped[-1] > _SNAP:
            deduped.append(r)
    return deduped


def _negative_sweep_limit(alpha: float) -> float:
    """Safe lower end of the signed sweep for attractive couplings.

    The deepest spectral point satisfies ``kappa <= |alpha|/2 + 1`` (the
    half-trace exceeds 1 beyond it for every sign pattern), with the extra
    unit keeping weak couplings covered as well.
    """
    return -(0.5 * abs(alpha) + 1.0)


def compute_bands(alpha: float, e_max: float) -> BandSpectrum:
    """All spectral bands with ``e_lo < e_max``, plus flat eigenvalues.

    Bands are reported with their genuine edges, so the last band may
    reach beyond ``e_max``.  For ``alpha = 0`` the essential spectrum is
    the half-line ``[0, inf)``, reported as a single band cut at ``e_max``
    with an open upper flag.
    """
    if not e_max > 1.0:
        raise ValueError("e_max must exceed 1")
    flats = tuple(
        float(n * n) for n in range(1, int(math.floor(math.sqrt(e_max))) + 1)
    )
    if alpha == 0.0:
        band = Band(0.0, e_max, 0.0, math.sqrt(e_max), True, False)
        return BandSpectrum(alpha, e_max, (band,), flats)

    k_max = math.ceil(math.sqrt(e_max)) + 1.0
    s_lo = _negative_sweep_limit(alpha) if alpha < 0.0 else _EDGE_OFFSET
    edges = _edge_roots(alpha, s_lo, k_max)
    boundary = sorted(
        set(edges)
        | {float(n) for n in range(1, int(k_max) + 1)}
        | ({0.0} if alpha < 0.0 else set())
    )
    boundary = [s_lo] + boundary + [k_max]

    pieces: list[tuple[float, float]] = []
    for a, b in zip(boundary, boundary[1:]):
        if not a < b:
            continue
        mid = 0.5 * (a + b)
        if mid == 0.0:
            mid = a + 0.25 * (b - a)
        if abs(_halftrace_signed(mid, alpha)) <= 1.0:
            if pieces and pieces[-1][1] == a:
                pieces[-1] = (pieces[-1][0], b)
            else:
                pieces.append((a, b))

    def to_energy(s: float) -> float:
        return math.copysign(s * s, s) if s != 0.0 else 0.0

    bands = tuple(
        Band(to_energy(a), to_energy(b), a, b)
        for a, b in pieces
        if to_energy(a) < e_max
    )
    return BandSpectrum(alpha, e_max, bands, flats)


def lowest_band_threshold(alpha: float) -> float:
    """Bottom of the essential spectrum for an attractive coupling.

    Equals ``-x1**2`` where ``x1`` is the largest root of
    ``|discriminant_negative| = 1``; defined for ``alpha < 0`` only.
    """
    if alpha >= 0.0:
        raise ValueError("threshold below zero exists only for alpha < 0")
    s_lo = _negative_sweep_limit(alpha)
    edges = _edge_roots(alpha, s_lo, -1e-9)
    if not edges:
        raise RuntimeError("no negative-branch band edge located")
    return -edges[0] * edges[0] if edges[0] < 0 else float("nan")
