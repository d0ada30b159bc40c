"""Geometry of the stability region: boundary curve, cusps, membership.

The boundary is the closed curve z(t) = sum_j p_j e^{i(1-j)t}.  It has
gcd-many cusps (gcd over the support indices j >= 2) located at roots of
unity, and encloses a radially convex region.  Membership is decided from
the characteristic-polynomial roots: all moduli < 1 inside, exactly one
modulus > 1 outside.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

import numpy as np

from .polyfam import char_roots
from .prob import ProbVector

DEFAULT_TOL = 1e-8


class Membership(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


@dataclass(frozen=True)
class BoundaryCurve:
    prob: ProbVector
    t: np.ndarray
    z: np.ndarray


@dataclass(frozen=True)
class CuspSet:
    count: int
    positions: np.ndarray  # the count-th roots of unity
    gcd_support: tuple


def curve_points(p: ProbVector, t) -> np.ndarray:
    """Vectorized boundary parameterization z(t)."""
    t = np.asarray(t, dtype=float)
    z = np.zeros(t.shape, dtype=complex)
    for j, pj in enumerate(p.entries):
        if pj:
            z += pj * np.exp(1j * (1 - j) * t)
    return z


def curve_derivative(p: ProbVector, t) -> np.ndarray:
    """z'(t); vanishes exactly at the cusps."""
    t = np.asarray(t, dtype=float)
    dz = np.zeros(t.shape, dtype=complex)
    for j, pj in enumerate(p.entries):
        if pj:
            dz += pj * 1j * (1 - j) * np.exp(1j * (1 - j) * t)
    return dz


def boundary(p: ProbVector, samples: int) -> BoundaryCurve:
    """Uniform t grid over [0, 2pi], endpoints included."""
    if samples < 16:
        raise ValueError(f"samples must be >= 16, got {samples}")
    t = np.linspace(0.0, 2.0 * np.pi, samples)
    return BoundaryCurve(prob=p, t=t, z=curve_points(p, t))


def cusps(p: ProbVector) -> CuspSet:
    """Cusp set via the gcd rule over the support indices j >= 2.

    The support is never empty: canonicalization guarantees p_m > 0.
    """
    support = p.support()
    n = 0
    for j in support:
        n = gcd(n, j)
    positions = np.exp(2j * np.pi * np.arange(n) / n)
    return CuspSet(count=n, positions=positions, gcd_support=tuple(support))


def contains(p: ProbVector, w: complex, tol: float = DEFAULT_TOL) -> Membership:
    """Classify w against the stability region by root moduli.

    Degenerate regions (e.g. the Chebyshev segment [-1, 1]) have empty
    interior; every point of the segment classifies as BOUNDARY.
    """
    mods = np.abs(char_roots(p, w).roots)
    if mods.max() < 1.0 - tol:
        return Membership.INTERIOR
    if mods.max() > 1.0 + tol and int((mods > 1.0).sum()) == 1:
        return Membership.EXTERIOR
    return Membership.BOUNDARY


def scaled_contains(p: ProbVector, lambda_star: float, w: complex,
                    tol: float = DEFAULT_TOL) -> Membership:
    """Membership of w in the dilated region lambda_star * Gamma."""
    if lambda_star <= 0:
        raise ValueError(f"lambda_star must be > 0, got {lambda_star}")
    return contains(p, complex(w) / lambda_star, tol=tol)
