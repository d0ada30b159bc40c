"""Verification calculators: growth curves, boundedness scans, ellipse bounds.

These back the numerical cross-checks: measured |P_n(1+eps)| against the
predicted rate, the empirical boundedness constant on the region boundary,
and the ellipse min-max bounds showing that smooth (cusp-free) regions cap
growth at (1 + O(eps))^n instead of (1 + O(sqrt(eps)))^n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GammaInside, Overflow
from .polyfam import eval_family, growth_lower_bound
from .prob import ProbVector
from .region import curve_points


@dataclass(frozen=True)
class GrowthReport:
    prob: ProbVector
    eps: float
    n: np.ndarray
    value: np.ndarray          # |P_n(1 + eps)|
    predicted: np.ndarray      # rate factor ** n
    truncated: bool            # True if the scan hit the overflow guard


def empirical_growth(p: ProbVector, eps: float, n_max: int) -> GrowthReport:
    """|P_n(1+eps)| for n = 0..n_max next to the predicted rate factor.

    Truncates at the last finite n if the overflow guard trips.
    """
    if eps <= 0:
        raise DomainError(f"eps must be > 0, got {eps}")
    if n_max < 10:
        raise DomainError(f"n_max must be >= 10, got {n_max}")
    truncated = False
    try:
        values = np.abs(eval_family(p, 1.0 + eps, n_max).values)
        top = n_max
    except Overflow:
        # bisect down to the largest n that stays finite
        lo, hi = 0, n_max
        while lo < hi:
            mid = (lo + hi + 1) // 2
            try:
                eval_family(p, 1.0 + eps, mid)
                lo = mid
            except Overflow:
                hi = mid - 1
        top = lo
        values = np.abs(eval_family(p, 1.0 + eps, top).values)
        truncated = True
    n = np.arange(top + 1)
    rate = growth_lower_bound(p, eps, 1)
    predicted = rate**n
    return GrowthReport(prob=p, eps=eps, n=n, value=values, predicted=predicted,
                        truncated=truncated)


def boundedness_scan(p: ProbVector, n_max: int, boundary_samples: int) -> float:
    """Empirical boundedness constant: max |P_n(z)| over the sampled boundary.

    Only the boundary is sampled; by the maximum modulus principle interior
    points cannot exceed the boundary maximum.
    """
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    if boundary_samples < 64:
        raise DomainError(f"boundary_samples must be >= 64, got {boundary_samples}")
    t = np.linspace(0.0, 2.0 * np.pi, boundary_samples, endpoint=False)
    z = curve_points(p, t)
    m = p.order
    pe = p.entries
    # run the recurrence vectorized over all boundary points at once
    window = [z**k for k in range(m)]
    best = max(float(np.abs(w).max()) for w in window)
    for _ in range(m - 1, n_max):
        nxt = z / pe[0] * window[-1]
        for j in range(2, m + 1):
            nxt = nxt - pe[j] / pe[0] * window[m - j]
        window.append(nxt)
        window.pop(0)
        best = max(best, float(np.abs(nxt).max()))
    return best


def ellipse_upper_bound(delta: float, eps: float, n: int) -> float:
    """Growth cap (1 + 3 eps / (2 delta))^n for polynomials bounded on the
    ellipse with vertices +-1 and co-vertices +-i delta."""
    if not 0 < delta < 1:
        raise DomainError(f"delta must be in (0, 1), got {delta}")
    if not 0 < eps < 1:
        raise DomainError(f"eps must be in (0, 1), got {eps}")
    return float((1.0 + 1.5 * eps / delta) ** n)


def delta_from_rho(rho: float) -> float:
    """Co-vertex delta = (rho^2 - 1)/(rho^2 + 1) of the normalized ellipse."""
    if rho <= 1:
        raise DomainError(f"rho must be > 1, got {rho}")
    return float((rho**2 - 1.0) / (rho**2 + 1.0))


def rho_from_delta(delta: float) -> float:
    """Inverse of delta_from_rho; round-trips to 1e-12."""
    if not 0 < delta < 1:
        raise DomainError(f"delta must be in (0, 1), got {delta}")
    return float(np.sqrt((1.0 + delta) / (1.0 - delta)))


def _inverse_joukowski(z: complex) -> complex:
    """Larger-magnitude root of r^2 - 2 r z + 1 = 0."""
    z = complex(z)
    disc = np.sqrt(complex(z * z - 1.0))
    r1, r2 = z + disc, z - disc
    return r1 if abs(r1) >= abs(r2) else r2


def ellipse_minmax_bounds(rho: float, gamma: complex, n: int):
    """Sandwich bounds on max |P(gamma)| over degree-n polynomials bounded
    by 1 on the normalized ellipse (vertices +-1, co-vertices +-i delta(rho)).

    Returns (lower, upper) with
    lower = |s^n + s^{-n}| / (rho^n + rho^{-n}) and upper = |s|^n / rho^n,
    where s maps gamma back through the Joukowski transform.
    """
    if rho <= 1:
        raise DomainError(f"rho must be > 1, got {rho}")
    s = _inverse_joukowski(complex(gamma) * (rho + 1.0 / rho) / 2.0)
    if abs(s) <= rho:
        raise GammaInside(f"gamma={gamma} is enclosed by the ellipse (|s|={abs(s):g} <= rho)")
    lower = float(abs(s**n + s ** (-n)) / (rho**n + rho ** (-n)))
    upper = float(abs(s) ** n / rho**n)
    return lower, upper


def disk_bound(gamma: complex, rho: float, n: int) -> float:
    """Optimal disk min-max value |rho/gamma|^n, attained by (z/gamma)^n."""
    if rho <= 0:
        raise DomainError(f"rho must be > 0, got {rho}")
    if abs(gamma) < rho:
        raise DomainError(f"need |gamma| >= rho, got |{gamma}| < {rho}")
    return float(abs(rho / gamma) ** n)
