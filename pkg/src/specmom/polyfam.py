"""Evaluation of the recurrence-defined polynomial family and its roots.

For a probability vector p the family is P_k(z) = z^k for k < m and

    P_{k+1}(z) = (z/p0) P_k(z) - sum_{j=2}^m (p_j/p0) P_{k+1-j}(z).

The degree-m characteristic polynomial of this difference equation,

    Q_z(r) = r^m - (z/p0) r^{m-1} + sum_{j=2}^m (p_j/p0) r^{m-j},

governs growth at a fixed z: all roots inside the unit circle iff z lies in
the interior of the stability region.  Solving Q_z(r) = 0 for z gives the
conformal map psi(r) = sum_j p_j r^{1-j} from the exterior of the unit disk
onto the exterior of the region.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, Overflow, ZeroArgument
from .prob import ProbVector

OVERFLOW_LIMIT = 1e300


@dataclass(frozen=True)
class FamilyEval:
    prob: ProbVector
    point: complex
    values: np.ndarray  # P_0(z) ... P_N(z)


@dataclass(frozen=True)
class CharPoly:
    prob: ProbVector
    point: complex
    coefficients: np.ndarray  # monic, highest degree first


@dataclass(frozen=True)
class RootSet:
    roots: np.ndarray
    residual: float


def eval_family(p: ProbVector, z: complex, n: int) -> FamilyEval:
    """Evaluate P_0(z) ... P_n(z) by running the recurrence.

    O(n*m) time; raises Overflow once any |P_k| exceeds 1e300, which for
    large k signals that z is far outside the stability region.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    z = complex(z)
    m = p.order
    pe = p.entries
    values = np.empty(n + 1, dtype=complex)
    for k in range(min(m, n + 1)):
        values[k] = z**k
    for k in range(m - 1, n):
        acc = z / pe[0] * values[k]
        for j in range(2, m + 1):
            acc -= pe[j] / pe[0] * values[k + 1 - j]
        if abs(acc) > OVERFLOW_LIMIT:
            raise Overflow(f"|P_{k + 1}({z})| exceeds {OVERFLOW_LIMIT:g}")
        values[k + 1] = acc
    return FamilyEval(prob=p, point=z, values=values)


def eval_monic(p: ProbVector, lambda_star: float, z: complex, n: int) -> FamilyEval:
    """Evaluate the monic rescaling Pt_k(z) = (lambda_star*p0)^k P_k(z/lambda_star).

    Runs the monic recurrence Pt_{k+1} = z Pt_k - sum_j beta_{j-1} Pt_{k+1-j}
    with beta_j = p_{j+1} p0^j lambda_star^{j+1}; initial values p0^k z^k.
    """
    if lambda_star <= 0:
        raise ValueError(f"lambda_star must be > 0, got {lambda_star}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    z = complex(z)
    m = p.order
    pe = p.entries
    beta = [pe[j] * pe[0] ** (j - 1) * lambda_star**j for j in range(m + 1)]
    values = np.empty(n + 1, dtype=complex)
    for k in range(min(m, n + 1)):
        values[k] = pe[0] ** k * z**k
    for k in range(m - 1, n):
        acc = z * values[k]
        for j in range(2, m + 1):
            acc -= beta[j] * values[k + 1 - j]
        if abs(acc) > OVERFLOW_LIMIT:
            raise Overflow(f"|Pt_{k + 1}({z})| exceeds {OVERFLOW_LIMIT:g}")
        values[k + 1] = acc
    return FamilyEval(prob=p, point=z, values=values)


def char_poly(p: ProbVector, z: complex) -> CharPoly:
    """Monic degree-m coefficient array of Q_z(r), highest degree first."""
    z = complex(z)
    m = p.order
    pe = p.entries
    coeffs = np.zeros(m + 1, dtype=complex)
    coeffs[0] = 1.0
    coeffs[1] = -z / pe[0]
    for j in range(2, m + 1):
        coeffs[j] = pe[j] / pe[0]
    return CharPoly(prob=p, point=z, coefficients=coeffs)


def _poly_val(coeffs: np.ndarray, r):
    """Horner evaluation; coeffs highest degree first.  Works on arrays."""
    acc = np.zeros_like(np.asarray(r, dtype=complex)) + coeffs[0]
    for c in coeffs[1:]:
        acc = acc * r + c
    return acc


def _poly_der(coeffs: np.ndarray) -> np.ndarray:
    n = len(coeffs) - 1
    return coeffs[:-1] * np.arange(n, 0, -1)


def char_roots(p: ProbVector, z: complex, max_sweeps: int = 500,
               residual_tol: float = 1e-9) -> RootSet:
    """All m roots of Q_z via Durand-Kerner with a Newton polish.

    Initial guesses sit on a slightly enlarged unit circle with an
    irrational phase offset so they never coincide with the target roots'
    symmetry.  Raises NoConvergence if the residual target is missed.
    """
    cp = char_poly(p, z)
    coeffs = cp.coefficients
    m = p.order
    roots = 1.1 * np.exp(1j * (2 * np.pi * np.arange(m) / m + 0.42))
    for _ in range(max_sweeps):
        vals = _poly_val(coeffs, roots)
        diff = roots[:, None] - roots[None, :]
        np.fill_diagonal(diff, 1.0)
        denom = diff.prod(axis=1)
        step = vals / denom
        roots = roots - step
        if np.max(np.abs(step)) < 1e-14:
            break
    # Newton polish; for (near-)multiple roots at cusps this converges
    # linearly but still reaches the residual target comfortably
    der = _poly_der(coeffs)
    for _ in range(50):
        vals = _poly_val(coeffs, roots)
        dvals = _poly_val(der, roots)
        safe = np.abs(dvals) > 1e-300
        roots = np.where(safe, roots - vals / np.where(safe, dvals, 1.0), roots)
        if np.max(np.abs(vals)) < 1e-15:
            break
    residual = float(np.max(np.abs(_poly_val(coeffs, roots))))
    if residual > residual_tol:
        raise NoConvergence(
            f"root residual {residual:g} exceeds {residual_tol:g} at z={z}",
            residual=residual,
        )
    return RootSet(roots=roots, residual=residual)


def dominant_root(p: ProbVector, z: complex) -> complex:
    """Root of maximal modulus; ties go to larger real, then imaginary part."""
    roots = char_roots(p, z).roots
    order = np.lexsort((roots.imag, roots.real, np.abs(roots)))
    return complex(roots[order[-1]])


def psi(p: ProbVector, r: complex) -> complex:
    """Conformal map psi(r) = sum_j p_j r^{1-j}; r = e^{it} traces the boundary."""
    r = complex(r)
    if r == 0:
        raise ZeroArgument("psi is undefined at r = 0")
    return complex(sum(pj * r ** (1 - j) for j, pj in enumerate(p.entries)))


def growth_lower_bound(p: ProbVector, eps: float, n: int) -> float:
    """Rate factor (1 + sigma^{-1} sqrt(2 eps))^n of the growth bound past 1.

    The multiplicative constant of the bound is existential and excluded;
    callers compare consecutive ratios, not absolute values.
    """
    if eps <= 0:
        raise ValueError(f"eps must be > 0, got {eps}")
    return float((1.0 + np.sqrt(2.0 * eps) / p.sigma) ** n)
