"""Exact dynamics of the integer martingale behind degree-sqrt(n) approximation.

The walk Y_n starts at 0 and moves by three rules: near the origin
(state k in {0, ..., m-2}) it steps to k+1 with probability (2k+1)/(2k+2)
and to -(k+1) with probability 1/(2k+2); in the bulk (k >= m-1) it steps by
1-j with probability p_j; negative states mirror the positive rule.  The
construction makes E P_{Y_n}(z) = z^n, so the distribution of |Y_n| gives
coefficients alpha_k with sum_k alpha_k P_k(z) = z^n, and Azuma's
inequality bounds the mass beyond t*sqrt(n).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polyfam import eval_family
from .prob import ProbVector


@dataclass(frozen=True)
class WalkDistribution:
    prob: ProbVector
    steps: int
    mass: np.ndarray  # index i holds P(Y_n = i - steps), states -n..n

    def at(self, state: int) -> float:
        if abs(state) > self.steps:
            return 0.0
        return float(self.mass[state + self.steps])


@dataclass(frozen=True)
class AlphaCoeffs:
    steps: int
    alpha: np.ndarray  # alpha_k = P(|Y_n| = k), k = 0..n


def _step(p: ProbVector, mass: np.ndarray, n: int) -> np.ndarray:
    """One exact transition of the dense state vector over -n..n.

    Works on arrays padded by m on each side so the shifted slice writes
    stay in bounds; the support never actually leaves -n..n within n steps.
    """
    m = p.order
    pe = p.entries
    pad = m
    size = 2 * n + 1
    work = np.zeros(size + 2 * pad)
    center = n + pad

    # bulk, positive states k >= m-1: k -> k+1-j with probability p_j
    lo = center + (m - 1)
    src = mass[n + (m - 1) :]
    if src.size:
        for j, pj in enumerate(pe):
            if pj:
                shift = 1 - j
                work[lo + shift : lo + shift + src.size] += pj * src

    # bulk, negative states k <= -(m-1), mirrored
    hi = n - (m - 1)
    if hi >= 0:
        src = mass[: hi + 1]
        for j, pj in enumerate(pe):
            if pj:
                shift = j - 1
                work[pad + shift : pad + shift + src.size] += pj * src

    # near-origin states |k| <= m-2 (Case 1 and its mirror); states past n
    # carry no mass and stay out of the dense array's index range
    for k in range(0, min(m - 1, n + 1)):
        up = (2 * k + 1) / (2 * k + 2)
        down = 1 / (2 * k + 2)
        mk = mass[n + k]
        if mk:
            work[center + k + 1] += up * mk
            work[center - (k + 1)] += down * mk
        if k > 0:
            mneg = mass[n - k]
            if mneg:
                work[center - (k + 1)] += up * mneg
                work[center + k + 1] += down * mneg
    return work[pad : pad + size]


def walk_distribution(p: ProbVector, n: int) -> WalkDistribution:
    """Exact probability mass of Y_n over the integer states -n..n."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    mass = np.zeros(2 * n + 1)
    mass[n] = 1.0
    for _ in range(n):
        mass = _step(p, mass, n)
    return WalkDistribution(prob=p, steps=n, mass=mass)


def alpha_coeffs(p: ProbVector, n: int) -> AlphaCoeffs:
    """alpha_k = P(|Y_n| = k): folded distribution of the walk at step n."""
    dist = walk_distribution(p, n)
    alpha = np.empty(n + 1)
    alpha[0] = dist.mass[n]
    for k in range(1, n + 1):
        alpha[k] = dist.mass[n + k] + dist.mass[n - k]
    return AlphaCoeffs(steps=n, alpha=alpha)


def approximate_power(p: ProbVector, z: complex, n: int, t: float):
    """Degree-floor(t*sqrt(n)) approximation of z^n.

    Returns (approx, degree, tail_mass) where
    approx = sum_{k<=degree} alpha_k P_k(z) and tail_mass is the walk mass
    beyond the truncation degree.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if t <= 0:
        raise ValueError(f"t must be > 0, got {t}")
    degree = min(int(np.floor(t * np.sqrt(n))), n)
    alpha = alpha_coeffs(p, n).alpha
    fam = eval_family(p, z, degree)
    approx = complex(np.sum(alpha[: degree + 1] * fam.values))
    tail_mass = float(alpha[degree + 1 :].sum())
    return approx, degree, tail_mass


def azuma_tail(m: int, t: float) -> float:
    """Azuma bound 2 exp(-t^2 / (2 (2m-1)^2)) on the truncation tail mass."""
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    if t <= 0:
        raise ValueError(f"t must be > 0, got {t}")
    return float(2.0 * np.exp(-(t**2) / (2.0 * (2 * m - 1) ** 2)))
