"""Probability vectors defining the polynomial families.

A vector p = (p0, ..., pm) must have non-negative entries summing to one,
p0 > 0, p1 == 0 exactly, and satisfy the mean-zero condition
sum_j (1 - j) p_j = 0.  Its walk variance sigma^2 = sum_j (1 - j)^2 p_j
controls both the stability-region size and the growth rate past 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    MeanNotZero,
    NegativeEntry,
    OrderTooSmall,
    P0Zero,
    P1NonZero,
    SumNotOne,
    WeightsInvalid,
)

TOL = 1e-12


@dataclass(frozen=True)
class ProbVector:
    """Validated probability vector; immutable after construction."""

    entries: tuple
    variance: float = field(compare=False)

    @property
    def order(self) -> int:
        return len(self.entries) - 1

    @property
    def p0(self) -> float:
        return self.entries[0]

    @property
    def sigma(self) -> float:
        return float(np.sqrt(self.variance))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=float)

    def support(self) -> list[int]:
        """Indices j >= 2 with p_j > 0 (drives the cusp count)."""
        return [j for j in range(2, self.order + 1) if self.entries[j] > 0]

    def __repr__(self):
        body = ", ".join(f"{e:.12g}" for e in self.entries)
        return f"ProbVector(({body}), sigma2={self.variance:.12g})"


def validate(raw) -> ProbVector:
    """Validate and canonicalize a raw probability array.

    Trailing zeros are trimmed so the last entry is positive, which fixes a
    canonical order m.  Raises a named error for each violated invariant.
    """
    p = np.asarray(raw, dtype=float)
    if p.ndim != 1 or p.size < 3:
        raise OrderTooSmall(f"need at least 3 entries (p0, p1, p2), got {p.size}")
    if np.any(p < 0):
        raise NegativeEntry(f"negative entry at index {int(np.argmin(p))}")
    total = float(p.sum())
    if abs(total - 1.0) > TOL:
        raise SumNotOne(f"entries sum to {total!r}, expected 1 within {TOL}")
    if p[0] <= 0:
        raise P0Zero("p0 must be strictly positive")
    if p[1] != 0.0:
        raise P1NonZero(f"p1 must be exactly 0, got {p[1]!r}")
    j = np.arange(p.size)
    mean = float(((1 - j) * p).sum())
    if abs(mean) > TOL:
        raise MeanNotZero(f"sum (1-j) p_j = {mean!r}, expected 0 within {TOL}")
    # canonical order: trim trailing zeros, keeping at least (p0, p1, p2)
    last = int(np.max(np.nonzero(p)))
    if last < 2:
        # p = (1, 0, 0, ...) fails mean-zero above, so this is unreachable;
        # guard kept for clarity
        raise OrderTooSmall("no entry with index >= 2 is positive")
    p = p[: last + 1]
    j = np.arange(p.size)
    variance = float(((1 - j) ** 2 * p).sum())
    return ProbVector(entries=tuple(float(x) for x in p), variance=variance)


def hypocycloid(m: int) -> ProbVector:
    """Two-point vector p0 = (m-1)/m, pm = 1/m; sigma^2 = m - 1."""
    if m < 2:
        raise OrderTooSmall(f"hypocycloid order must be >= 2, got {m}")
    p = np.zeros(m + 1)
    p[0] = (m - 1) / m
    p[m] = 1 / m
    return validate(p)


def from_tail(tail) -> ProbVector:
    """Build a valid vector from non-negative weights for indices j >= 2.

    Setting p0 = sum_j (j-1) q_j and normalizing makes the mean-zero
    condition hold by construction, so any non-negative, not-all-zero tail
    yields a valid vector.
    """
    q = np.asarray(tail, dtype=float)
    if q.ndim != 1 or q.size < 1 or np.any(q < 0) or q.sum() <= 0:
        raise WeightsInvalid("tail must be non-negative with positive sum")
    j = np.arange(2, q.size + 2)
    p0 = float(((j - 1) * q).sum())
    p = np.concatenate(([p0, 0.0], q))
    return validate(p / p.sum())


def mix(weights, parts) -> ProbVector:
    """Entrywise convex combination of valid vectors.

    Convexity preserves every invariant, so the result is always valid.
    """
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or len(parts) != w.size or w.size == 0:
        raise WeightsInvalid("weights and parts must be non-empty and match in length")
    if np.any(w < 0) or abs(w.sum() - 1.0) > TOL:
        raise WeightsInvalid(f"weights must be non-negative and sum to 1, got {w!r}")
    width = max(part.order for part in parts) + 1
    acc = np.zeros(width)
    for wi, part in zip(w, parts):
        acc[: part.order + 1] += wi * part.as_array()
    return validate(acc)


def parse_prob(text: str) -> ProbVector:
    """Parse a CLI probability spec like '7/12,0,1/4,1/6'.

    Rationals are parsed exactly via Fraction before conversion to float,
    so entries like 1/3 pass the 1e-12 sum check.
    """
    try:
        values = [Fraction(tok.strip()) for tok in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise WeightsInvalid(f"cannot parse probability vector {text!r}: {exc}") from exc
    return validate([float(v) for v in values])
