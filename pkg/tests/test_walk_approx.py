"""Exact walk distribution, folded coefficients, and truncated approximation."""

from collections import defaultdict
from math import comb

import numpy as np
import pytest

from specmom.polyfam import eval_family
from specmom.prob import hypocycloid, validate
from specmom.walk_approx import (
    alpha_coeffs,
    approximate_power,
    azuma_tail,
    walk_distribution,
)


def oracle_distribution(p, n):
    """Independent dict-based enumeration of the walk's transition rules."""
    m = p.order
    pe = p.entries
    dist = {0: 1.0}
    for _ in range(n):
        nxt = defaultdict(float)
        for k, mass in dist.items():
            a = abs(k)
            if a <= m - 2:
                up = (2 * a + 1) / (2 * a + 2)
                down = 1 / (2 * a + 2)
                if k >= 0:
                    nxt[a + 1] += up * mass
                    nxt[-(a + 1)] += down * mass
                else:
                    nxt[-(a + 1)] += up * mass
                    nxt[a + 1] += down * mass
            else:
                for j, pj in enumerate(pe):
                    if pj:
                        step = 1 - j if k >= 0 else j - 1
                        nxt[k + step] += pj * mass
        dist = dict(nxt)
    return dist


PROBS = [hypocycloid(2), hypocycloid(3), hypocycloid(5),
         validate([7 / 12, 0, 1 / 4, 1 / 6])]


class TestWalkDistribution:
    @pytest.mark.parametrize("p", PROBS, ids=["cheb", "deltoid", "m5", "23"])
    @pytest.mark.parametrize("n", [0, 1, 2, 3, 7, 12])
    def test_matches_enumeration_oracle(self, p, n):
        dist = walk_distribution(p, n)
        oracle = oracle_distribution(p, n)
        for state in range(-n, n + 1):
            assert dist.at(state) == pytest.approx(oracle.get(state, 0.0),
                                                   abs=1e-14)

    def test_total_mass(self, mixed24):
        dist = walk_distribution(mixed24, 30)
        assert dist.mass.sum() == pytest.approx(1.0, abs=1e-12)

    def test_mirror_symmetry(self, mixed23):
        dist = walk_distribution(mixed23, 15)
        for k in range(1, 16):
            assert dist.at(k) == pytest.approx(dist.at(-k), abs=1e-14)

    def test_out_of_range_state_is_zero(self, deltoid):
        assert walk_distribution(deltoid, 4).at(9) == 0.0

    def test_chebyshev_is_simple_walk(self, chebyshev):
        # for m=2 the walk is the simple random walk; binomial closed form
        n = 16
        dist = walk_distribution(chebyshev, n)
        for k in range(-n, n + 1):
            expected = comb(n, (n + k) // 2) / 2**n if (n + k) % 2 == 0 else 0.0
            assert dist.at(k) == pytest.approx(expected, abs=1e-14)


class TestAlpha:
    def test_sums_to_one(self, deltoid):
        assert alpha_coeffs(deltoid, 25).alpha.sum() == pytest.approx(1.0, abs=1e-12)

    def test_folds_distribution(self, mixed23):
        n = 12
        dist = walk_distribution(mixed23, n)
        alpha = alpha_coeffs(mixed23, n).alpha
        assert alpha[0] == pytest.approx(dist.at(0), abs=1e-14)
        for k in range(1, n + 1):
            assert alpha[k] == pytest.approx(dist.at(k) + dist.at(-k), abs=1e-14)

    @pytest.mark.parametrize("p", PROBS, ids=["cheb", "deltoid", "m5", "23"])
    def test_reconstructs_power(self, p):
        # sum_k alpha_k P_k(z) = z^n, the full-sum identity
        rng = np.random.default_rng(3)
        for n in (5, 20, 45):
            alpha = alpha_coeffs(p, n).alpha
            for _ in range(5):
                z = complex(*rng.uniform(-0.4, 0.4, 2))
                total = np.sum(alpha * eval_family(p, z, n).values)
                assert abs(total - z**n) <= 1e-10


class TestApproximatePower:
    def test_degree_formula(self, deltoid):
        _, degree, _ = approximate_power(deltoid, 0.2, 100, 2.5)
        assert degree == int(np.floor(2.5 * np.sqrt(100)))

    def test_degree_capped_at_n(self, deltoid):
        _, degree, _ = approximate_power(deltoid, 0.2, 4, 10.0)
        assert degree == 4

    def test_full_degree_is_exact(self, mixed24):
        z = 0.3 - 0.1j
        approx, _, tail = approximate_power(mixed24, z, 30, 10.0)
        assert abs(approx - z**30) <= 1e-10
        assert tail == 0.0

    @pytest.mark.parametrize("p", PROBS, ids=["cheb", "deltoid", "m5", "23"])
    @pytest.mark.parametrize("t", [1.0, 2.0, 4.0])
    def test_tail_below_azuma(self, p, t):
        for n in (25, 100):
            _, _, tail = approximate_power(p, 0.1, n, t)
            assert tail <= azuma_tail(p.order, t) + 1e-15

    def test_chebyshev_error_bound(self, chebyshev):
        # on the real segment the truncation error obeys 2 exp(-t^2/2)
        for t in (1.0, 2.0, 3.0):
            for x in (-0.8, 0.3, 1.0):
                approx, _, _ = approximate_power(chebyshev, x, 100, t)
                assert abs(approx - x**100) <= 2.0 * np.exp(-t * t / 2.0)

    def test_preconditions(self, deltoid):
        with pytest.raises(ValueError):
            approximate_power(deltoid, 0.2, 0, 1.0)
        with pytest.raises(ValueError):
            approximate_power(deltoid, 0.2, 10, 0.0)


class TestAzuma:
    def test_formula(self):
        assert azuma_tail(2, 3.0) == pytest.approx(2 * np.exp(-9 / 18), abs=1e-15)
        assert azuma_tail(4, 1.0) == pytest.approx(2 * np.exp(-1 / 98), abs=1e-15)

    def test_preconditions(self):
        with pytest.raises(ValueError):
            azuma_tail(1, 1.0)
        with pytest.raises(ValueError):
            azuma_tail(3, -2.0)
