"""Boundary curve, cusp census, and membership classification."""

import numpy as np
import pytest

from specmom.polyfam import char_poly
from specmom.prob import hypocycloid, validate
from specmom.region import (
    Membership,
    boundary,
    contains,
    curve_derivative,
    curve_points,
    cusps,
    scaled_contains,
)

# the six published example curves and their cusp counts
CURVE_EXAMPLES = [
    (validate([7 / 12, 0, 3 / 12, 2 / 12]), 1),
    (validate([2 / 3, 0, 0, 1 / 3]), 3),
    (validate([5 / 8, 0, 2 / 8, 0, 1 / 8]), 2),
    (validate([5 / 6, 0, 0, 0, 0, 0, 1 / 6]), 6),
    (validate([9 / 12, 0, 0, 1 / 6, 0, 0, 1 / 12]), 3),
    (hypocycloid(4), 4),
]


class TestCurve:
    def test_point_at_zero_is_one(self, mixed23):
        assert curve_points(mixed23, 0.0) == pytest.approx(1.0, abs=1e-14)

    def test_closed_curve(self, deltoid):
        b = boundary(deltoid, 64)
        assert b.z[0] == pytest.approx(b.z[-1], abs=1e-12)

    def test_derivative_finite_difference(self, mixed24):
        t = np.linspace(0.3, 5.9, 7)
        h = 1e-6
        fd = (curve_points(mixed24, t + h) - curve_points(mixed24, t - h)) / (2 * h)
        assert np.allclose(curve_derivative(mixed24, t), fd, atol=1e-8)

    def test_min_samples(self, deltoid):
        with pytest.raises(ValueError):
            boundary(deltoid, 8)

    def test_chebyshev_segment(self, chebyshev):
        # the m=2 curve degenerates to the real segment [-1, 1]
        b = boundary(chebyshev, 256)
        assert np.max(np.abs(b.z.imag)) < 1e-12
        assert np.max(np.abs(b.z.real)) <= 1.0 + 1e-12


class TestCusps:
    @pytest.mark.parametrize("p,count", CURVE_EXAMPLES,
                             ids=[str(i) for i in range(len(CURVE_EXAMPLES))])
    def test_counts(self, p, count):
        assert cusps(p).count == count

    def test_positions_are_roots_of_unity(self, deltoid):
        pos = cusps(deltoid).positions
        assert np.allclose(pos**3, 1.0, atol=1e-12)

    @pytest.mark.parametrize("p,count", CURVE_EXAMPLES,
                             ids=[str(i) for i in range(len(CURVE_EXAMPLES))])
    def test_derivative_vanishes_at_cusps(self, p, count):
        t0 = 2 * np.pi * np.arange(count) / count
        assert np.max(np.abs(curve_derivative(p, t0))) < 1e-10

    def test_derivative_nonzero_off_cusps(self, deltoid):
        n = cusps(deltoid).count
        t = np.linspace(0, 2 * np.pi, 512, endpoint=False)
        t0 = 2 * np.pi * np.arange(n) / n
        off = t[np.min(np.abs(t[:, None] - t0[None, :]), axis=1) > 0.05]
        assert np.min(np.abs(curve_derivative(deltoid, off))) > 1e-6


class TestMembership:
    def test_origin_interior(self, deltoid, astroid, mixed23):
        for p in (deltoid, astroid, mixed23):
            assert contains(p, 0.0) is Membership.INTERIOR

    def test_one_is_boundary(self, deltoid):
        assert contains(deltoid, 1.0) is Membership.BOUNDARY

    def test_far_point_exterior(self, deltoid):
        assert contains(deltoid, 2.0) is Membership.EXTERIOR

    def test_toy_subdominant_mode_placement(self):
        # i/2 sits outside the 3-cusped region but inside the 4- and 5-cusped
        assert contains(hypocycloid(3), 0.5j) is Membership.EXTERIOR
        assert contains(hypocycloid(4), 0.5j) is Membership.INTERIOR
        assert contains(hypocycloid(5), 0.5j) is Membership.INTERIOR

    def test_mixed23_excludes_toy_mode(self, mixed23):
        assert contains(mixed23, 0.5j) is Membership.EXTERIOR

    def test_matches_root_modulus_oracle(self, mixed24):
        rng = np.random.default_rng(7)
        for _ in range(40):
            w = complex(*rng.uniform(-1.3, 1.3, 2))
            mods = np.abs(np.roots(char_poly(mixed24, w).coefficients))
            got = contains(mixed24, w)
            if mods.max() < 1.0 - 1e-8:
                assert got is Membership.INTERIOR
            elif mods.max() > 1.0 + 1e-8 and (mods > 1.0).sum() == 1:
                assert got is Membership.EXTERIOR
            else:
                assert got is Membership.BOUNDARY

    def test_chebyshev_degenerate_region(self, chebyshev):
        for x in (-1.0, -0.4, 0.0, 0.8, 1.0):
            assert contains(chebyshev, x) is Membership.BOUNDARY
        assert contains(chebyshev, 0.3 + 0.2j) is Membership.EXTERIOR

    def test_boundary_samples_classify_as_boundary(self, mixed23):
        for t in np.linspace(0.1, 6.1, 9):
            w = complex(curve_points(mixed23, t))
            assert contains(mixed23, w, tol=1e-6) is Membership.BOUNDARY

    def test_scaled(self, deltoid):
        assert scaled_contains(deltoid, 2.0, 1.5) is Membership.INTERIOR
        assert scaled_contains(deltoid, 2.0, 2.0) is Membership.BOUNDARY
        assert scaled_contains(deltoid, 0.5, 1.0) is Membership.EXTERIOR

    def test_scaled_rejects_bad_lambda(self, deltoid):
        with pytest.raises(ValueError):
            scaled_contains(deltoid, -1.0, 0.5)
