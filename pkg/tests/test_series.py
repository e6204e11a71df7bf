"""x-adic expansion of B * A^(-1)."""

import pytest

from polynull import (
    Poly,
    PolyMatrix,
    SingularAtZero,
    left_quotient_series,
    pm_mul_mod,
    pm_random,
    series_inverse,
)
from polynull.polymat import const_rank

from conftest import make_rng, poly


def invertible_at_zero(field, n, d, rng):
    while True:
        a = pm_random(n, n, d, field, rng)
        if const_rank(a.eval(0), field.p) == n:
            return a


class TestSeriesInverse:
    def test_geometric_series(self, field):
        a = PolyMatrix.from_polys([[poly(field, 1, field.p - 1)]])
        inv = series_inverse(a, 3)
        assert inv.matrix.poly(0, 0) == poly(field, 1, 1, 1)

    def test_constant_matrix_every_order(self, field):
        rng = make_rng(1)
        a = invertible_at_zero(field, 3, 0, rng)
        for eta in (1, 2, 7):
            inv = series_inverse(a, eta)
            assert inv.matrix.degree <= 0
            assert pm_mul_mod(a, inv.matrix, eta) == PolyMatrix.identity(field, 3)

    def test_residual_is_zero_both_sides(self, field):
        rng = make_rng(2)
        a = invertible_at_zero(field, 5, 3, rng)
        inv = series_inverse(a, 20)
        ident = PolyMatrix.identity(field, 5)
        assert pm_mul_mod(a, inv.matrix, 20) == ident
        assert pm_mul_mod(inv.matrix, a, 20) == ident

    def test_singular_at_zero(self, field):
        a = PolyMatrix.from_polys([[Poly.x(field)]])
        with pytest.raises(SingularAtZero):
            series_inverse(a, 4)

    def test_truncation_under_order(self, field):
        rng = make_rng(3)
        a = invertible_at_zero(field, 4, 2, rng)
        inv = series_inverse(a, 12)
        assert inv.matrix.degree < 12


class TestLeftQuotient:
    def test_self_quotient_is_identity(self, field):
        rng = make_rng(4)
        a = invertible_at_zero(field, 4, 3, rng)
        h = left_quotient_series(a, a, 9)
        assert h.matrix == PolyMatrix.identity(field, 4)

    def test_zero_numerator(self, field):
        rng = make_rng(5)
        a = invertible_at_zero(field, 3, 2, rng)
        h = left_quotient_series(PolyMatrix.zeros(field, 2, 3), a, 8)
        assert h.matrix.is_zero()

    def test_hand_series_division(self, field):
        # x / (1 - x) mod x^4 = x + x^2 + x^3
        b = PolyMatrix.from_polys([[Poly.x(field)]])
        a = PolyMatrix.from_polys([[poly(field, 1, field.p - 1)]])
        h = left_quotient_series(b, a, 4)
        assert h.matrix.poly(0, 0) == poly(field, 0, 1, 1, 1)

    def test_exact_residual(self, field):
        rng = make_rng(6)
        for _ in range(5):
            n = rng.randrange(1, 5)
            rows = rng.randrange(1, 4)
            a = invertible_at_zero(field, n, rng.randrange(4), rng)
            b = pm_random(rows, n, rng.randrange(4), field, rng)
            eta = rng.randrange(1, 25)
            h = left_quotient_series(b, a, eta)
            assert pm_mul_mod(h.matrix, a, eta) == b.truncate(eta)

    def test_order_monotonicity(self, field):
        rng = make_rng(7)
        a = invertible_at_zero(field, 3, 3, rng)
        b = pm_random(2, 3, 3, field, rng)
        long = left_quotient_series(b, a, 24)
        for eta in (1, 5, 13):
            assert long.truncate(eta).matrix == left_quotient_series(b, a, eta).matrix
