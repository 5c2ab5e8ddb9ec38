"""Exact scalar arithmetic, half-integers, log-gamma, and Pochhammers."""

import random
from fractions import Fraction

import mpmath
import pytest
from gmpy2 import mpq
from mpmath import mp

from ratideal.errors import InvalidParameters, PoleAtEvaluation, PoleOfGamma
from ratideal.scalars import (
    GaussianRational as GR,
    HalfInteger,
    half,
    log_gamma,
    pochhammer,
    pochhammer_pm,
    working_dps,
)


def rand_gr(rng, denom_max=12, mag=9):
    d = rng.randint(1, denom_max)
    return GR(mpq(rng.randint(-mag, mag), d), mpq(rng.randint(-mag, mag), d))


class TestGaussianRational:
    def test_canonical_form(self):
        x = GR(mpq(2, 4), mpq(-6, 9))
        assert x.re == mpq(1, 2) and x.im == mpq(-2, 3)
        assert x.re.denominator > 0 and x.im.denominator > 0

    def test_field_ops_against_fraction_oracle(self):
        rng = random.Random(42)
        for _ in range(200):
            x, y = rand_gr(rng), rand_gr(rng)
            fx = complex(Fraction(int(x.re.numerator), int(x.re.denominator)),
                         Fraction(int(x.im.numerator), int(x.im.denominator)))
            # oracle through Fraction pairs
            a, b = Fraction(str(x.re)), Fraction(str(x.im))
            c, d = Fraction(str(y.re)), Fraction(str(y.im))
            s = x + y
            assert Fraction(str(s.re)) == a + c and Fraction(str(s.im)) == b + d
            p = x * y
            assert Fraction(str(p.re)) == a * c - b * d
            assert Fraction(str(p.im)) == a * d + b * c
            if not y.is_zero():
                q = x / y
                assert q * y == x
            assert fx is not None  # keep the linter honest

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            GR(1, 2) / GR(0, 0)

    def test_mixed_arithmetic(self):
        assert GR(1, 1) + 1 == GR(2, 1)
        assert 2 * GR(mpq(1, 2), 0) == GR(1, 0)
        assert GR(3, 0) - half(1) == GR(mpq(5, 2), 0)
        assert 1 / GR(0, 1) == GR(0, -1)

    def test_parse(self):
        assert GR.parse("1/2+3/4i") == GR(mpq(1, 2), mpq(3, 4))
        assert GR.parse("-3i") == GR(0, -3)
        assert GR.parse("5") == GR(5, 0)
        assert GR.parse("-1/3 - i") == GR(mpq(-1, 3), -1)
        with pytest.raises(InvalidParameters):
            GR.parse("1/0")

    def test_to_mpc(self):
        with working_dps(38):
            v = GR(mpq(1, 3), mpq(-2, 7)).to_mpc()
            assert abs(v.real - mpmath.mpf(1) / 3) < mpmath.mpf(10) ** -37
            assert abs(v.imag + mpmath.mpf(2) / 7) < mpmath.mpf(10) ** -37


class TestHalfInteger:
    def test_from_value(self):
        assert HalfInteger.from_value(3).twice == 6
        assert HalfInteger.from_value(Fraction(1, 2)).twice == 1
        with pytest.raises(InvalidParameters):
            HalfInteger.from_value(Fraction(1, 3))

    def test_parity(self):
        assert HalfInteger(4).is_integer
        assert not HalfInteger(3).is_integer
        assert HalfInteger(3).fractional_part == HalfInteger(1)

    def test_equal_parity_sums_are_integers(self):
        rng = random.Random(7)
        for _ in range(50):
            p = rng.choice((0, 1))
            x = HalfInteger(2 * rng.randint(-5, 5) + p)
            y = HalfInteger(2 * rng.randint(-5, 5) + p)
            assert (x + y).is_integer and (x - y).is_integer

    def test_arithmetic_and_order(self):
        assert half(3) + 1 == half(5)
        assert 2 - half(1) == half(3)
        assert -half(3) == half(-3)
        assert abs(half(-5)) == half(5)
        assert half(1) < half(3) < half(7)
        assert float(half(3)) == 1.5

    def test_as_int_guard(self):
        assert half(4).as_int() == 2
        with pytest.raises(InvalidParameters):
            half(3).as_int()


class TestLogGamma:
    def test_trivial_values(self):
        with working_dps(38):
            assert abs(log_gamma(1)) < mpmath.mpf(10) ** -36
            assert abs(log_gamma(2)) < mpmath.mpf(10) ** -36

    def test_half_integer_point(self):
        # oracle: Gamma(1/2) = sqrt(pi), so log Gamma(1/2) = log(pi)/2
        with working_dps(50):
            expected = mpmath.log(mpmath.pi) / 2
            assert abs(log_gamma(mpmath.mpf("0.5")) - expected) < mpmath.mpf(10) ** -45
            assert abs(float(expected) - 0.5723649429) < 1e-9

    def test_recurrence_property(self):
        rng = random.Random(3)
        with working_dps(38):
            for _ in range(20):
                z = mpmath.mpc(rng.uniform(0.2, 4), rng.uniform(-3, 3))
                lhs = log_gamma(z + 1) - log_gamma(z)
                assert abs(lhs - mpmath.log(z)) < mpmath.mpf(10) ** -30

    def test_poles(self):
        for z in (0, -1, -2, -17):
            with pytest.raises(PoleOfGamma):
                log_gamma(z)
        with pytest.raises(PoleOfGamma):
            log_gamma(mpmath.mpc(-3) + mpmath.mpf(10) ** -30)


class TestPochhammer:
    def test_trivial_shifts(self):
        a = GR(mpq(3, 7), mpq(1, 2))
        assert pochhammer(a, 0) == GR(1, 0)
        assert pochhammer(GR(1, 0), 3) == GR(6, 0)
        assert pochhammer(GR(2, 0), -1) == GR(1, 0)
        assert pochhammer(GR(5, 0), -2) == GR(mpq(1, 12), 0)

    def test_float_mode(self):
        with working_dps(38):
            v = pochhammer(mpmath.mpc(2, 1), 3)
            expected = mpmath.mpc(2, 1) * mpmath.mpc(3, 1) * mpmath.mpc(4, 1)
            assert abs(v - expected) == 0

    def test_pole_detection(self):
        with pytest.raises(PoleAtEvaluation):
            pochhammer(GR(3, 0), -5)  # hits the factor a - 3 = 0
        with working_dps(38):
            with pytest.raises(PoleAtEvaluation):
                pochhammer(mpmath.mpf(3) + mpmath.mpf(10) ** -30, -4)

    def test_half_integer_shift_rejected(self):
        with pytest.raises(InvalidParameters):
            pochhammer(GR(1, 0), half(3))

    def test_concatenation_property(self):
        rng = random.Random(11)
        checked = 0
        while checked < 60:
            a = rand_gr(rng)
            n = rng.randint(-5, 5)
            m = rng.randint(-5, 5)
            try:
                lhs = pochhammer(a, n + m)
                rhs = pochhammer(a, n) * pochhammer(a + n, m)
            except PoleAtEvaluation:
                continue
            assert lhs == rhs
            checked += 1

    def test_sign_flip_inverse(self):
        rng = random.Random(12)
        checked = 0
        while checked < 40:
            a = rand_gr(rng)
            n = rng.randint(1, 5)
            try:
                product = pochhammer(a, -n) * pochhammer(a - n, n)
            except PoleAtEvaluation:
                continue
            assert product == GR(1, 0)
            checked += 1

    def test_exact_float_agreement(self):
        rng = random.Random(13)
        with working_dps(38):
            tol = mpmath.mpf(10) ** (10 - 38)
            checked = 0
            while checked < 40:
                a = rand_gr(rng)
                n = rng.randint(-5, 5)
                try:
                    exact = pochhammer(a, n)
                except PoleAtEvaluation:
                    continue
                floated = pochhammer(a.to_mpc(), n)
                if exact.is_zero():
                    assert abs(floated) < tol
                else:
                    assert abs(floated - exact.to_mpc()) / abs(exact.to_mpc()) < tol
                checked += 1


class TestPochhammerPm:
    def test_symmetric_collapse(self):
        a = GR(mpq(5, 3), mpq(1, 4))
        for n in (-2, 0, 3):
            assert pochhammer_pm(a, GR(0, 0), n, 0) == pochhammer(a, n) * pochhammer(a, n)

    def test_integer_example(self):
        # (3+1)_{1+1} (3-1)_{1-1} = (4)_2 * (2)_0 = 20
        assert pochhammer_pm(GR(3, 0), GR(1, 0), 1, 1) == GR(20, 0)

    def test_half_integer_example(self):
        # direct finite-product oracle:
        # (1 + 1/2)_{2-1} * (1 - 1/2)_{2+1} with the convention splitting
        # into (a+b)_{n+m} (a-b)_{n-m}: n=2, m=-1 gives
        # (3/2)_1 * (1/2)_3 = (3/2) * (1/2 * 3/2 * 5/2) = 45/16
        oracle = GR(mpq(3, 2), 0) * (GR(mpq(1, 2), 0) * GR(mpq(3, 2), 0) * GR(mpq(5, 2), 0))
        assert oracle == GR(mpq(45, 16), 0)
        assert pochhammer_pm(GR(1, 0), GR(mpq(1, 2), 0), 2, -1) == oracle

    def test_half_integer_shifts_of_equal_parity(self):
        # n, m in Z + 1/2 with integer n+-m split across the two factors
        value = pochhammer_pm(GR(2, 0), GR(1, 0), half(3), half(1))
        assert value == pochhammer(GR(3, 0), 2) * pochhammer(GR(1, 0), 1)

    def test_pole_propagates(self):
        with pytest.raises(PoleAtEvaluation):
            pochhammer_pm(GR(2, 0), GR(1, 0), -1, 0)  # (3)_{-1} fine, (1)_{-1} pole
