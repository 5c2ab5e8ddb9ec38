"""Factored terms, residue integration, and the three closed forms."""

import itertools

import mpmath
import pytest
from gmpy2 import mpq

from ratideal.errors import (
    DegenerateParameters,
    InvalidParameters,
    InvalidTerm,
    PoleAtEvaluation,
)
from ratideal.rational import (
    CLOSED_FORM_SCALE,
    CONTRIBUTING,
    VANISHING,
    FactoredRational,
    ParameterSet,
    build_term,
    classify_contribution,
    closed_form_debranges_wilson,
    closed_form_half_integer,
    closed_form_rahman,
    debranges_wilson_set,
    half_integer_set,
    integrate_term,
    rahman_set,
    ratbeta_lhs,
    ratbeta_rhs,
)
from ratideal.scalars import GaussianRational as GR, HalfInteger, half

A4_CANONICAL = (GR(0, -1), GR(0, -2), GR(0, -3), GR(0, -4))


def residue_total(params):
    from ratideal.rational import _bilateral_terms

    entries, _ = _bilateral_terms(params, mode="exact")
    total = GR(0, 0)
    for _n, kind, integral in entries:
        if kind == CONTRIBUTING:
            total = total + integral.residue_sum
    return total


class TestParameterSet:
    def test_balanced_ok(self):
        p = ParameterSet(N=(0, 0, 0, 0, 1, 1),
                         a=(GR(1, 1), GR(-1, 0), GR(0, -2), GR(2, 0), GR(-2, 2), GR(0, -1)))
        assert p.nu == HalfInteger(0) and p.size == 6

    def test_sum_n_enforced(self):
        with pytest.raises(InvalidParameters):
            ParameterSet(N=(0, 0, 0, 0, 1, 2), a=(GR(0, 0),) * 6)

    def test_sum_a_enforced(self):
        with pytest.raises(InvalidParameters):
            ParameterSet(N=(0, 0, 0, 0, 1, 1),
                         a=(GR(1, 0),) + (GR(0, 0),) * 5)

    def test_mixed_parity_rejected(self):
        with pytest.raises(InvalidParameters):
            ParameterSet(N=(half(1), 0, 0, 0, 1, half(1)), a=(GR(0, 0),) * 6)

    def test_declared_nu_checked(self):
        with pytest.raises(InvalidParameters):
            ParameterSet(N=(0, 0, 0, 0, 1, 1), a=(GR(0, 0),) * 6, nu=half(1))

    def test_sizes(self):
        with pytest.raises(InvalidParameters):
            ParameterSet(N=(1, 1), a=(GR(0, 0),) * 2)


class TestBuildTerm:
    def test_leading_example_structure(self):
        """The (0,0,0,0,1,1) set at N = 0 reduces to the four-parameter
        quadratic kernel; the last two continuous parameters drop out."""
        p = debranges_wilson_set(A4_CANONICAL, GR(4, 1))
        t = build_term(p, 0)
        assert t.scalar == GR(256, 0)
        assert sorted(t.num_roots, key=str) == [GR(0, 0), GR(0, 0)]
        plus = set(map(str, t.family_roots("plus")))
        minus = set(map(str, t.family_roots("minus")))
        assert plus == {str(-a) for a in A4_CANONICAL}
        assert minus == {str(a) for a in A4_CANONICAL}
        # a5, a6 absent
        for extra in (p.a[4], p.a[5]):
            assert str(extra) not in plus | minus

    def test_zero_shift_contributes_nothing(self):
        # at N = 1 the first four entries have shift 0 on the plus side
        p = debranges_wilson_set(A4_CANONICAL, GR(4, 1))
        t = build_term(p, 1)
        assert not t.family_roots("plus")

    def test_offset_parity_enforced(self):
        p = debranges_wilson_set(A4_CANONICAL, GR(4, 1))
        with pytest.raises(InvalidParameters):
            build_term(p, half(1))

    def test_pinching_detected(self):
        # a2 = -a1 collides the plus pole -a1 with the minus pole a2
        a = (GR(0, 1), GR(0, -1), GR(0, -3), GR(0, -4))
        p = debranges_wilson_set(a, GR(4, 1))
        with pytest.raises(DegenerateParameters) as info:
            build_term(p, 0)
        assert info.value.colliding is not None

    def test_cancellation_in_half_integer_case(self):
        """a5 = 1/2 makes a numerator root collide with a denominator
        root, which must cancel rather than pinch."""
        a5 = [GR(mpq(k, 10), 0) for k in range(1, 6)]
        p = half_integer_set(a5)
        t = build_term(p, half(1))
        assert t.num_roots == ()  # both prefactor roots cancelled
        assert t.degree_gap == 6


class TestClassify:
    def test_vanishing_sides(self):
        p = debranges_wilson_set(A4_CANONICAL, GR(4, 1))
        assert classify_contribution(build_term(p, 0)) == CONTRIBUTING
        assert classify_contribution(build_term(p, 1)) == VANISHING
        assert classify_contribution(build_term(p, -1)) == VANISHING

    def test_half_integer_contributions(self):
        a5 = [GR(mpq(1, 3), mpq(-1, 5)), GR(mpq(2, 7), mpq(1, 2)), GR(1, -1),
              GR(mpq(-1, 2), mpq(2, 3)), GR(mpq(3, 4), mpq(-1, 7))]
        p = half_integer_set(a5)
        kinds = {str(n): classify_contribution(build_term(p, n))
                 for n in (half(-3), half(-1), half(1), half(3))}
        assert kinds["-1/2"] == CONTRIBUTING and kinds["1/2"] == CONTRIBUTING
        assert kinds["-3/2"] == VANISHING and kinds["3/2"] == VANISHING

    def test_polynomial_term_invalid(self):
        t = FactoredRational(scalar=GR(1, 0), num_roots=(GR(2, 0),), den_roots=())
        with pytest.raises(InvalidTerm):
            classify_contribution(t)


class TestIntegrateTerm:
    def test_hand_residue(self):
        """1 / ((y - i)(y + i)) with -i on the plus side integrates to
        2*pi*i / (-2i) = -pi."""
        t = FactoredRational(scalar=GR(1, 0), num_roots=(),
                             den_roots=((GR(0, -1), "plus"), (GR(0, 1), "minus")))
        ci = integrate_term(t)
        assert ci.residue_sum == GR(0, mpq(1, 2))
        assert ci.minus_residue_sum == -ci.residue_sum
        from ratideal.scalars import working_dps

        with working_dps(38):
            assert abs(ci.value() + mpmath.pi) < mpmath.mpf(10) ** -30

    def test_duplicate_roots_rejected(self):
        t = FactoredRational(scalar=GR(1, 0), num_roots=(),
                             den_roots=((GR(0, -1), "plus"), (GR(0, -1), "plus"),
                                        (GR(0, 1), "minus")))
        with pytest.raises(DegenerateParameters):
            integrate_term(t)

    def test_degree_gap_guard(self):
        t = FactoredRational(scalar=GR(1, 0), num_roots=(GR(5, 0),),
                             den_roots=((GR(0, -1), "plus"), (GR(0, 1), "minus")))
        with pytest.raises(InvalidTerm):
            integrate_term(t)

    def test_rationality_of_exact_values(self):
        p = debranges_wilson_set(A4_CANONICAL, GR(4, 1))
        ci = integrate_term(build_term(p, 0))
        assert isinstance(ci.residue_sum, GR)


class TestClosedForms:
    def test_debranges_wilson_canonical_point(self):
        """Frozen oracle value: the partial-fraction sum
        sum_j a_j / prod_{k != j} (a_k^2 - a_j^2) evaluates to -i/1260 at
        a = (-i, -2i, -3i, -4i), and the closed form must match it."""
        oracle = GR(0, 0)
        for j in range(4):
            denom = GR(1, 0)
            for k in range(4):
                if k != j:
                    denom = denom * (A4_CANONICAL[k] * A4_CANONICAL[k]
                                     - A4_CANONICAL[j] * A4_CANONICAL[j])
            oracle = oracle + A4_CANONICAL[j] / denom
        assert oracle == GR(0, mpq(-1, 1260))
        assert closed_form_debranges_wilson(A4_CANONICAL) == oracle

    def test_debranges_wilson_is_symmetric(self):
        base = closed_form_debranges_wilson(A4_CANONICAL)
        for perm in itertools.permutations(range(4)):
            assert closed_form_debranges_wilson(
                [A4_CANONICAL[i] for i in perm]) == base

    def test_debranges_wilson_engine_match(self):
        p = debranges_wilson_set(A4_CANONICAL, GR(4, 1))
        assert residue_total(p) == CLOSED_FORM_SCALE * closed_form_debranges_wilson(A4_CANONICAL)

    def test_rahman_engine_match(self):
        a5 = [GR(mpq(-1, 3), -1), GR(mpq(1, 4), -2), GR(mpq(2, 5), mpq(-1, 2)),
              GR(1, -1), GR(mpq(-3, 7), mpq(-5, 3))]
        assert residue_total(rahman_set(a5)) == CLOSED_FORM_SCALE * closed_form_rahman(a5)

    def test_half_integer_direct_substitution(self):
        a5 = [GR(mpq(k, 10), 0) for k in range(1, 6)]
        # a6 = -3/2, so the closed form is 1 / prod (a_j - 3/2)
        expected = GR(1, 0)
        for x in a5:
            expected = expected * (x - GR(mpq(3, 2), 0))
        expected = GR(1, 0) / expected
        assert closed_form_half_integer(a5) == expected

    def test_half_integer_engine_match_and_equal_halves(self):
        a5 = [GR(mpq(k, 10), 0) for k in range(1, 6)]
        p = half_integer_set(a5)
        from ratideal.rational import _bilateral_terms

        entries, _ = _bilateral_terms(p, mode="exact")
        contributing = [(n, ci) for n, kind, ci in entries if kind == CONTRIBUTING]
        assert [str(n) for n, _ in contributing] == ["-1/2", "1/2"]
        assert contributing[0][1].residue_sum == contributing[1][1].residue_sum
        total = contributing[0][1].residue_sum + contributing[1][1].residue_sum
        assert total == CLOSED_FORM_SCALE * closed_form_half_integer(a5)

    def test_pole_in_closed_form(self):
        with pytest.raises(PoleAtEvaluation):
            closed_form_debranges_wilson((GR(1, 0), GR(-1, 0), GR(2, 0), GR(3, 0)))

    def test_input_sizes(self):
        with pytest.raises(InvalidParameters):
            closed_form_rahman([GR(1, 0)] * 4)
        with pytest.raises(InvalidParameters):
            closed_form_half_integer([GR(1, 0)] * 6)


class TestTwoSides:
    def test_lhs_and_rhs_sizes(self):
        a5 = [GR(mpq(1, 3), mpq(-1, 5)), GR(mpq(2, 7), mpq(1, 2)), GR(1, -1),
              GR(mpq(-1, 2), mpq(2, 3)), GR(mpq(3, 4), mpq(-1, 7))]
        p8 = half_integer_set(a5)
        # wrong-size guards use the 6-entry drivers
        lhs = ratbeta_lhs(p8)
        rhs = ratbeta_rhs(p8)
        assert lhs == rhs

    def test_rhs_structure_for_leading_example(self):
        """15 Pochhammers with shifts in {-1, 0, 1}: the closed product
        2^5 (a5 + a6) / prod_{j<k<=4} (a_j + a_k)."""
        p = debranges_wilson_set(A4_CANONICAL, GR(4, 1))
        denom = GR(1, 0)
        for j in range(4):
            for k in range(j + 1, 4):
                denom = denom * (p.a[j] + p.a[k])
        expected = GR(32, 0) * (p.a[4] + p.a[5]) / denom
        assert ratbeta_rhs(p) == expected

    def test_exponent_sum_consistency(self):
        # sum over pairs of (N_j + N_k - 1) = 5 * sum(N) - 15 = -5
        p = debranges_wilson_set(A4_CANONICAL, GR(4, 1))
        total = sum((p.N[j] + p.N[k]).as_int() - 1
                    for j in range(6) for k in range(j + 1, 6))
        assert total == -5

    def test_pole_at_evaluation_in_rhs(self):
        # a1 + a2 = 0 with N1 = N2 = 0 makes one Pochhammer argument 1
        # with shift -1, i.e. the factor (1 - 1) in the denominator
        a = (GR(0, 1), GR(0, -1), GR(0, -3), GR(0, -4))
        p = debranges_wilson_set(a, GR(4, 1))
        with pytest.raises(PoleAtEvaluation):
            ratbeta_rhs(p)
