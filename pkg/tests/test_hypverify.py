"""Hyperbolic integral identities by adaptive quadrature."""

import mpmath
import pytest

from ratideal.errors import InvalidParameters, PoleOfGammaH, TransformOutOfDomain
from ratideal.hypverify import (
    HyperbolicParams,
    kernel_decay_rate,
    kernel_delta,
    kernel_tail_exponent,
    v_transform_shift,
    verify_hyperbolic_beta,
    verify_v_transform,
)
from ratideal.sampling import default_omega_pair, random_hyperbolic_set
from ratideal.scalars import working_dps


@pytest.fixture(scope="module")
def w():
    with working_dps(38):
        return default_omega_pair()


@pytest.fixture(scope="module")
def symmetric6(w):
    with working_dps(38):
        return HyperbolicParams([w.omega_sum / 6] * 6, w)


class TestHyperbolicParams:
    def test_balancing_enforced(self, w):
        with working_dps(38):
            g = [w.omega_sum / 6] * 5 + [w.omega_sum / 3]
            with pytest.raises(InvalidParameters):
                HyperbolicParams(g, w)

    def test_right_half_plane_enforced(self, w):
        with working_dps(38):
            g = [w.omega_sum / 6] * 4 + [-w.omega_sum / 6, w.omega_sum / 2]
            with pytest.raises(InvalidParameters):
                HyperbolicParams(g, w)

    def test_sizes(self, w):
        with pytest.raises(InvalidParameters):
            HyperbolicParams([w.omega_sum / 5] * 5, w)


class TestKernel:
    def test_even_in_z_exactly(self, symmetric6):
        with working_dps(38):
            for t in ("0.3", "1.1", "2.7"):
                z = mpmath.mpc(0, mpmath.mpf(t))
                assert kernel_delta(z, symmetric6) == kernel_delta(-z, symmetric6)

    def test_origin_excluded(self, symmetric6):
        with pytest.raises(PoleOfGammaH):
            kernel_delta(0, symmetric6)

    def test_tail_exponent_matches_cone_prediction(self, symmetric6, w):
        with working_dps(38):
            measured = kernel_tail_exponent(symmetric6)
            predicted = kernel_decay_rate(w)
            assert abs(measured - predicted) / predicted < 0.05

    def test_eight_parameter_tail_also_matches(self, w):
        with working_dps(38):
            g8 = [w.omega_sum / 4] * 8
            h = HyperbolicParams(g8, w)
            measured = kernel_tail_exponent(h)
            predicted = kernel_decay_rate(w)
            assert abs(measured - predicted) / predicted < 0.05


class TestBetaIntegral:
    def test_symmetric_point(self, symmetric6):
        rep = verify_hyperbolic_beta(symmetric6, tol=1e-6)
        assert rep.status == "pass"
        assert rep.rel_error < 1e-6

    def test_random_balanced_set(self):
        case = random_hyperbolic_set(seed=2024, case_index=0)
        rep = verify_hyperbolic_beta(case.params, tol=1e-6)
        assert rep.status == "pass"

    def test_permutation_invariance(self):
        with working_dps(38):
            case = random_hyperbolic_set(seed=2024, case_index=1)
            h = case.params
            perm = [3, 0, 5, 1, 4, 2]
            h2 = HyperbolicParams([h.g[i] for i in perm], h.w)
            r1 = verify_hyperbolic_beta(h, tol=1e-6)
            r2 = verify_hyperbolic_beta(h2, tol=1e-6)
            assert abs(r1.rhs - r2.rhs) / abs(r1.rhs) < mpmath.mpf(10) ** -30
            assert abs(r1.lhs - r2.lhs) / abs(r1.lhs) < mpmath.mpf(10) ** -25

    def test_quadrature_convergence(self, symmetric6):
        r1 = verify_hyperbolic_beta(symmetric6, tol=1e-6)
        r2 = verify_hyperbolic_beta(symmetric6, tol=5e-7)
        assert abs(r1.lhs - r2.lhs) <= r1.extras["quad_error"] + mpmath.mpf(10) ** -30


class TestVTransform:
    def test_identity_point(self, w):
        """First tetrad summing to the period sum makes the shift zero
        and the transformation the identity map."""
        with working_dps(38):
            g8 = [w.omega_sum / 4] * 8
            h = HyperbolicParams(g8, w)
            assert abs(v_transform_shift(h)) < mpmath.mpf(10) ** -30
            rep = verify_v_transform(h, tol=1e-8)
            assert rep.status == "pass"

    def test_random_admissible_set(self):
        case = random_hyperbolic_set(seed=31, case_index=0, size=8,
                                     require_transform=True)
        rep = verify_v_transform(case.params, tol=1e-6)
        assert rep.status == "pass"

    def test_transform_out_of_domain(self, w):
        with working_dps(38):
            alphas = [mpmath.mpf(x) for x in
                      ("0.1", "0.5", "0.6", "0.6", "0.05", "0.05", "0.05", "0.05")]
            g8 = [a * w.omega_sum for a in alphas]
            h = HyperbolicParams(g8, w)
            with pytest.raises(TransformOutOfDomain):
                verify_v_transform(h, tol=1e-6)
