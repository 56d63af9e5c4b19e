"""Hand-built special functions checked against identities and against
scipy (the quadrature backend, an independent implementation)."""

import cmath
import math

import numpy as np
import pytest
import scipy.special as sps
from hypothesis import given, strategies as st

from abgup import (
    AccuracyError,
    DomainValidationError,
    PoleError,
    bessel_j,
    digamma,
    gamma_fn,
    hyp2f1_11,
    log_gamma,
    pfq_series,
)

EULER_GAMMA = 0.5772156649015328606


# =====================================================================
# gamma / log_gamma / digamma
# =====================================================================

class TestGamma:
    @pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 1.5, 2.0, 3.7, 10.0, 20.5, 100.0])
    def test_against_math_gamma(self, x):
        assert gamma_fn(x) == pytest.approx(math.gamma(x), rel=1e-13)

    @pytest.mark.parametrize("x", [-0.3, -1.7, -5.5, -10.2])
    def test_negative_arguments(self, x):
        assert gamma_fn(x) == pytest.approx(math.gamma(x), rel=1e-12)

    @given(st.floats(min_value=0.05, max_value=0.95))
    def test_reflection(self, x):
        lhs = gamma_fn(x) * gamma_fn(1.0 - x)
        assert lhs == pytest.approx(math.pi / math.sin(math.pi * x), rel=1e-12)

    @given(st.floats(min_value=0.1, max_value=40.0))
    def test_recurrence(self, x):
        assert gamma_fn(x + 1.0) == pytest.approx(x * gamma_fn(x), rel=1e-12)

    @pytest.mark.parametrize("x", [0.0, -1.0, -2.0, -7.0])
    def test_poles(self, x):
        with pytest.raises(PoleError):
            gamma_fn(x)

    def test_nonfinite(self):
        with pytest.raises(DomainValidationError):
            gamma_fn(math.inf)


class TestLogGamma:
    @pytest.mark.parametrize("x", [0.2, 1.0, 2.5, 17.0, 301.5])
    def test_matches_lgamma(self, x):
        assert log_gamma(x) == pytest.approx(math.lgamma(x), rel=1e-13, abs=1e-13)

    def test_consistent_with_gamma(self):
        for x in (0.4, 1.3, 6.0):
            assert math.exp(log_gamma(x)) == pytest.approx(gamma_fn(x), rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainValidationError):
            log_gamma(0.0)
        with pytest.raises(DomainValidationError):
            log_gamma(-2.5)


class TestDigamma:
    def test_psi_one(self):
        assert digamma(1.0) == pytest.approx(-EULER_GAMMA, abs=1e-13)

    def test_psi_half(self):
        assert digamma(0.5) == pytest.approx(-EULER_GAMMA - 2 * math.log(2.0), abs=1e-12)

    @given(st.floats(min_value=0.05, max_value=30.0))
    def test_recurrence(self, x):
        assert digamma(x + 1.0) == pytest.approx(digamma(x) + 1.0 / x, rel=1e-11, abs=1e-11)

    @pytest.mark.parametrize("x", [0.3, 1.7, -0.4, -3.3, 25.0])
    def test_against_scipy(self, x):
        assert digamma(x) == pytest.approx(float(sps.digamma(x)), rel=1e-11, abs=1e-11)

    def test_poles(self):
        with pytest.raises(PoleError):
            digamma(-3.0)


# =====================================================================
# Bessel J of real order
# =====================================================================

class TestBesselJ:
    @pytest.mark.parametrize("nu", [0.0, 0.3, 1.0, 1.7, 4.4, -0.3, -1.7])
    @pytest.mark.parametrize("z", [0.1, 0.7, 3.0, 12.0, 50.0, 400.0])
    def test_against_scipy(self, nu, z):
        assert bessel_j(nu, z) == pytest.approx(float(sps.jv(nu, z)), rel=1e-9, abs=1e-12)

    def test_very_large_argument(self):
        # asymptotic branch
        for nu in (0.3, 2.5):
            z = 2.0e3
            assert bessel_j(nu, z) == pytest.approx(float(sps.jv(nu, z)), rel=1e-8, abs=1e-12)

    @given(
        st.floats(min_value=-3.0, max_value=5.0),
        st.floats(min_value=0.2, max_value=60.0),
    )
    def test_three_term_recurrence(self, nu, z):
        lhs = bessel_j(nu - 1.0, z) + bessel_j(nu + 1.0, z)
        rhs = 2.0 * nu / z * bessel_j(nu, z)
        assert lhs == pytest.approx(rhs, rel=1e-8, abs=1e-8)

    @pytest.mark.parametrize("nu", [0.3, 0.7, 1.4])
    @pytest.mark.parametrize("z", [0.8, 5.0, 25.0])
    def test_wronskian(self, nu, z):
        # J_nu J'_{-nu} - J'_nu J_{-nu} = -2 sin(pi nu) / (pi z)
        h = 1e-6 * max(1.0, z)
        dp = (bessel_j(-nu, z + h) - bessel_j(-nu, z - h)) / (2 * h)
        dm = (bessel_j(nu, z + h) - bessel_j(nu, z - h)) / (2 * h)
        lhs = bessel_j(nu, z) * dp - dm * bessel_j(-nu, z)
        rhs = -2.0 * math.sin(math.pi * nu) / (math.pi * z)
        assert lhs == pytest.approx(rhs, rel=1e-4, abs=1e-8)

    def test_integer_negative_order_relation(self):
        for n in (1, 2, 5):
            for z in (0.9, 7.0):
                assert bessel_j(-float(n), z) == pytest.approx(
                    (-1.0) ** n * bessel_j(float(n), z), rel=1e-10, abs=1e-14
                )

    def test_array_input(self):
        z = np.linspace(0.5, 20.0, 64)
        out = bessel_j(0.7, z)
        assert out.shape == z.shape
        assert np.allclose(out, sps.jv(0.7, z), rtol=1e-9, atol=1e-12)

    def test_small_z_leading_power(self):
        # J_nu(z) ~ (z/2)^nu / Gamma(nu+1) as z -> 0
        nu, z = 1.3, 1e-4
        lead = (z / 2.0) ** nu / gamma_fn(nu + 1.0)
        assert bessel_j(nu, z) == pytest.approx(lead, rel=1e-6)


# =====================================================================
# 2F1(1, 1; c; x) and the generic pFq series
# =====================================================================

class TestHyp2f1:
    @given(
        st.floats(min_value=-0.65, max_value=0.65),
        st.floats(min_value=-0.3, max_value=0.3),
    )
    def test_log_identity(self, re, im):
        # F(1,1;2;x) = -log(1-x)/x
        x = complex(re, im)
        if abs(x) < 1e-3:
            return
        assert hyp2f1_11(2.0, x) == pytest.approx(-cmath.log(1.0 - x) / x, rel=1e-10)

    def test_geometric_identity(self):
        # F(1,1;1;x) = 1/(1-x)
        for x in (0.3, -0.5, 0.2 + 0.4j, -1.5 + 2.0j):
            assert hyp2f1_11(1.0, x) == pytest.approx(1.0 / (1.0 - x), rel=1e-10)

    def test_at_zero(self):
        assert hyp2f1_11(3.7, 0.0) == pytest.approx(1.0, rel=1e-14)

    @pytest.mark.parametrize("c", [0.3, 0.8, 1.2, 2.5, 4.0])
    @pytest.mark.parametrize(
        "x", [0.4, -0.9, 0.5 + 0.8j, 0.5 - 2.3j, -3.0 + 0.1j, 0.5 + 12.0j]
    )
    def test_against_scipy(self, c, x):
        ref = complex(sps.hyp2f1(1.0, 1.0, c, complex(x)))
        assert hyp2f1_11(c, x) == pytest.approx(ref, rel=1e-8)

    def test_contiguous_relation(self):
        # c(c-1)(x-1) F(c-1) + c[(c-1)-(2c-3)x] F(c) + (c-1)^2 x F(c+1) = 0
        c, x = 2.3, 0.5 + 0.9j
        fm = hyp2f1_11(c - 1.0, x)
        f0 = hyp2f1_11(c, x)
        fp = hyp2f1_11(c + 1.0, x)
        res = (
            c * (c - 1.0) * (x - 1.0) * fm
            + c * ((c - 1.0) - (2.0 * c - 3.0) * x) * f0
            + (c - 1.0) ** 2 * x * fp
        )
        assert abs(res) < 1e-9 * max(abs(fm), abs(f0), abs(fp))

    def test_branch_cut_rejected(self):
        with pytest.raises(DomainValidationError):
            hyp2f1_11(2.5, 1.0)
        with pytest.raises(DomainValidationError):
            hyp2f1_11(2.5, 3.7)

    def test_pole_in_c_rejected(self):
        with pytest.raises(PoleError):
            hyp2f1_11(0.0, 0.3)
        with pytest.raises(PoleError):
            hyp2f1_11(-2.0, 0.3)

    def test_half_line_arguments(self):
        # Re x = 1/2 is the line the amplitude kernel evaluates on.
        for t in (0.5, 2.0, 10.0, 60.0):
            x = 0.5 + 1j * t
            ref = complex(sps.hyp2f1(1.0, 1.0, 1.7, x))
            assert hyp2f1_11(1.7, x) == pytest.approx(ref, rel=1e-8)


class TestPfqSeries:
    def test_exponential(self):
        # 0F0(;;z) = e^z
        assert pfq_series([], [], 0.7 + 0.2j) == pytest.approx(cmath.exp(0.7 + 0.2j), rel=1e-12)

    def test_binomial(self):
        # 1F0(a;;z) = (1-z)^(-a)
        assert pfq_series([1.5], [], 0.4) == pytest.approx((1.0 - 0.4) ** -1.5, rel=1e-10)

    def test_gauss_value(self):
        # 2F1(1,1;2;x) via the generic series
        x = 0.35
        assert pfq_series([1.0, 1.0], [2.0], x) == pytest.approx(-math.log(1.0 - x) / x, rel=1e-10)

    def test_terminating(self):
        # negative-integer upper parameter terminates the series
        val = pfq_series([-2.0, 1.0], [1.0], 3.0)
        assert val == pytest.approx(1.0 - 2.0 * 3.0 + 3.0 * 3.0, rel=1e-13)

    def test_lower_pole(self):
        with pytest.raises(PoleError):
            pfq_series([1.0], [-1.0], 0.3)

    def test_divergence_flagged(self):
        with pytest.raises(AccuracyError):
            pfq_series([1.0, 1.0], [2.0], 1.8)
