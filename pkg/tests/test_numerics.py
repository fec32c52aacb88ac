import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pearcey.numerics import (
    as_complex,
    canonical_y,
    gamma_real,
    hermite_scaled,
    hermite_scaled_all,
    hyp_pfq,
    kummer_m_negint,
    principal_arg,
)
from pearcey.results import DomainError, NonConvergenceError, PearceyOverflowError

# mpmath at 40 digits, frozen
GAMMA_QUARTER = 3.625609908221908311930685155867672002995
F12_QUARTER = 1.002606589729041268515512748920685163366  # 1F2(1/4; 1/2, 3/4; 4^-4), 200-term sum
H8_1PI = complex(-187.4375, 7.0)  # H_8(1+i) / 256

finite = st.floats(min_value=-10, max_value=10, allow_nan=False)
cplx = st.builds(complex, finite, finite)


def rel(a, b):
    return abs(a - b) / abs(b)


class TestGamma:
    @pytest.mark.parametrize("x, want", [(1, 1.0), (0.5, 1.7724538509055160), (5, 24.0)])
    def test_known_values(self, x, want):
        assert rel(gamma_real(x), want) <= 1e-14

    def test_quarter(self):
        assert rel(gamma_real(0.25), GAMMA_QUARTER) <= 1e-14

    @pytest.mark.parametrize("x", [0.25, 0.75, 1.25, 3.5])
    def test_functional_equation(self, x):
        assert rel(gamma_real(x + 1), x * gamma_real(x)) <= 1e-13

    @pytest.mark.parametrize("bad", [0, -1, -0.5, math.inf, math.nan])
    def test_domain(self, bad):
        with pytest.raises(DomainError):
            gamma_real(bad)


class TestHypPFQ:
    def test_zero_argument(self):
        val, rep = hyp_pfq([0.3], [0.25, 0.5, 0.75], 0)
        assert val == 1
        assert rep.stop_reason == "converged"

    def test_parameter_cancellation_exact(self):
        a, _ = hyp_pfq([0.75], [0.25, 0.5, 0.75], 1.0)
        b, _ = hyp_pfq([], [0.25, 0.5], 1.0)
        assert a == b

    def test_degenerate_pinned(self):
        val, rep = hyp_pfq([0.25], [0.5, 0.75], 0.25**4)
        assert rel(val, F12_QUARTER) <= 1e-15
        assert rep.terms_used >= 2

    @settings(max_examples=60, deadline=None)
    @given(st.floats(0, 10), st.floats(-math.pi, math.pi))
    def test_cancellation_matches_reduced_series(self, r, phi):
        z = r * complex(math.cos(phi), math.sin(phi))
        a, _ = hyp_pfq([1.25], [0.75, 1.25, 1.5], z)
        b, _ = hyp_pfq([], [0.75, 1.5], z)
        assert abs(a - b) <= 1e-13 * abs(b)

    def test_exp_series(self):
        val, _ = hyp_pfq([], [], 1 + 1j)
        assert rel(val, complex(np.exp(1 + 1j))) <= 1e-15

    def test_nonconvergence_reports_last_term(self):
        with pytest.raises(NonConvergenceError) as info:
            hyp_pfq([1, 1], [], 2.0, max_terms=50)
        assert info.value.last_term > 1

    def test_bad_lower_parameter(self):
        with pytest.raises(DomainError):
            hyp_pfq([1], [-2.0], 0.5)

    def test_bad_tol(self):
        with pytest.raises(DomainError):
            hyp_pfq([1], [2], 0.5, tol=0)


class TestHermite:
    def test_order_zero(self):
        assert hermite_scaled(0, 3 - 7j) == 1

    def test_h4_at_zero(self):
        assert hermite_scaled(4, 0) == 0.75

    def test_h8_pinned(self):
        assert rel(hermite_scaled(8, 1 + 1j), H8_1PI) <= 1e-14

    def test_matches_numpy_physicists(self):
        z = 0.7 - 0.4j
        for n in range(12):
            c = np.zeros(n + 1)
            c[n] = 1
            want = np.polynomial.hermite.hermval(z, c) / 2**n
            assert abs(hermite_scaled(n, z) - want) <= 1e-12 * max(1, abs(want))

    @settings(max_examples=40, deadline=None)
    @given(cplx)
    def test_recurrence_identity(self, z):
        h = hermite_scaled_all(61, z)
        for n in range(1, 61):
            resid = h[n + 1] - (z * h[n] - 0.5 * n * h[n - 1])
            scale = abs(z * h[n]) + 0.5 * n * abs(h[n - 1])
            assert abs(resid) <= 1e-13 * max(scale, 1e-300)

    def test_negative_order(self):
        with pytest.raises(DomainError):
            hermite_scaled(-1, 0)


class TestKummer:
    def test_n0(self):
        assert kummer_m_negint(0, 0.5, 4 - 2j) == 1

    def test_z0(self):
        assert kummer_m_negint(1, 0.5, 0) == 1

    def test_hand_value(self):
        assert kummer_m_negint(1, 0.5, 1) == pytest.approx(-5 / 3, rel=1e-15)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_polynomial_degree(self, n):
        zs = np.linspace(-1, 1, 2 * n + 2)
        vals = np.array([kummer_m_negint(n, 0.5, z).real for z in zs])
        lead = max(abs(vals))
        assert abs(np.diff(vals, 2 * n + 1)[0]) <= 1e-10 * lead

    def test_bad_b(self):
        with pytest.raises(DomainError):
            kummer_m_negint(1, -1.0, 0.3)


class TestComplexHelpers:
    def test_principal_arg_negative_real(self):
        assert principal_arg(-1 + 0j) == math.pi
        assert principal_arg(complex(-1, -0.0)) == math.pi

    def test_canonical_y_even(self):
        for y in (1 + 2j, -1 - 2j, 3j, -3j, -4.0, 0j):
            assert canonical_y(y) == canonical_y(-y)

    @pytest.mark.parametrize("bad", [complex(math.nan, 0), complex(0, math.inf), "abc"])
    def test_as_complex_rejects(self, bad):
        with pytest.raises(DomainError):
            as_complex(bad)


def test_hyp_pfq_overflow_is_reported():
    with pytest.raises(PearceyOverflowError):
        hyp_pfq([0.5], [0.25, 0.5, 0.75], 1e300)
