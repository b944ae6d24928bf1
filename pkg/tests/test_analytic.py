"""Tests for the closed-form BER formula."""

import math

import numpy as np
import pytest

from csrsim.analytic import AnalyticParams, ber_closed_form, qpsk_awgn_ber, qpsk_rayleigh_ber

# frozen before the build from a 40-digit evaluation of the formula
PE_K1_SIR10_EBNO18 = 0.026666433821498997
PE_K0_EBNO0 = 0.14644660940672624


class TestClosedForm:
    def test_noiseless_no_interference_limit(self):
        p = ber_closed_form(AnalyticParams(m=4, sir_db=(), ebno_db=float("inf")))
        assert p == 0.0

    def test_k0_at_zero_db(self):
        p = ber_closed_form(AnalyticParams(m=4, sir_db=(), ebno_db=0.0))
        assert abs(p - PE_K0_EBNO0) < 1e-15

    def test_single_interferer_reference_point(self):
        p = ber_closed_form(AnalyticParams(m=4, sir_db=(10.0,), ebno_db=18.0))
        assert abs(p - PE_K1_SIR10_EBNO18) < 1e-15

    def test_reduction_to_classical_rayleigh(self):
        # identity: for M=4, K=0 the formula collapses to 0.5*(1-sqrt(g/(1+g)))
        for g_db in np.linspace(-10, 28, 20):
            lhs = ber_closed_form(AnalyticParams(m=4, sir_db=(), ebno_db=float(g_db)))
            assert abs(lhs - qpsk_rayleigh_ber(float(g_db))) < 1e-12

    def test_monotone_decreasing_in_ebno(self):
        values = [ber_closed_form(AnalyticParams(m=4, sir_db=(10.0,), ebno_db=g))
                  for g in np.linspace(-5, 30, 30)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_monotone_decreasing_in_sir(self):
        values = [ber_closed_form(AnalyticParams(m=4, sir_db=(s,), ebno_db=18.0))
                  for s in np.linspace(-10, 30, 30)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_appending_interferer_increases_ber(self):
        base = AnalyticParams(m=4, sir_db=(10.0,), ebno_db=18.0)
        more = AnalyticParams(m=4, sir_db=(10.0, 15.0), ebno_db=18.0)
        assert ber_closed_form(more) > ber_closed_form(base)

    def test_bounds(self):
        # supremum of the formula is its prefactor (0.5 for QPSK)
        upper = (1 - 1 / math.sqrt(4)) / math.log2(math.sqrt(4))
        for g in (-20.0, 0.0, 18.0, 50.0):
            p = ber_closed_form(AnalyticParams(m=4, sir_db=(0.0,), ebno_db=g))
            assert 0.0 < p <= upper

    def test_16qam_accepted(self):
        p = ber_closed_form(AnalyticParams(m=16, sir_db=(), ebno_db=20.0))
        assert 0.0 < p < 1.0

    def test_rejects_non_square_order(self):
        with pytest.raises(ValueError):
            AnalyticParams(m=8)
        with pytest.raises(ValueError):
            AnalyticParams(m=2)

    def test_zero_linear_sir_is_domain_error(self):
        with pytest.raises(ValueError):
            ber_closed_form(AnalyticParams(m=4, sir_db=(float("-inf"),), ebno_db=18.0))


class TestReferenceFormulas:
    def test_rayleigh_known_values(self):
        assert abs(qpsk_rayleigh_ber(0.0) - PE_K0_EBNO0) < 1e-15
        assert qpsk_rayleigh_ber(float("inf")) == 0.0

    def test_awgn_zero_db(self):
        # Q(sqrt(2)) = 0.5*erfc(1)
        assert abs(qpsk_awgn_ber(0.0) - 0.5 * math.erfc(1.0)) < 1e-15
