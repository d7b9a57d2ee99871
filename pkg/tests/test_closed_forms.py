"""Closed-form anchors: spring block, quasi-static continuum, dynamic identical
solids, rate-only verdict.  Hand-checkable numbers throughout."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from slipstab import (
    DomainError,
    EffectiveMedium,
    RateState,
    ShearStiffness,
    SpringBlockParams,
    identical_isotropic_dynamic,
    make_bimaterial,
    quasistatic_continuum,
    rate_only_verdict,
    solve_subsonic,
    spring_block_critical,
)

WEAK = RateState(a=0.01, b=0.02, L=1e-4, sigma_o=1e6, v_o=1e-3)
LAB = RateState(a=0.01, b=0.015, L=1e-4, sigma_o=1e8, v_o=1e-3)


class TestSpringBlock:
    def test_massless_values(self):
        k_cr, omega = spring_block_critical(WEAK)
        assert k_cr == pytest.approx(1e8, rel=1e-15)
        assert omega == pytest.approx(WEAK.v_o / WEAK.L, rel=1e-15)

    def test_inertia_raises_threshold_not_frequency(self):
        k0, w0 = spring_block_critical(WEAK)
        k1, w1 = spring_block_critical(WEAK, mass=1.0)
        # m*v_o^2/(a*sigma_o*L) = 1e-6/(0.01*1e6*1e-4) = 1e-6
        assert k1 == pytest.approx(k0 * (1.0 + 1e-6), rel=1e-15)
        assert w1 == w0

    def test_strengthening_returns_none(self):
        p = RateState(a=0.01, b=0.005, L=1e-4, sigma_o=1e6, v_o=1e-3)
        assert spring_block_critical(p) is None

    def test_negative_mass_rejected(self):
        with pytest.raises(DomainError):
            spring_block_critical(WEAK, mass=-1.0)

    def test_params_validation(self):
        SpringBlockParams(stiffness=1e8, mass=0.0, friction=WEAK)
        with pytest.raises(DomainError):
            SpringBlockParams(stiffness=0.0, mass=0.0, friction=WEAK)
        with pytest.raises(DomainError):
            SpringBlockParams(stiffness=1e8, mass=-1.0, friction=WEAK)


class TestQuasistatic:
    def test_identical_solids_values(self):
        k_cr, c, omega = quasistatic_continuum(LAB, mu=30e9)
        assert k_cr == pytest.approx(1.0 / 3.0, rel=1e-15)
        assert c == pytest.approx(30e9 * 1e-3 / (2.0 * math.sqrt(5e-5) * 1e8),
                                  rel=1e-15)
        assert c == pytest.approx(21.2132034, rel=1e-8)
        assert omega == pytest.approx(math.sqrt(0.5) * 10.0, rel=1e-15)
        assert omega == pytest.approx(k_cr * c, rel=1e-15)

    def test_dissimilar_reduces_and_is_symmetric(self):
        same = quasistatic_continuum(LAB, mu=30e9, mu_prime=30e9)
        assert same == quasistatic_continuum(LAB, mu=30e9)
        ab = quasistatic_continuum(LAB, mu=30e9, mu_prime=45e9)
        ba = quasistatic_continuum(LAB, mu=45e9, mu_prime=30e9)
        assert ab[0] == pytest.approx(ba[0], rel=1e-15)
        k_ref = 0.005 * 1e8 * (30e9 + 45e9) / (1e-4 * 30e9 * 45e9)
        assert ab[0] == pytest.approx(k_ref, rel=1e-15)

    def test_softer_partner_destabilizes(self):
        # k_cr = (b-a)*sigma_o/L * (1/mu + 1/mu'): a rigid partner leaves the
        # single-half-space floor, a compliant one raises k_cr without bound
        k_soft = quasistatic_continuum(LAB, mu=30e9, mu_prime=3e9)[0]
        k_same = quasistatic_continuum(LAB, mu=30e9)[0]
        k_rigid = quasistatic_continuum(LAB, mu=30e9, mu_prime=3e15)[0]
        floor = 0.005 * 1e8 / (1e-4 * 30e9)
        assert k_soft > k_same > k_rigid > floor
        assert k_rigid == pytest.approx(floor, rel=2e-5)

    def test_orthotropic_matches_identical_when_geometric_mean_equals_mu(self):
        ortho = ShearStiffness(c44=30e9, c45=0.0, c55=30e9, rho=2700.0)
        k_o, c_o, w_o = quasistatic_continuum(LAB, mu=30e9, orthotropic=ortho)
        k_i, c_i, w_i = quasistatic_continuum(LAB, mu=30e9)
        assert k_o == pytest.approx(k_i, rel=1e-15)
        assert w_o == w_i

    def test_orthotropic_general_value(self):
        ortho = ShearStiffness(c44=20e9, c45=0.0, c55=45e9, rho=2700.0)
        k_o, c_o, w_o = quasistatic_continuum(LAB, mu=32e9, orthotropic=ortho)
        k_ref = 1e8 * 0.005 / 1e-4 * (1.0 + 32e9 / 30e9) / 32e9
        assert k_o == pytest.approx(k_ref, rel=1e-15)
        assert w_o == pytest.approx(k_o * c_o, rel=1e-15)

    def test_argument_screening(self):
        ortho = ShearStiffness(c44=20e9, c45=0.0, c55=45e9, rho=2700.0)
        with pytest.raises(DomainError):
            quasistatic_continuum(LAB, mu=30e9, mu_prime=40e9, orthotropic=ortho)
        tilted = ShearStiffness(c44=20e9, c45=5e9, c55=45e9, rho=2700.0)
        with pytest.raises(DomainError):
            quasistatic_continuum(LAB, mu=30e9, orthotropic=tilted)
        with pytest.raises(DomainError):
            quasistatic_continuum(LAB, mu=-30e9)
        with pytest.raises(DomainError):
            quasistatic_continuum(LAB, mu=30e9, mu_prime=-1.0)

    def test_strengthening_returns_none(self):
        p = RateState(a=0.01, b=0.005, L=1e-4, sigma_o=1e6, v_o=1e-3)
        assert quasistatic_continuum(p, mu=30e9) is None


class TestDynamicIdentical:
    @staticmethod
    def _friction_for_q(q, mu=30e9, c_s=3000.0, a=0.01, b=0.015, sigma_o=1e8,
                        L=1e-4):
        v_o = q * 2.0 * math.sqrt(a * (b - a)) * sigma_o * c_s / mu
        return RateState(a=a, b=b, L=L, sigma_o=sigma_o, v_o=v_o)

    def test_q_one(self):
        p = self._friction_for_q(1.0)
        k_dyn, c = identical_isotropic_dynamic(p, mu=30e9, c_s=3000.0)
        k_qs = quasistatic_continuum(p, mu=30e9)[0]
        assert k_dyn == pytest.approx(k_qs * math.sqrt(2.0), rel=1e-14)
        assert c == pytest.approx(3000.0 / math.sqrt(2.0), rel=1e-14)

    def test_q_sqrt_three(self):
        p = self._friction_for_q(math.sqrt(3.0))
        k_dyn, c = identical_isotropic_dynamic(p, mu=30e9, c_s=3000.0)
        k_qs = quasistatic_continuum(p, mu=30e9)[0]
        assert k_dyn == pytest.approx(2.0 * k_qs, rel=1e-14)
        assert c == pytest.approx(3000.0 * math.sqrt(3.0) / 2.0, rel=1e-14)

    def test_quasistatic_limit(self):
        p = self._friction_for_q(1e-8)
        k_dyn, c = identical_isotropic_dynamic(p, mu=30e9, c_s=3000.0)
        assert k_dyn == pytest.approx(quasistatic_continuum(p, mu=30e9)[0],
                                      rel=1e-15)

    def test_matches_general_solver(self):
        """The closed form must agree with the bimaterial neutral-mode solver
        specialized to identical isotropic half-spaces."""
        side = EffectiveMedium(mu=30e9, c1=3000.0)
        bm = make_bimaterial(side, side)
        for q in np.logspace(-3, 3, 25):
            p = self._friction_for_q(float(q))
            k_cf, c_cf = identical_isotropic_dynamic(p, mu=30e9, c_s=3000.0)
            mode = solve_subsonic(float(q), bm, friction=p)
            assert mode.k_mag == pytest.approx(k_cf, rel=1e-10)
            assert mode.c_over_c1 * 3000.0 == pytest.approx(c_cf, rel=1e-10)

    def test_input_screening(self):
        p = self._friction_for_q(1.0)
        with pytest.raises(DomainError):
            identical_isotropic_dynamic(p, mu=0.0, c_s=3000.0)
        with pytest.raises(DomainError):
            identical_isotropic_dynamic(p, mu=30e9, c_s=-1.0)
        soft = RateState(a=0.01, b=0.005, L=1e-4, sigma_o=1e6, v_o=1e-3)
        assert identical_isotropic_dynamic(soft, mu=30e9, c_s=3000.0) is None


class TestRateOnly:
    def test_three_signs(self):
        strengthening = RateState(a=0.015, b=0.01, L=1e-4, sigma_o=1e6, v_o=1e-3)
        weakening = RateState(a=0.01, b=0.015, L=1e-4, sigma_o=1e6, v_o=1e-3)
        neutral = RateState(a=0.01, b=0.01, L=1e-4, sigma_o=1e6, v_o=1e-3)
        assert rate_only_verdict(strengthening).stable
        assert not rate_only_verdict(strengthening).marginal
        assert not rate_only_verdict(weakening).stable
        assert not rate_only_verdict(weakening).marginal
        v = rate_only_verdict(neutral)
        assert not v.stable and v.marginal


rate_states = st.builds(
    RateState,
    a=st.floats(min_value=1e-3, max_value=0.1),
    b=st.floats(min_value=2e-3, max_value=0.2),
    L=st.floats(min_value=1e-6, max_value=1e-2),
    sigma_o=st.floats(min_value=1e4, max_value=1e9),
    v_o=st.floats(min_value=1e-9, max_value=1.0),
).filter(lambda p: p.weakening)


@given(rate_states, st.floats(min_value=1e8, max_value=1e11),
       st.floats(min_value=1e8, max_value=1e11))
def test_omega_shared_across_closed_forms(p, mu, mu_prime):
    _, w_block = spring_block_critical(p)
    k, c, w_cont = quasistatic_continuum(p, mu=mu, mu_prime=mu_prime)
    assert w_cont == w_block
    assert k * c == pytest.approx(w_cont, rel=1e-12)


@given(rate_states, st.floats(min_value=1e8, max_value=1e11),
       st.floats(min_value=100.0, max_value=10000.0))
def test_dynamic_never_below_quasistatic(p, mu, c_s):
    k_dyn, c = identical_isotropic_dynamic(p, mu=mu, c_s=c_s)
    k_qs = quasistatic_continuum(p, mu=mu)[0]
    assert k_dyn >= k_qs
    assert 0.0 < c < c_s
