"""Rate-state constitutive pieces and the nondimensional loading parameter."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from slipstab import (
    DomainError,
    EffectiveMedium,
    EvolutionLaw,
    NonpositiveVelocity,
    RateState,
    VelocityStrengthening,
    friction_stress,
    linearized_coefficients,
    nondim_q,
    state_rate,
    steady_state_stress,
)


@pytest.fixture
def weakening():
    return RateState(a=0.01, b=0.015, L=1e-4, sigma_o=1e6, v_o=1e-3)


def test_tau_o_is_reference_strength(weakening):
    assert weakening.tau_o == pytest.approx(0.6 * 1e6)
    custom = RateState(a=0.01, b=0.015, L=1e-4, sigma_o=1e6, v_o=1e-3, f=0.4)
    assert custom.tau_o == pytest.approx(0.4 * 1e6)


def test_weakening_flag():
    assert RateState(a=0.01, b=0.015, L=1e-4, sigma_o=1e6, v_o=1e-3).weakening
    assert not RateState(a=0.01, b=0.01, L=1e-4, sigma_o=1e6, v_o=1e-3).weakening
    assert not RateState(a=0.01, b=0.008, L=1e-4, sigma_o=1e6, v_o=1e-3).weakening


@pytest.mark.parametrize("field,value", [
    ("a", 0.0), ("a", -0.01), ("L", 0.0), ("sigma_o", -1e6), ("v_o", 0.0),
])
def test_invalid_parameters_rejected(field, value):
    kwargs = dict(a=0.01, b=0.015, L=1e-4, sigma_o=1e6, v_o=1e-3)
    kwargs[field] = value
    with pytest.raises(ValueError):
        RateState(**kwargs)


def test_friction_stress_at_reference_point(weakening):
    p = weakening
    # V = v_o and theta = L/v_o zero both logarithms
    assert friction_stress(p, p.v_o, p.L / p.v_o) == pytest.approx(p.tau_o)


def test_friction_stress_direct_and_state_terms(weakening):
    p = weakening
    tau = friction_stress(p, math.e * p.v_o, p.L / p.v_o)
    assert tau == pytest.approx(p.tau_o + p.a * p.sigma_o, rel=1e-12)
    tau = friction_stress(p, p.v_o, math.e * p.L / p.v_o)
    assert tau == pytest.approx(p.tau_o + p.b * p.sigma_o, rel=1e-12)


def test_steady_state_slope(weakening):
    p = weakening
    # tau_ss(V) = tau_o - (b-a)*sigma_o*ln(V/v_o): weakening slope is negative
    up = steady_state_stress(p, 10.0 * p.v_o)
    assert up == pytest.approx(p.tau_o - (p.b - p.a) * p.sigma_o * math.log(10.0),
                               rel=1e-12)
    with pytest.raises(NonpositiveVelocity):
        steady_state_stress(p, 0.0)


def test_state_rate_zero_at_steady_state(weakening):
    p = weakening
    theta_ss = p.L / p.v_o
    for law in EvolutionLaw:
        assert state_rate(law, p.v_o, theta_ss, p.L) == pytest.approx(0.0, abs=1e-15)


def test_state_rate_signs(weakening):
    p = weakening
    theta_ss = p.L / p.v_o
    for law in EvolutionLaw:
        # above steady state the state relaxes downward
        assert state_rate(law, p.v_o, 2.0 * theta_ss, p.L) < 0.0
        assert state_rate(law, p.v_o, 0.5 * theta_ss, p.L) > 0.0


def test_ageing_law_stationary_contact():
    # V = 0: ageing grows at unit rate, slip law needs V*theta > 0
    assert state_rate(EvolutionLaw.AGEING, 0.0, 1.0, 1e-4) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        state_rate(EvolutionLaw.SLIP, 0.0, 1.0, 1e-4)


def test_linearized_coefficients(weakening):
    p = weakening
    lin = linearized_coefficients(p)
    assert lin.direct == pytest.approx(p.a * p.sigma_o / p.v_o, rel=1e-15)
    assert lin.relax == pytest.approx(p.v_o / p.L, rel=1e-15)
    assert lin.weaken == pytest.approx((p.b - p.a) * p.sigma_o / p.v_o, rel=1e-15)


def test_nondim_q_worked_example():
    # mu = 30 GPa, c1 = sqrt(mu/rho) with rho = 3000, sigma_o = 100 MPa,
    # v_o = 1 cm/s, a = 0.01, b = 0.015: q comes out near 0.067
    p = RateState(a=0.01, b=0.015, L=1e-4, sigma_o=1e8, v_o=1e-2)
    slow = EffectiveMedium(mu=30e9, c1=math.sqrt(30e9 / 3000.0))
    q = nondim_q(p, slow)
    ref = 30e9 * 1e-2 / (2.0 * math.sqrt(0.01 * 0.005) * 1e8 * slow.c1)
    assert q == pytest.approx(ref, rel=1e-15)
    assert q == pytest.approx(0.0670820393249937, rel=1e-13)
    assert q == pytest.approx(0.0671, rel=1e-3)


def test_nondim_q_rejects_strengthening():
    p = RateState(a=0.01, b=0.008, L=1e-4, sigma_o=1e6, v_o=1e-3)
    with pytest.raises(VelocityStrengthening):
        nondim_q(p, EffectiveMedium(mu=30e9, c1=3000.0))


@given(st.floats(min_value=1e-6, max_value=1.0),
       st.floats(min_value=1.01, max_value=3.0),
       st.floats(min_value=1e-9, max_value=1e3))
def test_nondim_q_scales_linearly_in_velocity(a, ratio, v_o):
    p = RateState(a=a, b=ratio * a, L=1e-4, sigma_o=1e6, v_o=v_o)
    doubled = RateState(a=a, b=ratio * a, L=1e-4, sigma_o=1e6, v_o=2.0 * v_o)
    slow = EffectiveMedium(mu=30e9, c1=3000.0)
    assert nondim_q(doubled, slow) == pytest.approx(2.0 * nondim_q(p, slow),
                                                    rel=1e-12)
