"""Nonlinear spring-block integration and the stiffness estimator."""

from __future__ import annotations

import numpy as np
import pytest

from slipstab import (
    BlockState,
    DomainError,
    EvolutionLaw,
    RateState,
    SpringBlockParams,
    VelocityStrengthening,
    estimate_critical_stiffness,
    friction_stress,
    simulate_spring_block,
    spring_block_critical,
)

FR = RateState(a=0.01, b=0.015, L=1e-5, sigma_o=1e6, v_o=1e-3)
K_CR, W_CR = spring_block_critical(FR)
INERTIAL_MASS = 0.5 * FR.a * FR.sigma_o * FR.L / FR.v_o ** 2


def perturbed(rel=1e-3):
    v = (1.0 + rel) * FR.v_o
    return BlockState(v=v, theta=FR.L / FR.v_o,
                      tau=friction_stress(FR, v, FR.L / FR.v_o))


def test_block_state_validation():
    with pytest.raises(DomainError):
        BlockState(v=0.0, theta=1.0, tau=0.0)
    with pytest.raises(DomainError):
        BlockState(v=1e-3, theta=-1.0, tau=0.0)


def test_argument_validation():
    sb = SpringBlockParams(stiffness=K_CR, mass=0.0, friction=FR)
    with pytest.raises(DomainError):
        simulate_spring_block(sb, EvolutionLaw.AGEING, duration=0.0)
    with pytest.raises(DomainError):
        simulate_spring_block(sb, EvolutionLaw.AGEING, tol=0.0)


@pytest.mark.parametrize("law", [EvolutionLaw.AGEING, EvolutionLaw.SLIP])
@pytest.mark.parametrize("mass", [0.0, INERTIAL_MASS])
def test_steady_state_is_a_fixed_point(law, mass):
    sb = SpringBlockParams(stiffness=K_CR, mass=mass, friction=FR)
    traj = simulate_spring_block(sb, law)
    # the log-variable right side is exactly zero at steady sliding
    assert np.max(np.abs(traj.v / FR.v_o - 1.0)) < 1e-12
    assert np.max(np.abs(traj.theta * FR.v_o / FR.L - 1.0)) < 1e-12
    assert not traj.blew_up


def test_stiff_spring_decays():
    sb = SpringBlockParams(stiffness=2.0 * K_CR, mass=0.0, friction=FR)
    traj = simulate_spring_block(sb, EvolutionLaw.AGEING, init=perturbed())
    x = np.abs(traj.v - FR.v_o)
    n = x.size
    assert not traj.blew_up
    assert np.max(x[-n // 10:]) < 1e-3 * np.max(x[: n // 10])


def test_soft_spring_runs_away():
    sb = SpringBlockParams(stiffness=0.5 * K_CR, mass=0.0, friction=FR)
    traj = simulate_spring_block(sb, EvolutionLaw.AGEING, init=perturbed())
    assert traj.blew_up
    # terminated early, well before the nominal duration
    assert traj.t[-1] < 200.0 * FR.L / FR.v_o


@pytest.mark.parametrize("law", [EvolutionLaw.AGEING, EvolutionLaw.SLIP])
def test_slip_and_ageing_agree_on_the_verdict(law):
    stiff = SpringBlockParams(stiffness=2.0 * K_CR, mass=0.0, friction=FR)
    traj = simulate_spring_block(stiff, law, init=perturbed())
    assert not traj.blew_up
    soft = SpringBlockParams(stiffness=0.5 * K_CR, mass=0.0, friction=FR)
    traj = simulate_spring_block(soft, law, init=perturbed())
    assert traj.blew_up


def test_metadata_and_sampling():
    sb = SpringBlockParams(stiffness=2.0 * K_CR, mass=0.0, friction=FR)
    traj = simulate_spring_block(sb, EvolutionLaw.SLIP, init=perturbed())
    md = traj.metadata
    assert md["law"] == "slip"
    assert md["stiffness"] == 2.0 * K_CR
    assert md["mass"] == 0.0
    assert md["blew_up"] is False
    assert md["nfev"] > 0
    assert np.all(np.diff(traj.t) > 0.0)
    assert traj.t.shape == traj.v.shape == traj.theta.shape == traj.tau.shape
    # dense enough to resolve the linear oscillation
    assert traj.t[1] - traj.t[0] <= 2.0 * np.pi / W_CR / 64.0


def test_massless_stress_follows_strength():
    sb = SpringBlockParams(stiffness=2.0 * K_CR, mass=0.0, friction=FR)
    traj = simulate_spring_block(sb, EvolutionLaw.AGEING, init=perturbed())
    for i in (0, len(traj.t) // 2, -1):
        assert traj.tau[i] == pytest.approx(
            friction_stress(FR, traj.v[i], traj.theta[i]), rel=1e-9)


def test_tolerance_convergence():
    sb = SpringBlockParams(stiffness=2.0 * K_CR, mass=0.0, friction=FR)
    ref = simulate_spring_block(sb, EvolutionLaw.AGEING, init=perturbed(),
                                tol=1e-12)
    errs = []
    for tol in (1e-6, 1e-8, 1e-10):
        traj = simulate_spring_block(sb, EvolutionLaw.AGEING, init=perturbed(),
                                     tol=tol)
        errs.append(np.max(np.abs(traj.v - ref.v)) / FR.v_o)
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 1e-11


def test_estimator_matches_linear_theory():
    k_est, w_est = estimate_critical_stiffness(FR, EvolutionLaw.AGEING)
    assert k_est == pytest.approx(K_CR, rel=0.02)
    assert w_est == pytest.approx(W_CR, rel=0.02)


def test_estimator_insensitive_to_perturbation_size():
    k1, _ = estimate_critical_stiffness(FR, EvolutionLaw.AGEING,
                                        perturbation=1e-3)
    k2, _ = estimate_critical_stiffness(FR, EvolutionLaw.AGEING,
                                        perturbation=1e-2)
    assert abs(k2 - k1) <= 5e-3 * k1


def test_estimator_rejects_strengthening():
    soft = RateState(a=0.01, b=0.008, L=1e-5, sigma_o=1e6, v_o=1e-3)
    with pytest.raises(VelocityStrengthening):
        estimate_critical_stiffness(soft, EvolutionLaw.AGEING)
