"""Rate- and state-dependent friction.

Constitutive law, state evolution (ageing and slip forms), the steady-state
strength curve, the linearized relaxation coefficients used by the spring-block
analysis, and the nondimensional sliding-velocity parameter q that controls the
continuum problem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .errors import DomainError, NonpositiveVelocity, VelocityStrengthening
from .materials import EffectiveMedium


class EvolutionLaw(Enum):
    """State evolution law: Dieterich ageing form or Ruina slip form."""

    AGEING = "ageing"
    SLIP = "slip"


@dataclass(frozen=True)
class RateState:
    """Rate-and-state parameters of the interface.

    a, b are the direct and evolution sensitivities, L the state-evolution
    slip distance (m), sigma_o the normal stress (Pa), v_o the steady sliding
    velocity (m/s) at which the system is perturbed, and f the nominal
    friction coefficient defining the reference strength tau_o = f*sigma_o.
    Velocity weakening means b > a; b <= a is accepted (it makes several
    operations report unconditional stability instead).
    """

    a: float
    b: float
    L: float
    sigma_o: float
    v_o: float
    f: float = 0.6

    def __post_init__(self):
        if not self.a > 0.0:
            raise DomainError(f"direct-effect coefficient a must be positive, got {self.a}")
        if not self.b > 0.0:
            raise DomainError(f"evolution coefficient b must be positive, got {self.b}")
        if not self.L > 0.0:
            raise DomainError(f"state evolution distance L must be positive, got {self.L}")
        if not self.sigma_o > 0.0:
            raise DomainError(f"normal stress sigma_o must be positive, got {self.sigma_o}")
        if not self.v_o > 0.0:
            raise NonpositiveVelocity(f"reference velocity v_o must be positive, got {self.v_o}")
        if not self.f >= 0.0:
            raise DomainError(f"friction coefficient f must be nonnegative, got {self.f}")

    @property
    def tau_o(self) -> float:
        """Reference steady-state strength f*sigma_o at V = v_o."""
        return self.f * self.sigma_o

    @property
    def weakening(self) -> bool:
        """True for steady-state velocity weakening (b > a)."""
        return self.b > self.a


def friction_stress(p: RateState, v: float, theta: float) -> float:
    """Instantaneous strength tau_o + a*sigma_o*ln(V/v_o) + b*sigma_o*ln(v_o*theta/L)."""
    if not v > 0.0:
        raise NonpositiveVelocity(f"V must be positive, got {v}")
    if not theta > 0.0:
        raise DomainError(f"state variable theta must be positive, got {theta}")
    return (p.tau_o
            + p.a * p.sigma_o * math.log(v / p.v_o)
            + p.b * p.sigma_o * math.log(p.v_o * theta / p.L))


def steady_state_stress(p: RateState, v: float) -> float:
    """Steady-state strength tau_o - (b - a)*sigma_o*ln(V/v_o).

    Decreasing in V exactly when b > a.  Raises NonpositiveVelocity for V <= 0.
    """
    if not v > 0.0:
        raise NonpositiveVelocity(f"V must be positive, got {v}")
    return p.tau_o - (p.b - p.a) * p.sigma_o * math.log(v / p.v_o)


def state_rate(law: EvolutionLaw, v: float, theta: float, L: float) -> float:
    """d(theta)/dt under the chosen evolution law.

    Ageing: 1 - V*theta/L (healing at V = 0).  Slip: -(V*theta/L)*ln(V*theta/L),
    which requires V*theta > 0.  Both laws share the steady state theta = L/V.
    """
    if not L > 0.0:
        raise DomainError(f"L must be positive, got {L}")
    if v < 0.0:
        raise NonpositiveVelocity(f"V must be nonnegative, got {v}")
    if law is EvolutionLaw.AGEING:
        if theta < 0.0:
            raise DomainError(f"theta must be nonnegative, got {theta}")
        return 1.0 - v * theta / L
    if law is EvolutionLaw.SLIP:
        x = v * theta / L
        if not x > 0.0:
            raise DomainError(f"slip law needs V*theta/L > 0, got {x}")
        return -x * math.log(x)
    raise DomainError(f"unknown evolution law {law!r}")


class LinearizedLaw(NamedTuple):
    """Coefficients of the linearized friction law about steady sliding.

    d(tau)/dt = direct * dV/dt - relax * [tau - tau_o + weaken * (V - v_o)]
    with direct = a*sigma_o/v_o, relax = v_o/L, weaken = (b - a)*sigma_o/v_o.
    """

    direct: float
    relax: float
    weaken: float


def linearized_coefficients(p: RateState) -> LinearizedLaw:
    """Linearize the friction law about V = v_o, theta = L/v_o."""
    return LinearizedLaw(
        direct=p.a * p.sigma_o / p.v_o,
        relax=p.v_o / p.L,
        weaken=(p.b - p.a) * p.sigma_o / p.v_o,
    )


def nondim_q(p: RateState, slow: EffectiveMedium) -> float:
    """Nondimensional sliding velocity q = mu*v_o / (2*sqrt(a*(b-a))*sigma_o*c1).

    mu and c1 belong to the slow side.  Only defined for velocity weakening;
    b <= a raises VelocityStrengthening.
    """
    if not p.weakening:
        raise VelocityStrengthening(
            f"q requires b > a, got a={p.a}, b={p.b} (steady state does not weaken)"
        )
    return slow.mu * p.v_o / (2.0 * math.sqrt(p.a * (p.b - p.a)) * p.sigma_o * slow.c1)
