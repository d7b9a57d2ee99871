"""Elastodynamic transfer function of the bonded pair of half-spaces.

F relates a slip perturbation of wavenumber k on the interface to the shear
traction it induces, in the Laplace domain: the traction transform is
-(mu/2)*|k|*F(k, p) times the slip transform, with mu the slow-side modulus.
F depends on its arguments only through z = p/(|k|*c1) and the two material
ratios, so everything here is computed in that normalized form.

Three entry points cover the three regimes used by the stability analysis:

* f_laplace   -- complex p with Re(p) >= 0 (imaginary axis taken as the
                 limit from Re(p) > 0, which IEEE signed zeros select
                 automatically),
* f_subsonic  -- real positive F on phase velocities 0 <= c < c1,
* f_intersonic -- the complex limit F1 + i*F2 on c1 < c < c1', where waves
                 radiate into the slow side but remain trapped in the fast one.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import BranchPole, DomainError, EmptyInterval
from .materials import BiMaterial

__all__ = ["f_laplace", "f_normalized", "f_subsonic", "f_intersonic"]


def f_normalized(z, mu_ratio: float, speed_ratio: float):
    """Scale-invariant transfer function of z = p/(|k|*c1).

    F = 2*m*w'*w / (w + m*w') with w = sqrt(1 + z^2), w' = sqrt(1 + (z/r)^2),
    m = mu'/mu and r = c1'/c1, principal square roots throughout.  Accepts a
    complex scalar or any ndarray of them; returns the matching shape.
    Identical media (m = 1, r = 1) reduce F to sqrt(1 + z^2), and z = 0 gives
    the static value 2*mu'/(mu + mu').
    """
    z = np.asarray(z, dtype=complex)
    z2 = z * z
    w_slow = np.sqrt(1.0 + z2)
    w_fast = np.sqrt(1.0 + z2 / (speed_ratio * speed_ratio))
    denom = w_slow + mu_ratio * w_fast
    if np.any(denom == 0.0):
        raise BranchPole("transfer-function denominator vanished")
    out = 2.0 * mu_ratio * w_fast * w_slow / denom
    if out.ndim == 0:
        return complex(out)
    return out


def f_laplace(k: float, p: complex, bm: BiMaterial) -> complex:
    """Transfer function at wavenumber k and Laplace variable p.

    Defined on the closed right half-plane; points with Re(p) = 0 are
    evaluated as the limit from Re(p) > 0 (conjugate symmetric: the sign of
    Im(p) picks the side).  k = 0 has no length scale and is rejected.
    """
    if k == 0.0:
        raise DomainError("k = 0 carries no wavelength; transfer function undefined")
    p = complex(p)
    if p.real < 0.0:
        raise DomainError(f"Re(p) must be >= 0, got p = {p}")
    if p.real == 0.0:
        # normalize -0.0 so the branch limit comes from Re(p) > 0
        p = complex(0.0, p.imag)
    z = p / (abs(k) * bm.slow.c1)
    return f_normalized(z, bm.mu_ratio, bm.speed_ratio)


def f_subsonic(c_over_c1: float, bm: BiMaterial) -> float:
    """Real transfer function on the subsonic branch p = i*|k|*c, 0 <= c < c1.

    F = 2*mu'*beta'*beta / (mu*beta + mu'*beta') with beta = sqrt(1 - c^2/c1^2)
    and beta' = sqrt(1 - c^2/c1'^2).  Strictly decreasing in c, from
    2*mu'/(mu + mu') at c = 0 to 0 at c = c1.
    """
    x = c_over_c1
    if not 0.0 <= x < 1.0:
        raise DomainError(f"subsonic branch needs 0 <= c/c1 < 1, got {x}")
    m = bm.mu_ratio
    r = bm.speed_ratio
    # (1-x) is exact for x in [0.5, 1); the factored forms avoid the
    # cancellation that 1 - x*x suffers as c -> c1
    beta = math.sqrt((1.0 - x) * (1.0 + x))
    beta_fast = math.sqrt(((r - 1.0) + (1.0 - x)) * (r + x)) / r
    return 2.0 * m * beta_fast * beta / (beta + m * beta_fast)


def f_intersonic(c_over_c1: float, bm: BiMaterial) -> complex:
    """Complex limit F1 + i*F2 on the intersonic branch c1 < c < c1'.

    Approaching p = i*|k|*c from Re(p) > 0 turns the slow-side root into
    i*s with s = sqrt(c^2/c1^2 - 1) while the fast-side root stays real,
    beta' = sqrt(1 - c^2/c1'^2).  Rationalizing,

        F1 = 2*mu*mu'*beta'*s^2 / D,   F2 = 2*(mu'*beta')^2*s / D,
        D  = (mu'*beta')^2 + (mu*s)^2,

    both strictly positive on the open interval.  Equal wave speeds leave no
    interval at all and raise EmptyInterval.
    """
    x = c_over_c1
    m = bm.mu_ratio
    r = bm.speed_ratio
    if r == 1.0:
        raise EmptyInterval("equal wave speeds: the intersonic interval is empty")
    if not 1.0 < x < r:
        raise DomainError(f"intersonic branch needs 1 < c/c1 < {r}, got {x}")
    s2 = (x - 1.0) * (x + 1.0)
    s = math.sqrt(s2)
    beta_fast = math.sqrt(((r - 1.0) - (x - 1.0)) * (r + x)) / r
    mb = m * beta_fast
    d = mb * mb + s2
    return complex(2.0 * m * beta_fast * s2 / d, 2.0 * mb * mb * s / d)
