"""Neutral (Hopf) modes of steady sliding and the critical wavenumber.

At a neutral mode the characteristic equation of the linearized interface
problem has a purely imaginary root p = i*|k|*c.  Splitting that condition
into real and imaginary parts leaves, per branch of the transfer function,
one scalar equation for the phase velocity c and one for the wavenumber:

* subsonic (0 < c < c1):  (c/c1)/F(c) = q, with q the nondimensional sliding
  velocity; then |k|*c = sqrt((b-a)/a)*v_o/L, independent of elasticity.
* intersonic (c1 < c < c1'):  sqrt(b/a-1)*(c/c1) /
  [sqrt((F2*b/2a)^2 + (b/a-1)*F1^2) - F2*b/2a + F2] = q; then
  |k|*c = [sqrt((b/a)^2*F2^2/(4*F1^2) + (b-a)/a) - (b/a)*F2/(2*F1)]*v_o/L.

Reported wavenumbers are normalized as k_hat = |k|*L*mu*mu' /
((b-a)*sigma_o*(mu+mu')), which tends to 1 in the quasi-static limit q -> 0.
On the subsonic branch k_hat = F(0)/F(c) identically.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, EmptyIntervalWarning, SlipStabError, VelocityStrengthening
from .friction import RateState, nondim_q
from .materials import BiMaterial

__all__ = [
    "Branch",
    "NeutralMode",
    "Stability",
    "StabilityVerdict",
    "SweepRow",
    "solve_subsonic",
    "solve_intersonic",
    "critical_mode",
    "sweep_q",
]


class Branch(str, Enum):
    """Which branch of the transfer function carries the neutral mode."""

    SUBSONIC = "subsonic"
    INTERSONIC = "intersonic"


@dataclass(frozen=True)
class NeutralMode:
    """One neutrally propagating perturbation of steady sliding.

    c_over_c1 and k_hat are always set; k_mag (1/m) and omega (rad/s) are
    populated only when the solve was given dimensional friction parameters.
    """

    branch: Branch
    c_over_c1: float
    k_hat: float
    k_mag: float | None = None
    omega: float | None = None


class Stability(str, Enum):
    ALWAYS_STABLE = "always-stable"
    CRITICAL_MODE = "critical-mode"
    ILL_DEFINED = "ill-defined"


@dataclass(frozen=True)
class StabilityVerdict:
    """Outcome of the critical-mode search.

    b <= a gives ALWAYS_STABLE with no mode; velocity weakening gives
    CRITICAL_MODE carrying the neutral mode of largest wavenumber.
    ILL_DEFINED is reserved for degenerate inputs (none are currently
    constructible: RateState validation screens them out).
    """

    status: Stability
    mode: NeutralMode | None = None

    def __post_init__(self):
        if self.status is Stability.CRITICAL_MODE and self.mode is None:
            raise DomainError("critical-mode verdict requires a mode")
        if self.status is not Stability.CRITICAL_MODE and self.mode is not None:
            raise DomainError(f"{self.status.value} verdict cannot carry a mode")


@dataclass(frozen=True)
class SweepRow:
    """One row of a q sweep: a neutral mode tagged with its q."""

    q: float
    branch: Branch
    c_over_c1: float
    k_hat: float


def _subsonic_g(t: float, m: float, r: float) -> float:
    """Monotone image of the subsonic phase-velocity equation.

    With t = (c/c1)^2 / (1 - (c/c1)^2) the equation (c/c1)/F(c) = q becomes
    g(t) = sqrt(t) * (h(t) + m) / (2*m) = q, where h = beta/beta' =
    r / sqrt(r^2 + t*(r^2-1)).  g is strictly increasing on t > 0, so the
    root is unique; t is used instead of c/c1 because it keeps both c/c1
    and 1 - (c/c1)^2 (hence k_hat) at full float accuracy for all q.
    """
    h = r / math.sqrt(r * r + t * (r * r - 1.0))
    return math.sqrt(t) * (h + m) / (2.0 * m)


def _dimensional_fields(x: float, omega_hat: float, friction: RateState,
                        bm: BiMaterial) -> tuple[float, float]:
    """(|k|, omega) from c/c1 and the nondimensional frequency omega*L/v_o."""
    lam = friction.v_o / friction.L
    omega = omega_hat * lam
    k_mag = omega / (x * bm.slow.c1)
    return k_mag, omega


def _check_friction(q: float, friction: RateState, bm: BiMaterial) -> None:
    q_dim = nondim_q(friction, bm.slow)
    if abs(q_dim - q) > 1e-9 * q:
        raise DomainError(
            f"friction parameters give q = {q_dim}, inconsistent with requested q = {q}"
        )


def solve_subsonic(q: float, bm: BiMaterial,
                   friction: RateState | None = None) -> NeutralMode:
    """Locate the unique subsonic neutral mode for sliding velocity q > 0.

    Bracketed bisection on the monotone form of the phase-velocity equation;
    the brackets are closed-form ((2*m*q/(1+m))^2 from below, 4*q^2 from
    above) and the iteration runs to float resolution, leaving a relative
    residual well under 1e-12.  Pass `friction` (its q must agree with the
    q argument) to populate the dimensional fields.

    Returns a NeutralMode with k_hat = F(0)/F(c) >= 1 and, dimensionally,
    |k| = sqrt((b-a)/a)*(v_o/L)/c and omega = |k|*c.
    """
    if not q > 0.0:
        raise DomainError(f"q must be positive, got {q}")
    if friction is not None:
        _check_friction(q, friction, bm)
    m = bm.mu_ratio
    r = bm.speed_ratio

    # g(t_lo) <= q <= g(t_hi) holds exactly in real arithmetic (h <= 1 and
    # h + m > m); the while guards absorb rounding of the endpoints
    t_lo = (2.0 * m * q / (1.0 + m)) ** 2
    t_hi = 4.0 * q * q
    while _subsonic_g(t_lo, m, r) > q:
        t_lo *= 0.5
    while _subsonic_g(t_hi, m, r) <= q:
        t_hi *= 2.0
    for _ in range(200):
        t_mid = math.sqrt(t_lo * t_hi)
        if not t_lo < t_mid < t_hi:
            break
        if _subsonic_g(t_mid, m, r) <= q:
            t_lo = t_mid
        else:
            t_hi = t_mid
    # closer endpoint by residual
    t = t_lo if q - _subsonic_g(t_lo, m, r) <= _subsonic_g(t_hi, m, r) - q else t_hi

    x = math.sqrt(t / (1.0 + t))
    h = r / math.sqrt(r * r + t * (r * r - 1.0))
    f0 = 2.0 * m / (1.0 + m)
    # k_hat = F(0)/F(c), evaluated from t so no accuracy is lost as c -> c1
    k_hat = f0 * (h + m) * math.sqrt(1.0 + t) / (2.0 * m)

    k_mag = omega = None
    if friction is not None:
        w = (friction.b - friction.a) / friction.a
        k_mag, omega = _dimensional_fields(x, math.sqrt(w), friction, bm)
    return NeutralMode(branch=Branch.SUBSONIC, c_over_c1=x, k_hat=k_hat,
                       k_mag=k_mag, omega=omega)


def _intersonic_q(x, m: float, r: float, b_over_a: float):
    """Left side of the intersonic phase-velocity equation at c/c1 = x.

    Vectorized over x.  Written with the root-difference rationalized so the
    endpoint limits (F1, F2 -> 0) stay fully accurate.
    """
    w = b_over_a - 1.0
    s2 = (x - 1.0) * (x + 1.0)
    s = np.sqrt(s2)
    beta_fast = np.sqrt((r - x) * (r + x)) / r
    mb = m * beta_fast
    d = mb * mb + s2
    f1 = 2.0 * m * beta_fast * s2 / d
    f2 = 2.0 * mb * mb * s / d
    a_half = 0.5 * b_over_a * f2
    # sqrt(a_half^2 + w*f1^2) - a_half, without cancellation
    root_diff = w * f1 * f1 / (np.sqrt(a_half * a_half + w * f1 * f1) + a_half)
    return math.sqrt(w) * x / (root_diff + f2)


def _intersonic_mode(x: float, q: float, m: float, r: float, b_over_a: float,
                     friction: RateState | None, bm: BiMaterial) -> NeutralMode:
    """Assemble a NeutralMode at an intersonic root x of the phase equation."""
    w = b_over_a - 1.0
    s2 = (x - 1.0) * (x + 1.0)
    s = math.sqrt(s2)
    beta_fast = math.sqrt(((r - 1.0) - (x - 1.0)) * (r + x)) / r
    mb = m * beta_fast
    d = mb * mb + s2
    f1 = 2.0 * m * beta_fast * s2 / d
    f2 = 2.0 * mb * mb * s / d
    x_tilde = 0.5 * b_over_a * f2 / f1
    # omega*L/v_o = sqrt(x_tilde^2 + w) - x_tilde, rationalized
    omega_hat = w / (math.sqrt(x_tilde * x_tilde + w) + x_tilde)
    f0 = 2.0 * m / (1.0 + m)
    k_hat = q * f0 * omega_hat / (x * math.sqrt(w))
    k_mag = omega = None
    if friction is not None:
        k_mag, omega = _dimensional_fields(x, omega_hat, friction, bm)
    return NeutralMode(branch=Branch.INTERSONIC, c_over_c1=x, k_hat=k_hat,
                       k_mag=k_mag, omega=omega)


def solve_intersonic(q: float, b_over_a: float, bm: BiMaterial,
                     friction: RateState | None = None,
                     scan_points: int = 2048) -> list[NeutralMode]:
    """All intersonic neutral modes at sliding velocity q, sorted by c.

    The phase-velocity equation's left side diverges at both ends of
    (c1, c1'), so modes come in pairs: none below a window minimum in q,
    generically two above it.  A uniform scan of `scan_points` samples over
    (c1*(1 + 1e-9), c1'*(1 - 1e-9)) brackets every sign change, and each
    bracket is bisected to float resolution.  Pairs closer than the scan
    spacing (q barely above the window minimum) can evade the scan; counts
    are reported as found.

    Equal wave speeds return [] under EmptyIntervalWarning.  The intersonic
    equations involve b/a on their own, hence the extra argument; it must be
    > 1 (velocity weakening).
    """
    if not q > 0.0:
        raise DomainError(f"q must be positive, got {q}")
    if not b_over_a > 1.0:
        raise DomainError(f"intersonic modes require b/a > 1, got {b_over_a}")
    if friction is not None:
        _check_friction(q, friction, bm)
        if abs(friction.b / friction.a - b_over_a) > 1e-9 * b_over_a:
            raise DomainError(
                f"friction parameters give b/a = {friction.b / friction.a}, "
                f"inconsistent with requested {b_over_a}"
            )
    m = bm.mu_ratio
    r = bm.speed_ratio
    if r == 1.0:
        warnings.warn("equal wave speeds: no intersonic interval",
                      EmptyIntervalWarning, stacklevel=2)
        return []

    x_lo = 1.0 + 1e-9
    x_hi = r * (1.0 - 1e-9)
    if not x_lo < x_hi:
        warnings.warn("wave speeds too close to resolve an intersonic interval",
                      EmptyIntervalWarning, stacklevel=2)
        return []
    xs = np.linspace(x_lo, x_hi, scan_points)
    delta = _intersonic_q(xs, m, r, b_over_a) - q

    roots: list[float] = []
    for i in range(scan_points - 1):
        if delta[i] == 0.0:
            roots.append(float(xs[i]))
            continue
        if delta[i] * delta[i + 1] < 0.0:
            lo, hi = float(xs[i]), float(xs[i + 1])
            g_lo = float(delta[i])
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                if not lo < mid < hi:
                    break
                g_mid = float(_intersonic_q(mid, m, r, b_over_a)) - q
                if g_mid == 0.0:
                    lo = hi = mid
                    break
                if (g_mid > 0.0) == (g_lo > 0.0):
                    lo, g_lo = mid, g_mid
                else:
                    hi = mid
            roots.append(0.5 * (lo + hi))
    if delta[-1] == 0.0:
        roots.append(float(xs[-1]))

    modes = []
    for x in roots:
        resid = abs(float(_intersonic_q(x, m, r, b_over_a)) - q)
        if resid > 1e-10 * q:
            raise SlipStabError(
                f"intersonic root at c/c1 = {x} left residual {resid / q:.3e} (relative)"
            )
        modes.append(_intersonic_mode(x, q, m, r, b_over_a, friction, bm))
    modes.sort(key=lambda mo: mo.c_over_c1)
    return modes


def critical_mode(p: RateState, bm: BiMaterial) -> StabilityVerdict:
    """Stability verdict for steady sliding: the neutral mode of largest |k|.

    b <= a never destabilizes (ALWAYS_STABLE).  Otherwise perturbations of
    wavenumber above the critical one decay and below it grow, so the
    largest-|k| neutral mode over both branches is the critical mode; the
    subsonic branch supplies it, and its phase velocity obeys
    c < min(c1, c1').
    """
    if not p.weakening:
        return StabilityVerdict(status=Stability.ALWAYS_STABLE)
    q = nondim_q(p, bm.slow)
    candidates = [solve_subsonic(q, bm, friction=p)]
    if bm.speed_ratio > 1.0:
        candidates.extend(solve_intersonic(q, p.b / p.a, bm, friction=p))
    best = max(candidates, key=lambda mo: mo.k_hat)
    return StabilityVerdict(status=Stability.CRITICAL_MODE, mode=best)


def sweep_q(q_grid, b_over_a: float, bm: BiMaterial,
            max_workers: int | None = None) -> list[SweepRow]:
    """Neutral modes over a grid of q values, in grid order.

    Each q contributes its subsonic mode first, then any intersonic modes in
    ascending phase velocity.  The grid must be positive and sorted
    ascending.  Rows are deterministic; `max_workers` > 1 only parallelizes
    the per-q solves (results keep grid order).
    """
    qs = [float(v) for v in q_grid]
    if len(qs) == 0:
        raise DomainError("q grid is empty")
    if any(not v > 0.0 for v in qs):
        raise DomainError("q grid must be strictly positive")
    if any(b > c for b, c in zip(qs, qs[1:])):
        raise DomainError("q grid must be sorted ascending")
    if not b_over_a > 1.0:
        raise DomainError(f"sweep requires velocity weakening b/a > 1, got {b_over_a}")

    def rows_for(q: float) -> list[SweepRow]:
        sub = solve_subsonic(q, bm)
        out = [SweepRow(q=q, branch=Branch.SUBSONIC,
                        c_over_c1=sub.c_over_c1, k_hat=sub.k_hat)]
        if bm.speed_ratio > 1.0:
            for mo in solve_intersonic(q, b_over_a, bm):
                out.append(SweepRow(q=q, branch=Branch.INTERSONIC,
                                    c_over_c1=mo.c_over_c1, k_hat=mo.k_hat))
        return out

    if max_workers is not None and max_workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            chunks = list(pool.map(rows_for, qs))
    else:
        chunks = [rows_for(q) for q in qs]
    return [row for chunk in chunks for row in chunk]
