"""Certification suite: every release gate as a callable check.

Each check returns a VerifyResult and enforces its own tolerance and, where
stated, its wall-clock budget, so `slipstab verify` and the acceptance tests
share one implementation and cannot drift apart.  Checks build dimensional
parameter sets from the nondimensional loading q so the same code paths the
sweeps use are exercised end to end.
"""

from __future__ import annotations

import csv
import math
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .closed_forms import quasistatic_continuum, spring_block_critical
from .dispersion import CharParams, count_unstable
from .friction import EvolutionLaw, RateState
from .materials import (BiMaterial, EffectiveMedium, ShearStiffness,
                        effective_medium, make_bimaterial)
from .neutral import (Branch, Stability, critical_mode, solve_intersonic,
                      solve_subsonic)
from .simulate import estimate_critical_stiffness
from .transfer import f_intersonic, f_laplace, f_subsonic

__all__ = ["VerifyResult", "run_all", "ALL_CHECKS", "FIGURE_PRESETS"]

# (speed_ratio, mu_ratio) pairs behind fig1..fig8, all swept at b/a = 1.2
FIGURE_PRESETS: tuple[tuple[float, float], ...] = (
    (1.2, 1.0), (5.0, 1.0), (5.0, 10.0), (5.0, 0.1),
)
FIGURE_B_OVER_A = 1.2
FIGURE_Q_GRID = (1e-2, 1e1, 200)


@dataclass(frozen=True)
class VerifyResult:
    name: str
    ok: bool
    detail: str
    elapsed: float

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        return f"{tag} {self.name}: {self.detail} [{self.elapsed:.2f}s]"


def _dimensional_pair(q: float, b_over_a: float, speed_ratio: float,
                      mu_ratio: float, *, a: float = 0.01,
                      sigma_o: float = 1e6, L: float = 1e-4,
                      mu: float = 30e9, c1: float = 3000.0):
    """Friction and bi-material realizing a given q on the slow side."""
    b = a * b_over_a
    v_o = q * 2.0 * math.sqrt(a * (b - a)) * sigma_o * c1 / mu
    friction = RateState(a=a, b=b, L=L, sigma_o=sigma_o, v_o=v_o)
    bm = make_bimaterial(EffectiveMedium(mu=mu, c1=c1),
                         EffectiveMedium(mu=mu * mu_ratio, c1=c1 * speed_ratio))
    return friction, bm


def check_identical_reduction() -> VerifyResult:
    """Identical isotropic media reduce to the closed dynamic solution."""
    t0 = time.perf_counter()
    bm = BiMaterial.from_ratios(1.0, 1.0)
    worst = 0.0
    for q in np.logspace(-3.0, 3.0, 50):
        q = float(q)
        mode = solve_subsonic(q, bm)
        x_ref = q / math.sqrt(1.0 + q * q)
        k_ref = math.sqrt(1.0 + q * q)
        worst = max(worst,
                    abs(mode.c_over_c1 - x_ref) / x_ref,
                    abs(mode.k_hat - k_ref) / k_ref)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-10 and elapsed < 1.0
    return VerifyResult("identical-isotropic reduction", ok,
                        f"worst rel err {worst:.2e} (tol 1e-10) over 50 q",
                        elapsed)


def check_subsonic_identity() -> VerifyResult:
    """k_hat = F(0)/F(c) and |k|c = sqrt((b-a)/a)*v_o/L on every sweep row."""
    t0 = time.perf_counter()
    lo, hi, n = FIGURE_Q_GRID
    grid = np.logspace(math.log10(lo), math.log10(hi), n)
    worst_k = worst_w = 0.0
    for speed_ratio, mu_ratio in FIGURE_PRESETS:
        f0 = 2.0 * mu_ratio / (1.0 + mu_ratio)
        for q in grid:
            fr, bm = _dimensional_pair(float(q), FIGURE_B_OVER_A,
                                       speed_ratio, mu_ratio)
            mode = solve_subsonic(float(q), bm, friction=fr)
            k_ident = f0 / f_subsonic(mode.c_over_c1, bm)
            worst_k = max(worst_k, abs(mode.k_hat - k_ident) / k_ident)
            w_ref = math.sqrt((fr.b - fr.a) / fr.a) * fr.v_o / fr.L
            w_num = mode.k_mag * mode.c_over_c1 * bm.slow.c1
            worst_w = max(worst_w, abs(w_num - w_ref) / w_ref)
    elapsed = time.perf_counter() - t0
    ok = worst_k <= 1e-12 and worst_w <= 1e-12 and elapsed < 1.0
    return VerifyResult("subsonic identity", ok,
                        f"worst k_hat err {worst_k:.2e}, worst |k|c err "
                        f"{worst_w:.2e} (tol 1e-12) over 4x{n} rows",
                        elapsed)


def check_quasistatic_limits() -> VerifyResult:
    """q -> 0 recovers the quasi-static critical wavenumbers."""
    t0 = time.perf_counter()
    worst_pair = 0.0
    for speed_ratio, mu_ratio in FIGURE_PRESETS:
        fr, bm = _dimensional_pair(1e-6, FIGURE_B_OVER_A, speed_ratio, mu_ratio)
        mode = solve_subsonic(1e-6, bm, friction=fr)
        mu, mu_p = bm.slow.mu, bm.fast.mu
        k_ref = (fr.b - fr.a) * fr.sigma_o * (mu + mu_p) / (fr.L * mu * mu_p)
        worst_pair = max(worst_pair, abs(mode.k_mag - k_ref) / k_ref)

    # orthotropic sliding on isotropic: the dissimilar formula written with
    # effective moduli must match the dedicated reduction
    orth = ShearStiffness(c44=28e9, c45=0.0, c55=40e9, rho=2700.0)
    slow = effective_medium(orth)
    mu_iso, rho_iso = 32e9, 1800.0
    iso = EffectiveMedium(mu=mu_iso, c1=math.sqrt(mu_iso / rho_iso))
    bm = make_bimaterial(slow, iso)
    a, b, L, sigma_o = 0.01, 0.012, 1e-4, 1e6
    v_o = 1e-6 * 2.0 * math.sqrt(a * (b - a)) * sigma_o * bm.slow.c1 / bm.slow.mu
    fr = RateState(a=a, b=b, L=L, sigma_o=sigma_o, v_o=v_o)
    k_named = (sigma_o * (b - a) / L
               * (1.0 + mu_iso / math.sqrt(orth.c55 * orth.c44)) / mu_iso)
    k_closed = quasistatic_continuum(fr, mu_iso, mu_prime=bm.slow.mu)[0]
    err_closed = abs(k_closed - k_named) / k_named
    k_reduction = quasistatic_continuum(fr, mu_iso, orthotropic=orth)[0]
    err_reduction = abs(k_reduction - k_named) / k_named
    mode = solve_subsonic(1e-6, bm, friction=fr)
    err_solver = abs(mode.k_mag - k_named) / k_named

    elapsed = time.perf_counter() - t0
    ok = (worst_pair <= 1e-4 and err_solver <= 1e-4
          and err_closed <= 1e-10 and err_reduction <= 1e-10)
    return VerifyResult("quasi-static limits", ok,
                        f"dissimilar worst {worst_pair:.2e} (tol 1e-4), "
                        f"orthotropic solver {err_solver:.2e} (tol 1e-4), "
                        f"reduction {max(err_closed, err_reduction):.2e} "
                        f"(tol 1e-10)",
                        elapsed)


def check_crossing_certification() -> VerifyResult:
    """Root counts flip 0 -> 2 across the predicted critical wavenumber."""
    t0 = time.perf_counter()
    bad: list[str] = []
    for speed_ratio, mu_ratio in FIGURE_PRESETS:
        for q in (0.1, 1.0, 10.0):
            fr, bm = _dimensional_pair(q, FIGURE_B_OVER_A,
                                       speed_ratio, mu_ratio)
            verdict = critical_mode(fr, bm)
            k_cr = verdict.mode.k_mag
            above = count_unstable(
                CharParams(k=1.05 * k_cr, friction=fr, bimaterial=bm))
            below = count_unstable(
                CharParams(k=0.95 * k_cr, friction=fr, bimaterial=bm))
            if above.n_unstable != 0 or below.n_unstable != 2:
                bad.append(f"({speed_ratio},{mu_ratio},q={q}):"
                           f"{above.n_unstable}/{below.n_unstable}")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 30.0
    detail = ("all 12 cases count 0 above and 2 below" if not bad
              else "bad counts " + ", ".join(bad))
    return VerifyResult("crossing certification", ok, detail, elapsed)


def check_intersonic_structure() -> VerifyResult:
    """Preset (1.2, 1): a q-window carries exactly two intersonic modes."""
    t0 = time.perf_counter()
    speed_ratio, mu_ratio = 1.2, 1.0
    problems: list[str] = []
    for q in (0.01, 0.1, 0.5):
        fr, bm = _dimensional_pair(q, FIGURE_B_OVER_A, speed_ratio, mu_ratio)
        modes = solve_intersonic(q, FIGURE_B_OVER_A, bm, friction=fr)
        if modes:
            problems.append(f"q={q}: {len(modes)} modes below the window")
    for q in (1.0, 2.0, 10.0):
        fr, bm = _dimensional_pair(q, FIGURE_B_OVER_A, speed_ratio, mu_ratio)
        modes = solve_intersonic(q, FIGURE_B_OVER_A, bm, friction=fr)
        if len(modes) != 2:
            problems.append(f"q={q}: {len(modes)} modes inside the window")
            continue
        sub = solve_subsonic(q, bm, friction=fr)
        for mo in modes:
            if not 1.0 < mo.c_over_c1 < speed_ratio:
                problems.append(f"q={q}: c/c1={mo.c_over_c1} outside window")
            if not mo.k_hat < sub.k_hat:
                problems.append(f"q={q}: intersonic k_hat not below subsonic")
    for q in (0.01, 0.1, 0.5, 1.0, 2.0, 10.0):
        fr, bm = _dimensional_pair(q, FIGURE_B_OVER_A, speed_ratio, mu_ratio)
        verdict = critical_mode(fr, bm)
        if (verdict.mode.branch is not Branch.SUBSONIC
                or not verdict.mode.c_over_c1 < 1.0):
            problems.append(f"q={q}: critical mode not below both wave speeds")
    elapsed = time.perf_counter() - t0
    detail = ("0 modes at q in {0.01,0.1,0.5}, 2 at q in {1,2,10}, "
              "critical mode subsonic throughout" if not problems
              else "; ".join(problems))
    return VerifyResult("intersonic structure", not problems, detail, elapsed)


def check_velocity_strengthening() -> VerifyResult:
    """b < a: stable at every wavenumber, verdict AlwaysStable."""
    t0 = time.perf_counter()
    fr = RateState(a=0.01, b=0.008, L=1e-4, sigma_o=1e6, v_o=1e-3)
    bm = make_bimaterial(EffectiveMedium(mu=30e9, c1=3000.0),
                         EffectiveMedium(mu=30e9, c1=3600.0))
    mu, mu_p = bm.slow.mu, bm.fast.mu
    k_scale = abs(fr.b - fr.a) * fr.sigma_o * (mu + mu_p) / (fr.L * mu * mu_p)
    counts = [count_unstable(CharParams(k=float(f) * k_scale, friction=fr,
                                        bimaterial=bm)).n_unstable
              for f in np.logspace(-2.0, 2.0, 10)]
    verdict = critical_mode(fr, bm)
    elapsed = time.perf_counter() - t0
    ok = (all(c == 0 for c in counts)
          and verdict.status is Stability.ALWAYS_STABLE)
    return VerifyResult("velocity strengthening", ok,
                        f"counts {counts}, verdict {verdict.status.value}",
                        elapsed)


def check_ode_oracle() -> VerifyResult:
    """Nonlinear spring-block runs reproduce the closed-form threshold."""
    t0 = time.perf_counter()
    fr = RateState(a=0.01, b=0.015, L=1e-5, sigma_o=1e6, v_o=1e-3)
    omega_ref = spring_block_critical(fr)[1]
    inertial_mass = 0.5 * fr.a * fr.sigma_o * fr.L / fr.v_o ** 2
    problems: list[str] = []
    estimates: dict[float, list[float]] = {0.0: [], inertial_mass: []}
    for law in (EvolutionLaw.AGEING, EvolutionLaw.SLIP):
        for mass in (0.0, inertial_mass):
            k_est, omega_est = estimate_critical_stiffness(fr, law, mass=mass)
            k_ref = spring_block_critical(fr, mass)[0]
            if abs(k_est - k_ref) / k_ref > 0.02:
                problems.append(f"{law.value} m={mass:g}: K off by "
                                f"{abs(k_est / k_ref - 1):.3%}")
            if abs(omega_est - omega_ref) / omega_ref > 0.02:
                problems.append(f"{law.value} m={mass:g}: omega off by "
                                f"{abs(omega_est / omega_ref - 1):.3%}")
            estimates[mass].append(k_est)
    for mass, pair in estimates.items():
        if abs(pair[0] - pair[1]) / pair[0] > 0.01:
            problems.append(f"laws disagree at m={mass:g}")
    elapsed = time.perf_counter() - t0
    ok = not problems and elapsed < 60.0
    detail = ("K and omega within 2% for both laws, both masses"
              if not problems else "; ".join(problems))
    return VerifyResult("ODE oracle", ok, detail, elapsed)


def check_branch_consistency() -> VerifyResult:
    """Intersonic transfer values equal the on-axis Laplace limit."""
    t0 = time.perf_counter()
    worst = 0.0
    for speed_ratio, mu_ratio in FIGURE_PRESETS:
        bm = BiMaterial.from_ratios(mu_ratio, speed_ratio)
        xs = np.linspace(1.0, speed_ratio, 102)[1:-1]
        for x in xs:
            closed = f_intersonic(float(x), bm)
            limit = f_laplace(1.0, 1j * float(x) * bm.slow.c1, bm)
            worst = max(worst, abs(closed - limit) / abs(limit))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-10
    return VerifyResult("branch consistency", ok,
                        f"worst rel gap {worst:.2e} (tol 1e-10) at 100 "
                        f"points per preset",
                        elapsed)


def check_figures() -> VerifyResult:
    """The figures writer emits 8 CSVs with the published trends."""
    t0 = time.perf_counter()
    from .cli import write_figures  # late import: cli pulls this module in
    problems: list[str] = []
    with tempfile.TemporaryDirectory() as tmp:
        paths = write_figures(Path(tmp))
        if len(paths) != 8:
            problems.append(f"{len(paths)} files")
        for i, path in enumerate(paths):
            qs: list[float] = []
            vals: list[float] = []
            with open(path, newline="") as fh:
                for row in csv.reader(r for r in fh if not r.startswith("#")):
                    if row[0] == "q":
                        continue
                    if row[1] == Branch.SUBSONIC.value:
                        qs.append(float(row[0]))
                        vals.append(float(row[2]))
            if len(qs) != FIGURE_Q_GRID[2]:
                problems.append(f"{path.name}: {len(qs)} subsonic rows")
                continue
            if i % 2 == 0:
                # odd-numbered files hold k_hat
                if any(b < a for a, b in zip(vals, vals[1:])):
                    problems.append(f"{path.name}: k_hat not nondecreasing")
                if min(vals) < 1.0:
                    problems.append(f"{path.name}: k_hat below 1")
            else:
                if any(b <= a for a, b in zip(vals, vals[1:])):
                    problems.append(f"{path.name}: c/c1 not increasing")
                if vals[-1] >= 1.0:
                    problems.append(f"{path.name}: c/c1 reached c1")
    elapsed = time.perf_counter() - t0
    detail = ("8 files, subsonic k_hat nondecreasing and >= 1, c/c1 "
              "increasing toward a limit below 1" if not problems
              else "; ".join(problems))
    return VerifyResult("figures regeneration", not problems, detail, elapsed)


ALL_CHECKS = (
    check_identical_reduction,
    check_subsonic_identity,
    check_quasistatic_limits,
    check_crossing_certification,
    check_intersonic_structure,
    check_velocity_strengthening,
    check_ode_oracle,
    check_branch_consistency,
    check_figures,
)


def run_all() -> list[VerifyResult]:
    """Run every certification check in order."""
    return [check() for check in ALL_CHECKS]
