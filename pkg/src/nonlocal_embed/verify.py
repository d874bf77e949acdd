"""Invariant suite behind ``nonlocal-embed verify``."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .integrators import PHI_SWITCH, etdrk2_step, heun_step, phi_funcs
from .quadrature import chebyshev_weight_rule, clenshaw_curtis_rule, history_sum
from .stefan import (
    SimilaritySolution,
    StefanParams,
    similarity_params,
    simulate_stefan,
    solve_alpha,
    spectral_kernel_residual,
)
from .walker import WalkerParams, bessel_j1, bessel_j1_quadrature, simulate_walker, steady_speed


@dataclass
class CheckResult:
    name: str
    measured: float
    tolerance: float
    passed: bool
    kind: str = "<="

    def line(self, verbose: bool = False) -> str:
        status = "PASS" if self.passed else "FAIL"
        if not verbose:
            return f"{status}  {self.name}"
        return f"{status}  {self.name:<32s} measured={self.measured:.3e}  required {self.kind} {self.tolerance:.3e}"


def _at_most(name, measured, tol) -> CheckResult:
    measured = float(measured)
    return CheckResult(name, measured, tol, bool(measured <= tol), "<=")


def _within(name, measured, lo, hi) -> CheckResult:
    measured = float(measured)
    return CheckResult(name, measured, hi, bool(lo <= measured <= hi), f"in [{lo}, ...]")


def observed_order(stepper: Callable[[float], float], dts=(1e-2, 5e-3, 2.5e-3)) -> float:
    """Richardson order estimate from three step sizes halving each time."""
    a, b, c = (stepper(dt) for dt in dts)
    return math.log2(abs(a - b) / abs(b - c))


def _heun_final(dt: float) -> float:
    y, t = 1.0, 0.0
    for i in range(round(1.0 / dt)):
        y = heun_step(y, lambda s, u: -u + math.sin(s), t, dt)
        t = (i + 1) * dt
    return y


def _etd_final(dt: float) -> float:
    h, t = 1.0, 0.0
    for i in range(round(1.0 / dt)):
        h = etdrk2_step(h, -1.0, lambda s, u: math.sin(s), t, dt)
        t = (i + 1) * dt
    return float(h)


class SymmetryWatch:
    """Tracks conjugate-symmetry defect and the imaginary memory part over a run."""

    def __init__(self, grid):
        self.grid = grid
        self.conj_defect = 0.0
        self.imag_memory = 0.0

    def __call__(self, state):
        H = state.H
        self.conj_defect = max(self.conj_defect, float(np.max(np.abs(H[::-1] - np.conj(H)))))
        self.imag_memory = max(self.imag_memory, abs(history_sum(H, self.grid).imag))


def run_checks(perturb_weights: float = 0.0) -> list[CheckResult]:
    out: list[CheckResult] = []

    kgrid = clenshaw_curtis_rule(200, -20.0, 20.0)
    if perturb_weights:
        kgrid = kgrid.with_weights(kgrid.weights * (1.0 + perturb_weights))
    r1, r2 = spectral_kernel_residual(1.0, 0.5, 0.5, 20.0, 200, grid=kgrid)
    out.append(_at_most("kernel N1 spectral residual", r1, 1e-8))
    out.append(_at_most("kernel N2 spectral residual", r2, 1e-8))

    z = np.linspace(-20.0, 20.0, 401)
    out.append(_at_most("J1 quadrature vs series", np.max(np.abs(bessel_j1_quadrature(z) - bessel_j1(z))), 1e-10))

    cc = clenshaw_curtis_rule(8)
    poly_err = max(abs(np.sum(cc.weights * cc.nodes**p) - (2.0 / (p + 1) if p % 2 == 0 else 0.0)) for p in range(9))
    out.append(_at_most("Clenshaw-Curtis degree exactness", poly_err, 1e-13))
    cw = chebyshev_weight_rule(4)
    out.append(_at_most("Chebyshev-weight rule on k^2", abs(np.sum(cw.weights * cw.nodes**2) - math.pi / 2), 1e-14))

    inside = phi_funcs(PHI_SWITCH * (1 - 1e-12))
    outside = phi_funcs(PHI_SWITCH * (1 + 1e-12))
    jump = max(abs(inside.phi1 - outside.phi1) / abs(outside.phi1), abs(inside.phi2 - outside.phi2) / abs(outside.phi2))
    out.append(_at_most("phi-function switch continuity", jump, 1e-10))

    out.append(_within("Heun observed order", observed_order(_heun_final), 1.8, 2.2))
    out.append(_within("ETD2RK observed order", observed_order(_etd_final), 1.8, 2.2))
    rhs = lambda s, u: -u * u + math.cos(s)  # noqa: E731
    same = etdrk2_step(0.3 + 0.1j, 0.0, rhs, 0.2, 0.05) == heun_step(0.3 + 0.1j, rhs, 0.2, 0.05)
    out.append(CheckResult("ETD2RK(c=0) == Heun bitwise", float(not same), 0.0, bool(same)))

    alpha = solve_alpha()
    residual = abs(math.sqrt(math.pi) * alpha * math.exp(alpha**2) * math.erf(alpha) - 1.0)
    out.append(_at_most("alpha transcendental residual", residual, 1e-12))

    wp = WalkerParams(C1=0.1, C2=0.1)
    watch = SymmetryWatch(chebyshev_weight_rule(wp.M))
    run = simulate_walker(wp, 200.0, stride=10, watch=watch)
    v_inf = steady_speed(wp.C1, wp.C2)
    out.append(_at_most("walker steady speed", abs(abs(run.trajectory["v_d"][-1]) - v_inf), 1e-3))
    out.append(_at_most("walker H conjugate symmetry", watch.conj_defect, 1e-12))
    out.append(_at_most("walker imaginary memory", watch.imag_memory, 1e-10))

    drag = simulate_walker(WalkerParams(C1=0.0, C2=0.1, dt=0.01), 5.0)
    tr = drag.trajectory
    out.append(_at_most("walker C1=0 exponential decay", np.max(np.abs(tr["v_d"] - np.exp(-tr["t"]))), 1e-5))

    sol = SimilaritySolution.create(0.25)
    sp = similarity_params(sol)
    swatch = SymmetryWatch(clenshaw_curtis_rule(sp.M, -sp.K_trunc, sp.K_trunc))
    srun = simulate_stefan(sp, 4 * sol.t0, exact=sol, watch=swatch)
    st = srun.trajectory
    out.append(_at_most("stefan relative front error", np.max(st["abs_error"] / st["l_exact"]), 1e-2))
    out.append(_at_most("stefan H conjugate symmetry", swatch.conj_defect, 1e-12))
    out.append(_at_most("stefan imaginary memory", swatch.imag_memory, 1e-10))

    still = StefanParams(t0=0.25, l0=0.5, theta0_prime=lambda x: np.zeros_like(x), M=64, K_trunc=50.0)
    srest = simulate_stefan(still, 0.5).trajectory
    out.append(_at_most("stefan stationary front", np.max(np.abs(srest["l"] - 0.5)), 1e-14))
    return out
