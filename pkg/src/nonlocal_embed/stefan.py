"""Single-phase 1D Stefan problem with temperature forcing, in embedded form.

The front velocity satisfies the Volterra equation

    v(t) = g(t - t0, l(t)) + int_{t0}^t [v(s) N1(l(t), l(s), t - s)
                                        + f'(s) N2(l(t), 0, t - s)] ds.

Both kernels are Gaussian integrals over a real spectral variable, giving

    l'   = g(t - t0, l) + int H dk
    H'   = -k^2 H + i k v H + (i k / pi)(1 - e^{2ikl}) v + (2 / pi) e^{ikl} f'(t)

with H(k, t0) = 0.  The k-line is truncated to [-K, K].
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .embedding import EmbeddedSystem, init_state
from .quadrature import SpectralGrid, clenshaw_curtis_rule, integrate_history
from .records import STEFAN_COLUMNS, RecordedRun, run_recorded

SQRT_PI = math.sqrt(math.pi)


def erf(x):
    """Error function (backed by the C library implementation in :mod:`math`)."""
    if np.ndim(x) == 0:
        return math.erf(float(x))
    return np.vectorize(math.erf, otypes=[float])(x)


def _alpha_residual(a: float) -> float:
    return SQRT_PI * a * math.exp(a * a) * math.erf(a) - 1.0


def solve_alpha(lo: float = 0.1, hi: float = 1.0, tol: float = 1e-12) -> float:
    """Root of sqrt(pi) a exp(a^2) erf(a) = 1 by bisection.

    The left side is increasing on (0, inf), so the bracket holds one root.
    """
    f_lo, f_hi = _alpha_residual(lo), _alpha_residual(hi)
    assert f_lo < 0.0 < f_hi, "bracket does not contain the root"
    while True:
        mid = 0.5 * (lo + hi)
        f_mid = _alpha_residual(mid)
        if abs(f_mid) <= tol and hi - lo < 1e-14:
            return mid
        if mid in (lo, hi):
            return mid
        if f_mid < 0.0:
            lo = mid
        else:
            hi = mid


@dataclass(frozen=True)
class SimilaritySolution:
    """Exact melting solution l(t) = 2 alpha sqrt(t) for f = 1."""

    alpha: float
    t0: float

    @classmethod
    def create(cls, t0: float = 0.25) -> "SimilaritySolution":
        if not t0 > 0:
            raise ValueError("t0 must be positive")
        return cls(solve_alpha(), float(t0))

    @property
    def l0(self) -> float:
        return exact_front(self.t0, self)


def exact_front(t, sol: SimilaritySolution):
    if np.any(np.asarray(t) <= 0):
        raise ValueError("exact front defined for t > 0")
    return 2.0 * sol.alpha * np.sqrt(t)


def exact_velocity(t, sol: SimilaritySolution):
    if np.any(np.asarray(t) <= 0):
        raise ValueError("exact front defined for t > 0")
    return sol.alpha / np.sqrt(t)


def exact_theta0_prime(x, sol: SimilaritySolution):
    """Spatial derivative of the exact temperature profile at t = t0."""
    t0 = sol.t0
    return -np.exp(-np.asarray(x) ** 2 / (4.0 * t0)) / (math.erf(sol.alpha) * math.sqrt(math.pi * t0))


def kernel_N1(x, y, z):
    if np.any(np.asarray(z) <= 0):
        raise ValueError("kernel defined for z > 0")
    s, d = x + y, x - y
    return (s * np.exp(-s * s / (4.0 * z)) - d * np.exp(-d * d / (4.0 * z))) / (2.0 * SQRT_PI * z**1.5)


def kernel_N2(x, z):
    if np.any(np.asarray(z) <= 0):
        raise ValueError("kernel defined for z > 0")
    return (2.0 / SQRT_PI) * np.exp(-x * x / (4.0 * z)) / np.sqrt(z)


def spectral_kernel_residual(x, y, z, K_trunc, M, grid: SpectralGrid | None = None):
    """Errors of the truncated spectral representations of N1 and N2(., 0, .).

    ``grid`` overrides the default Clenshaw-Curtis grid on [-K, K].
    """
    if not z > 0:
        raise ValueError("kernel defined for z > 0")
    if grid is None:
        grid = clenshaw_curtis_rule(M, -K_trunc, K_trunc)
    k = grid.nodes
    gauss = np.exp(-k * k * z)
    dn1 = (1j / np.pi) * gauss * (np.exp(1j * k * (x - y)) - np.exp(1j * k * (x + y))) * k
    dn2 = (1.0 / np.pi) * gauss * 2.0 * np.exp(1j * k * x)
    r1 = abs(integrate_history(dn1, grid) - kernel_N1(x, y, z))
    r2 = abs(integrate_history(dn2, grid) - kernel_N2(x, z))
    return float(r1), float(r2)


@dataclass(frozen=True, eq=False)
class StefanParams:
    t0: float
    l0: float
    theta0_prime: Callable
    f_dot: Callable = lambda t: 0.0
    K_trunc: float = 500.0
    M: int = 2000
    dt: float = 1e-3

    def __post_init__(self):
        if not (self.t0 > 0 and self.l0 > 0):
            raise ValueError("t0 and l0 must be positive")
        if not self.K_trunc > 0:
            raise ValueError("K_trunc must be positive")
        if int(self.M) != self.M or self.M < 1:
            raise ValueError("M must be an integer >= 1")
        if not self.dt > 0:
            raise ValueError("dt must be positive")


def similarity_params(sol: SimilaritySolution, K_trunc: float = 500.0, M: int = 2000,
                      dt: float = 1e-3) -> StefanParams:
    """Constant-temperature melting (f = 1) started from the exact profile."""
    return StefanParams(
        t0=sol.t0,
        l0=sol.l0,
        theta0_prime=lambda x: exact_theta0_prime(x, sol),
        f_dot=lambda t: 0.0,
        K_trunc=K_trunc,
        M=M,
        dt=dt,
    )


G_MIN_NODES = 64
# half-width of the integration window in units of sqrt(tau)
G_WINDOW = 12.0


def g_term(tau: float, l: float, params: StefanParams) -> float:
    """Contribution of the initial temperature gradient to the front velocity."""
    if tau < 0:
        raise ValueError("tau must be non-negative")
    if not l > 0:
        raise ValueError("front position must be positive")
    l0 = params.l0
    if tau == 0:
        return -float(params.theta0_prime(l0))
    # each Gaussian is integrated only where it exceeds ~e^-36, with nodes
    # scaled to its width sqrt(tau); the cost stays bounded as tau -> 0
    s = math.sqrt(tau)
    reach = G_WINDOW * s
    total = 0.0
    for centre, sign in ((l, -1.0), (-l, 1.0)):
        a, b = max(0.0, centre - reach), min(l0, centre + reach)
        if b <= a:
            continue
        n = max(G_MIN_NODES, math.ceil(8.0 * (b - a) / s))
        grid = clenshaw_curtis_rule(n, a, b)
        x = grid.nodes
        kern = np.exp(-(x + sign * l) ** 2 / (4.0 * tau))
        total += integrate_history(kern * params.theta0_prime(x), grid)
    return -total / math.sqrt(math.pi * tau)


def stefan_system(params: StefanParams) -> EmbeddedSystem:
    grid = clenshaw_curtis_rule(params.M, -params.K_trunc, params.K_trunc)
    k = grid.nodes
    ik_pi = 1j * k / np.pi
    t0 = params.t0
    f_dot = params.f_dot

    def local_term(t, y):
        return np.array([g_term(t - t0, y[0], params)])

    def coupling(memory, t, y):
        return np.array([memory])

    def drift(k, t, y, ydot):
        return 1j * k * ydot[0]

    def source(k, t, y, ydot):
        v = ydot[0]
        phase = np.exp(1j * k * y[0])
        out = ik_pi * (1.0 - phase * phase) * v
        fd = f_dot(t)
        if fd != 0.0:
            out = out + (2.0 / np.pi) * fd * phase
        return out

    return EmbeddedSystem(
        mech_dim=1,
        grid=grid,
        local_term=local_term,
        coupling=coupling,
        stiff_coeff=lambda k: -k * k,
        drift_coeff=drift,
        source=source,
        name="stefan",
    )


def simulate_stefan(params: StefanParams, T: float, exact: SimilaritySolution | None = None,
                    stride: int = 1, snapshot_times=(), watch=None) -> RecordedRun:
    if not T >= params.t0:
        raise ValueError("final time must not precede t0")
    system = stefan_system(params)
    state = init_state(system, params.t0, [params.l0])

    def row(s):
        l = s.y[0]
        g = g_term(s.t - params.t0, l, params)
        memory = integrate_history(s.H, system.grid)
        if exact is not None:
            l_exact = float(exact_front(s.t, exact))
            err = abs(l - l_exact)
        else:
            l_exact = err = math.nan
        return (s.t, l, g + memory, g, memory, l_exact, err)

    return run_recorded(system, state, params.dt, T, row, STEFAN_COLUMNS, stride=stride,
                        snapshot_times=snapshot_times, model="stefan", watch=watch)
