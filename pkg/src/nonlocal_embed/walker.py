"""One-dimensional walking droplet (stroboscopic model) in embedded form.

The droplet obeys ``x'' = -x' + C1 int_0^t J1(x(t) - x(s)) exp(-C2 (t - s)) ds``.
With ``J1(z) = -(i/pi) int_{-1}^{1} exp(ikz) k / sqrt(1 - k^2) dk`` the memory
becomes ``C1 int H(k, t) w(k) dk`` where each node obeys

    H' = -C2 H + i k v H - i k / pi,    H(k, 0) = 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .embedding import EmbeddedState, EmbeddedSystem, init_state
from .quadrature import chebyshev_weight_rule
from .records import WALKER_COLUMNS, RecordedRun, TrajectoryRecord, run_recorded


@dataclass(frozen=True)
class WalkerParams:
    C1: float = 0.1
    C2: float = 0.1
    M: int = 30
    dt: float = 0.01
    ic: tuple[float, float] = (1.0, 1.0)

    def __post_init__(self):
        if not (self.C1 >= 0 and self.C2 >= 0):
            raise ValueError("C1 and C2 must be non-negative")
        if int(self.M) != self.M or self.M < 1:
            raise ValueError("M must be an integer >= 1")
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if len(self.ic) != 2:
            raise ValueError("ic must be (x_d0, v_d0)")
        object.__setattr__(self, "ic", (float(self.ic[0]), float(self.ic[1])))


def bessel_j1(z):
    """J1 by ascending series (|z| < 12), Miller recurrence, then Hankel asymptotics."""
    out = kernels.bessel_j1(np.asarray(z, dtype=np.float64))
    return float(out) if np.ndim(z) == 0 else out


def bessel_j1_quadrature(z, M: int = 200):
    """J1 from its spectral representation on the Chebyshev-weight grid."""
    grid = chebyshev_weight_rule(M)
    k, w = grid.nodes, grid.weights
    zz = np.atleast_1d(np.asarray(z, dtype=np.float64))
    vals = (-1j / np.pi) * (np.exp(1j * np.outer(zz, k)) * (w * k)).sum(axis=1)
    vals = vals.real
    return float(vals[0]) if np.ndim(z) == 0 else vals.reshape(np.shape(z))


def walker_system(params: WalkerParams) -> EmbeddedSystem:
    C1, C2 = float(params.C1), float(params.C2)
    grid = chebyshev_weight_rule(params.M)
    source = -1j * grid.nodes / np.pi

    def local_term(t, y):
        return np.array([y[1], -y[1]])

    def coupling(memory, t, y):
        return np.array([0.0, C1 * memory])

    return EmbeddedSystem(
        mech_dim=2,
        grid=grid,
        local_term=local_term,
        coupling=coupling,
        stiff_coeff=lambda k: np.full(k.shape, -C2),
        drift_coeff=lambda k, t, y, ydot: 1j * k * y[1],
        source=lambda k, t, y, ydot: source,
        name="walker",
    )


def walker_initial_state(system: EmbeddedSystem, params: WalkerParams, t0: float = 0.0) -> EmbeddedState:
    return init_state(system, t0, params.ic)


def steady_speed(C1: float, C2: float) -> float | None:
    """Analytic steady walking speed, or None when no walking state exists."""
    if C1 < 0 or C2 < 0:
        raise ValueError("C1 and C2 must be non-negative")
    radicand = 2.0 * C1 - C2**2 - math.sqrt(C2**4 + 4.0 * C1 * C2**2)
    if radicand <= 0.0:
        return None
    return math.sqrt(radicand) / math.sqrt(2.0)


def simulate_walker(params: WalkerParams, T: float, stride: int = 1,
                    snapshot_times=(), watch=None) -> RecordedRun:
    system = walker_system(params)
    state = walker_initial_state(system, params)

    def row(s):
        memory = params.C1 * system.rates(s.t, s.y, s.H)[1]
        return (s.t, s.y[0], s.y[1], memory)

    return run_recorded(system, state, params.dt, T, row, WALKER_COLUMNS, stride=stride,
                        snapshot_times=snapshot_times, model="walker", watch=watch)


class Regime(str, Enum):
    NON_WALKER = "non_walker"
    STEADY_WALKER = "steady_walker"
    UNSTEADY = "unsteady"


# diagnostic thresholds on the last 20% of the run
REST_SPEED = 1e-4
STEADY_REL_FLUCTUATION = 1e-3
MIN_DURATION = 100.0


def classify_regime(trajectory: TrajectoryRecord) -> Regime:
    t = trajectory["t"]
    v = np.abs(trajectory["v_d"])
    if t[-1] < MIN_DURATION:
        raise ValueError(f"trajectory must reach t >= {MIN_DURATION}, ends at {t[-1]}")
    tail = v[t >= t[0] + 0.8 * (t[-1] - t[0])]
    if tail.max() < REST_SPEED:
        return Regime.NON_WALKER
    mean = tail.mean()
    if np.max(np.abs(tail - mean)) < STEADY_REL_FLUCTUATION * mean:
        return Regime.STEADY_WALKER
    return Regime.UNSTEADY
