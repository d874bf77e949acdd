"""Generic Markovian embedding engine.

A nonlocal equation ``y' = L(t, y) + int N ds`` whose kernel has a spectral
representation is replaced by a mechanical state ``y`` coupled to a history
field ``H(k, t)`` sampled on a :class:`SpectralGrid`::

    y'      = L(t, y) + coupling(int H dk, t, y)
    H'(k)   = (c(k) + d(k, t, y, y')) H(k) + s(k, t, y, y')

``c`` is the time-independent linear part and is integrated exactly (ETD);
``d H + s`` is treated explicitly.  ``d`` and ``s`` receive the stage value of
``y'`` because the Stefan front velocity is an output of the mechanical
equation rather than a state variable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from .integrators import SolverDivergence, etd_coefficients
from .quadrature import SpectralGrid, integrate_history

LocalTerm = Callable[[float, np.ndarray], np.ndarray]
Coupling = Callable[[float, float, np.ndarray], np.ndarray]
NodeCoeff = Callable[[np.ndarray, float, np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class EmbeddedSystem:
    mech_dim: int
    grid: SpectralGrid
    local_term: LocalTerm
    coupling: Coupling
    stiff_coeff: Callable[[np.ndarray], np.ndarray]
    drift_coeff: NodeCoeff
    source: NodeCoeff
    name: str = "embedded"
    _etd_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @cached_property
    def stiff(self) -> np.ndarray:
        c = np.broadcast_to(self.stiff_coeff(self.grid.nodes), self.grid.nodes.shape)
        return np.array(c, dtype=np.complex128)

    def etd(self, dt: float):
        coeffs = self._etd_cache.get(dt)
        if coeffs is None:
            if len(self._etd_cache) > 8:
                self._etd_cache.clear()
            coeffs = self._etd_cache[dt] = etd_coefficients(self.stiff, dt)
        return coeffs

    def rates(self, t: float, y: np.ndarray, H: np.ndarray):
        """Mechanical right-hand side and the memory value it used."""
        memory = integrate_history(H, self.grid)
        ydot = np.asarray(self.local_term(t, y), dtype=np.float64) + self.coupling(memory, t, y)
        return ydot, memory

    def history_forcing(self, t: float, y: np.ndarray, ydot: np.ndarray, H: np.ndarray):
        """Explicit part d H + s of the per-node history equation."""
        k = self.grid.nodes
        return self.drift_coeff(k, t, y, ydot) * H + self.source(k, t, y, ydot)


@dataclass(frozen=True, eq=False)
class EmbeddedState:
    t: float
    y: np.ndarray
    H: np.ndarray


def init_state(system: EmbeddedSystem, t0: float, y0) -> EmbeddedState:
    y0 = np.array(y0, dtype=np.float64).reshape(-1)
    if y0.shape != (system.mech_dim,):
        raise ValueError(f"initial state needs {system.mech_dim} entries, got {y0.size}")
    return EmbeddedState(float(t0), y0, np.zeros(len(system.grid), dtype=np.complex128))


def step(system: EmbeddedSystem, state: EmbeddedState, dt: float) -> EmbeddedState:
    """Advance ``y`` and every history node by one coupled two-stage step.

    Stage 1 takes an Euler predictor for ``y`` and an ETD-Euler predictor for
    ``H`` from beginning-of-step values; stage 2 applies the Heun / ETD2RK
    correctors using the stage-1 values.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    t, y, H = state.t, state.y, state.H
    ez, phi1, phi2 = system.etd(dt)

    f0, _ = system.rates(t, y, H)
    F0 = system.history_forcing(t, y, f0, H)
    y_pred = y + dt * f0
    H_pred = ez * H + dt * phi1 * F0

    t1 = t + dt
    f1, _ = system.rates(t1, y_pred, H_pred)
    F1 = system.history_forcing(t1, y_pred, f1, H_pred)
    y_new = y + dt * (0.5 * f0 + 0.5 * f1)
    H_new = ez * H + dt * ((phi1 - phi2) * F0 + phi2 * F1)

    if not (np.all(np.isfinite(y_new)) and np.all(np.isfinite(H_new))):
        raise SolverDivergence(t1)
    return EmbeddedState(t1, y_new, H_new)


def step_schedule(t_start: float, dt: float, T: float) -> tuple[int, float]:
    """Number of full steps and the length of a final short step (0 if none)."""
    span = T - t_start
    n_full = int(np.floor(span / dt + 1e-9))
    rest = span - n_full * dt
    if rest <= 1e-9 * dt:
        rest = 0.0
    return n_full, rest


def evolve(system, state, dt, T, observer=None, stride: int = 1) -> EmbeddedState:
    """Fixed-step integration to ``T``; the last step is shortened to land on it.

    ``observer(state)`` is called on the initial state, every ``stride`` steps
    and on the final state.
    """
    if T < state.t:
        raise ValueError(f"final time {T} precedes current time {state.t}")
    if stride < 1:
        raise ValueError("stride must be >= 1")
    t_start = state.t
    n_full, rest = step_schedule(t_start, dt, T)
    if observer is not None:
        observer(state)
    for i in range(1, n_full + 1):
        state = step(system, state, dt)
        last = i == n_full and not rest
        # re-anchor time to avoid drift from repeated addition
        state = EmbeddedState(float(T) if last else t_start + i * dt, state.y, state.H)
        if observer is not None and (i % stride == 0 or last):
            observer(state)
    if rest:
        state = step(system, state, rest)
        state = EmbeddedState(float(T), state.y, state.H)
        if observer is not None:
            observer(state)
    return state
