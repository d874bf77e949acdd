"""Direct solver for the walker integro-differential equation.

The whole path is stored and the memory integral is re-evaluated by the
trapezoid rule at every stage, so step ``n`` costs O(n).  Used as an oracle
for the embedded solver and as the growing-cost baseline in benchmarks.
"""
from __future__ import annotations

import time

import numpy as np

from .embedding import step_schedule
from .integrators import SolverDivergence
from .kernels import trapezoid_memory
from .records import WALKER_COLUMNS, TrajectoryRecord
from .walker import WalkerParams


class PathHistory:
    """Growing record of ``(t, x_d)`` samples backed by preallocated buffers."""

    def __init__(self, capacity: int = 1024):
        self._times = np.empty(max(int(capacity), 1))
        self._positions = np.empty_like(self._times)
        self.size = 0

    def __len__(self) -> int:
        return self.size

    @property
    def times(self) -> np.ndarray:
        return self._times[: self.size]

    @property
    def positions(self) -> np.ndarray:
        return self._positions[: self.size]

    def append(self, t: float, x: float) -> None:
        if self.size and not t > self._times[self.size - 1]:
            raise ValueError("path times must be strictly increasing")
        if self.size == self._times.size:
            self._times = np.concatenate([self._times, np.empty_like(self._times)])
            self._positions = np.concatenate([self._positions, np.empty_like(self._positions)])
        self._times[self.size] = t
        self._positions[self.size] = x
        self.size += 1


def memory_force_direct(path: PathHistory, t: float, C1: float, C2: float) -> float:
    """C1 int_0^t J1(x(t) - x(s)) exp(-C2 (t - s)) ds over the stored samples."""
    if not len(path):
        raise ValueError("empty path")
    if t != path.times[-1]:
        raise ValueError("t must equal the last stored path time")
    n = path.size
    return C1 * trapezoid_memory(path._times, path._positions, n, t, path._positions[n - 1], C2)


def _provisional_force(path: PathHistory, t: float, x: float, C1: float, C2: float) -> float:
    # memory at a stage point not yet stored: close the last panel at (t, x)
    return C1 * trapezoid_memory(path._times, path._positions, path.size, t, x, C2)


def simulate_walker_direct(params: WalkerParams, T: float, stride: int = 1,
                           step_times: list | None = None) -> TrajectoryRecord:
    """Heun integration of the original nonlocal equation up to ``T``.

    When ``step_times`` is a list, the wall time of every step is appended.
    """
    if not T > 0:
        raise ValueError("T must be positive")
    C1, C2, dt = float(params.C1), float(params.C2), float(params.dt)
    n_full, rest = step_schedule(0.0, dt, T)
    sizes = [dt] * n_full + ([rest] if rest else [])
    path = PathHistory(len(sizes) + 1)
    x, v = params.ic
    t = 0.0
    path.append(t, x)
    force = 0.0
    rows = [(t, x, v, force)]
    for i, h in enumerate(sizes, start=1):
        tic = time.perf_counter()
        ax, av = v, -v + force
        x_pred, v_pred = x + h * ax, v + h * av
        t_new = float(T) if i == len(sizes) else i * dt
        force_pred = _provisional_force(path, t_new, x_pred, C1, C2)
        bx, bv = v_pred, -v_pred + force_pred
        x = x + h * (0.5 * ax + 0.5 * bx)
        v = v + h * (0.5 * av + 0.5 * bv)
        if not (np.isfinite(x) and np.isfinite(v)):
            raise SolverDivergence(t_new)
        t = t_new
        path.append(t, x)
        force = memory_force_direct(path, t, C1, C2)
        if step_times is not None:
            step_times.append(time.perf_counter() - tic)
        if i % stride == 0 or i == len(sizes):
            rows.append((t, x, v, force))
    return TrajectoryRecord(WALKER_COLUMNS, np.array(rows), "walker_direct")
