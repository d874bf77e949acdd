"""Per-step cost profile of the embedded and direct walker solvers."""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .direct import simulate_walker_direct
from .embedding import EmbeddedState, step, step_schedule
from .walker import WalkerParams, walker_initial_state, walker_system


def warm_up() -> None:
    """Trigger JIT compilation so it does not land in the first timed steps."""
    simulate_walker_direct(WalkerParams(dt=0.1), 0.3)
    system = walker_system(WalkerParams(M=4))
    step(system, walker_initial_state(system, WalkerParams(M=4)), 0.1)


def time_embedded(params: WalkerParams, T: float) -> np.ndarray:
    system = walker_system(params)
    state = walker_initial_state(system, params)
    n_full, rest = step_schedule(0.0, params.dt, T)
    sizes = [params.dt] * n_full + ([rest] if rest else [])
    out = np.empty(len(sizes))
    clock = time.perf_counter
    for i, h in enumerate(sizes):
        tic = clock()
        state = step(system, state, h)
        state = EmbeddedState((i + 1) * params.dt, state.y, state.H)
        out[i] = clock() - tic
    return out


def time_direct(params: WalkerParams, T: float) -> np.ndarray:
    times: list[float] = []
    simulate_walker_direct(params, T, stride=10**9, step_times=times)
    return np.array(times)


def decile_means(step_times) -> np.ndarray:
    step_times = np.asarray(step_times)
    if step_times.size < 10:
        raise ValueError("need at least 10 steps to form deciles")
    return np.array([chunk.mean() for chunk in np.array_split(step_times, 10)])


@dataclass
class BenchReport:
    n_steps: int
    embedded: np.ndarray
    direct: np.ndarray

    @property
    def embedded_ratio(self) -> float:
        return float(self.embedded[-1] / self.embedded[0])

    @property
    def direct_ratio(self) -> float:
        return float(self.direct[-1] / self.direct[0])

    def table(self) -> list[tuple[int, float, float]]:
        return [(i + 1, float(e), float(d)) for i, (e, d) in enumerate(zip(self.embedded, self.direct))]


def run_bench(params: WalkerParams, T: float) -> BenchReport:
    warm_up()
    emb = time_embedded(params, T)
    direct = time_direct(params, T)
    return BenchReport(emb.size, decile_means(emb), decile_means(direct))
