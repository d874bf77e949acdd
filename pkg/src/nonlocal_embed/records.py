"""Trajectory containers, CSV export and the recorded-run driver."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .embedding import EmbeddedState, EmbeddedSystem, evolve

WALKER_COLUMNS = ("t", "x_d", "v_d", "memory_force")
STEFAN_COLUMNS = ("t", "l", "v", "g_value", "memory_value", "l_exact", "abs_error")

FLOAT_FMT = "%.17g"


@dataclass
class TrajectoryRecord:
    """Rows of ``(t, observables..., diagnostics...)`` with a fixed schema."""

    columns: tuple[str, ...]
    data: np.ndarray
    model: str = ""

    def __post_init__(self):
        self.columns = tuple(self.columns)
        self.data = np.asarray(self.data, dtype=np.float64).reshape(-1, len(self.columns))
        if self.columns[0] != "t":
            raise ValueError("first column must be time 't'")
        if np.any(np.diff(self.data[:, 0]) <= 0):
            raise ValueError("trajectory times must be strictly increasing")

    def __len__(self) -> int:
        return self.data.shape[0]

    def __getitem__(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]

    @property
    def t(self) -> np.ndarray:
        return self.data[:, 0]

    def to_csv(self, path) -> None:
        np.savetxt(path, self.data, fmt=FLOAT_FMT, delimiter=",",
                   header=",".join(self.columns), comments="")

    @classmethod
    def read_csv(cls, path, model: str = "") -> "TrajectoryRecord":
        path = Path(path)
        with path.open() as fh:
            header = fh.readline().strip().split(",")
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        return cls(tuple(header), data, model)


@dataclass(frozen=True, eq=False)
class HistorySnapshot:
    t: float
    k: np.ndarray
    H: np.ndarray


def write_snapshots(path, snapshots: Sequence[HistorySnapshot]) -> None:
    blocks = [np.column_stack([np.full(s.k.shape, s.t), s.k, s.H.real, s.H.imag])
              for s in snapshots]
    data = np.vstack(blocks) if blocks else np.empty((0, 4))
    np.savetxt(path, data, fmt=FLOAT_FMT, delimiter=",", header="t,k,re_H,im_H", comments="")


@dataclass
class RecordedRun:
    trajectory: TrajectoryRecord
    snapshots: list[HistorySnapshot] = field(default_factory=list)
    final_state: EmbeddedState | None = None


def run_recorded(system: EmbeddedSystem, state: EmbeddedState, dt: float, T: float,
                 row: Callable[[EmbeddedState], Sequence[float]], columns: Sequence[str],
                 stride: int = 1, snapshot_times: Sequence[float] = (),
                 model: str = "", watch: Callable[[EmbeddedState], None] | None = None) -> RecordedRun:
    """Evolve to ``T`` collecting rows; lands exactly on each snapshot time.

    ``watch`` (if given) sees every recorded state, e.g. for invariant checks.
    """
    rows: list[Sequence[float]] = []
    last_t = [-np.inf]

    def observer(s: EmbeddedState):
        if s.t > last_t[0]:
            rows.append(row(s))
            last_t[0] = s.t
            if watch is not None:
                watch(s)

    snaps = []
    stops = {float(x) for x in snapshot_times if state.t < x <= T}
    for stop in sorted(stops | {float(T)}):
        if stop > state.t:
            state = evolve(system, state, dt, stop, observer=observer, stride=stride)
        elif not rows:
            observer(state)
        if stop in stops:
            snaps.append(HistorySnapshot(state.t, np.array(system.grid.nodes), state.H.copy()))
    record = TrajectoryRecord(tuple(columns), np.array(rows), model)
    return RecordedRun(record, snaps, state)
