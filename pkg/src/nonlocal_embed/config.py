"""Run configuration: defaults, validation and JSON ingestion."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

MODELS = ("walker", "walker_direct", "stefan")

DEFAULTS = {
    "walker": {"dt": 0.01, "nodes": 30, "tfinal": 200.0, "snapshots": (10.0, 50.0, 100.0, 200.0)},
    "walker_direct": {"dt": 0.01, "nodes": 30, "tfinal": 200.0, "snapshots": ()},
    "stefan": {"dt": 1e-3, "nodes": 2000, "tfinal": 1.0, "snapshots": None},
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    model: str = "walker"
    c1: float = 0.1
    c2: float = 0.1
    x0: float = 1.0
    v0: float = 1.0
    t0: float = 0.25
    ktrunc: float = 500.0
    dt: float | None = None
    nodes: int | None = None
    tfinal: float | None = None
    stride: int = 1
    snapshots: tuple[float, ...] | None = None
    out: str = "out"

    @classmethod
    def from_mapping(cls, data: dict) -> "RunConfig":
        # metadata documents carry the run config under "config"
        if "config" in data and isinstance(data["config"], dict):
            data = data["config"]
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        data = dict(data)
        if data.get("snapshots") is not None:
            data["snapshots"] = tuple(float(s) for s in data["snapshots"])
        return cls(**data)

    def merged(self, **overrides) -> "RunConfig":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def resolved(self) -> "RunConfig":
        """Fill model-dependent defaults and validate."""
        if self.model not in MODELS:
            raise ConfigError(f"model must be one of {MODELS}, got {self.model!r}")
        d = DEFAULTS[self.model]
        nodes = self.nodes if self.nodes is not None else d["nodes"]
        try:
            if int(nodes) != nodes:
                raise ConfigError(f"nodes must be an integer, got {nodes!r}")
            cfg = replace(
                self,
                dt=float(self.dt if self.dt is not None else d["dt"]),
                nodes=int(nodes),
                tfinal=float(self.tfinal if self.tfinal is not None else d["tfinal"]),
            )
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc)) from exc
        if cfg.snapshots is None:
            snaps = d["snapshots"]
            if snaps is None:  # stefan: relative to t0
                snaps = (cfg.t0 + 0.05, 2.0 * cfg.t0, 4.0 * cfg.t0)
            cfg = replace(cfg, snapshots=tuple(s for s in snaps if s <= cfg.tfinal))
        cfg.validate()
        return cfg

    @property
    def start_time(self) -> float:
        return self.t0 if self.model == "stefan" else 0.0

    def validate(self) -> None:
        def finite(name):
            val = getattr(self, name)
            if not isinstance(val, (int, float)) or isinstance(val, bool) or not math.isfinite(val):
                raise ConfigError(f"{name} must be a finite number, got {val!r}")
            return val

        for name in ("c1", "c2", "x0", "v0", "t0", "ktrunc", "dt", "tfinal"):
            finite(name)
        if self.c1 < 0 or self.c2 < 0:
            raise ConfigError("c1 and c2 must be non-negative")
        if not self.dt > 0:
            raise ConfigError("dt must be positive")
        if not isinstance(self.nodes, int) or self.nodes < 1:
            raise ConfigError("nodes must be an integer >= 1")
        if not isinstance(self.stride, int) or isinstance(self.stride, bool) or self.stride < 1:
            raise ConfigError("stride must be an integer >= 1")
        if not self.t0 > 0:
            raise ConfigError("t0 must be positive")
        if not self.ktrunc > 0:
            raise ConfigError("ktrunc must be positive")
        if not self.tfinal > self.start_time:
            raise ConfigError(f"tfinal must exceed the start time {self.start_time}")
        for s in self.snapshots or ():
            if not self.start_time < s <= self.tfinal:
                raise ConfigError(f"snapshot time {s} outside ({self.start_time}, {self.tfinal}]")

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["snapshots"] is not None:
            d["snapshots"] = list(d["snapshots"])
        return d


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config document must be a JSON object")
    try:
        return RunConfig.from_mapping(data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
