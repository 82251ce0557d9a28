"""Run configuration: one flat JSON document."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields
from typing import IO

import numpy as np

from .model import MIN_PAD, PacketSpec

OUTPUT_KINDS = frozenset({"entropy", "density_x", "density_p", "kernel_check", "validate"})
PACKET_FIELDS = ("mass", "hbar", "sigma", "p0", "x0", "force")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    mass: float = 1.0
    hbar: float = 1.0
    sigma: float = 1.0
    p0: float = 0.0
    x0: float = 0.0
    force: float = 1.0
    t_max: float = 5.0
    n_t: int = 101
    grid_n: int = 4096
    pad: float = 8.0
    outputs: frozenset = field(default_factory=lambda: frozenset({"entropy", "density_x", "density_p", "validate"}))

    def __post_init__(self):
        for name in PACKET_FIELDS + ("t_max", "pad"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ConfigError(f"{name} must be a finite number, got {value!r}")
        for name in ("n_t", "grid_n"):
            if isinstance(getattr(self, name), bool) or not isinstance(getattr(self, name), int):
                raise ConfigError(f"{name} must be an integer, got {getattr(self, name)!r}")
        if not self.t_max > 0:
            raise ConfigError(f"t_max must be positive, got {self.t_max!r}")
        if self.n_t < 2:
            raise ConfigError(f"n_t must be at least 2, got {self.n_t!r}")
        if self.grid_n < 16 or self.grid_n & (self.grid_n - 1):
            raise ConfigError(f"grid_n must be a power of two >= 16, got {self.grid_n!r}")
        if self.pad < MIN_PAD:
            raise ConfigError(f"pad must be >= {MIN_PAD}, got {self.pad!r}")
        outputs = frozenset(self.outputs)
        unknown = outputs - OUTPUT_KINDS
        if unknown:
            raise ConfigError(f"unknown outputs: {sorted(unknown)}")
        object.__setattr__(self, "outputs", outputs)
        try:
            self.packet
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    @property
    def packet(self) -> PacketSpec:
        return PacketSpec(**{k: float(getattr(self, k)) for k in PACKET_FIELDS})

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.n_t)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        data = dict(data)
        if "outputs" in data:
            if not isinstance(data["outputs"], list) or not all(isinstance(o, str) for o in data["outputs"]):
                raise ConfigError("outputs must be a list of strings")
            data["outputs"] = frozenset(data["outputs"])
        return cls(**data)

    @classmethod
    def load(cls, stream: IO[str]) -> "RunConfig":
        try:
            data = json.load(stream)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        out["outputs"] = sorted(self.outputs)
        return out
