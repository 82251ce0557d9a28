"""Value types shared across the package.

Everything here is immutable after construction. Array payloads are copied
and flagged read-only so fields can be passed between threads freely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

DEFAULT_GRID_N = 4096
DEFAULT_PAD = 8.0
MIN_PAD = 4.0


def _frozen_array(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.flags.writeable = False
    return arr


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class PacketSpec:
    """Physical parameters of a Gaussian packet under a constant force.

    Parameters
    ----------
    mass, hbar, sigma : float
        Particle mass, reduced Planck constant and initial Gaussian width.
        All strictly positive.
    p0 : float
        Initial mean momentum.
    x0 : float
        Initial packet center.
    force : float
        The constant force ``f``; the potential is ``V(x) = -f x``.
    """

    mass: float = 1.0
    hbar: float = 1.0
    sigma: float = 1.0
    p0: float = 0.0
    x0: float = 0.0
    force: float = 0.0

    def __post_init__(self):
        for name in ("mass", "hbar", "sigma", "p0", "x0", "force"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        for name in ("mass", "hbar", "sigma"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)!r}")

    def tau(self, t):
        """Dimensionless spreading time hbar*t/(m*sigma**2)."""
        return self.hbar * t / (self.mass * self.sigma**2)

    def width(self, t):
        """Time-dependent width sigma_t, with sigma_t**2 = sigma**2 (1 + tau**2)."""
        return self.sigma * np.sqrt(1.0 + self.tau(t) ** 2)

    def center(self, t):
        """Packet center x0 + p0 t/m + f t**2/(2m)."""
        return self.x0 + self.p0 * t / self.mass + 0.5 * self.force * t**2 / self.mass

    def mean_momentum(self, t):
        return self.p0 + self.force * t


@dataclass(frozen=True)
class UniformGrid:
    """Uniform periodic-style lattice ``center - half_width + j*spacing``, j < n.

    The center sits exactly on node ``n // 2``.
    """

    n: int
    center: float
    half_width: float

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or not _is_power_of_two(int(self.n)) or self.n < 16:
            raise ValueError(f"grid size must be a power of two >= 16, got {self.n!r}")
        if not (math.isfinite(self.center) and math.isfinite(self.half_width)):
            raise ValueError("grid center and half_width must be finite")
        if self.half_width <= 0:
            raise ValueError(f"half_width must be positive, got {self.half_width!r}")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.n

    @property
    def start(self) -> float:
        return self.center - self.half_width

    @property
    def points(self) -> np.ndarray:
        return self.start + self.spacing * np.arange(self.n)


@dataclass(frozen=True)
class SpaceGrid(UniformGrid):
    pass


@dataclass(frozen=True)
class MomentumGrid(UniformGrid):
    """Momentum lattice; carries ``hbar`` so the reciprocal relation is checkable."""

    hbar: float = 1.0

    @classmethod
    def reciprocal_to(cls, grid: SpaceGrid, hbar: float, center: float = 0.0) -> "MomentumGrid":
        # n * dp = 2*pi*hbar / dx, so half_width = pi*hbar/dx
        return cls(n=grid.n, center=center, half_width=math.pi * hbar / grid.spacing, hbar=hbar)


@dataclass(frozen=True)
class ComplexField:
    """Sampled complex amplitude on a grid."""

    grid: UniformGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = _frozen_array(self.values, np.complex128)
        if arr.shape != (self.grid.n,):
            raise ValueError(f"expected {self.grid.n} values, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("field contains non-finite values")
        object.__setattr__(self, "values", arr)

    def norm(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2) * self.grid.spacing)

    def normalized(self) -> "ComplexField":
        return ComplexField(self.grid, self.values / math.sqrt(self.norm()))

    def density(self) -> "DensityProfile":
        return DensityProfile(self.grid, np.abs(self.values) ** 2)


@dataclass(frozen=True)
class DensityProfile:
    """Sampled non-negative probability density."""

    grid: UniformGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = _frozen_array(self.values, np.float64)
        if arr.shape != (self.grid.n,):
            raise ValueError(f"expected {self.grid.n} values, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)) or np.any(arr < 0):
            raise ValueError("density values must be finite and non-negative")
        object.__setattr__(self, "values", arr)

    def total(self) -> float:
        return float(np.sum(self.values) * self.grid.spacing)

    def mean(self) -> float:
        return float(np.sum(self.grid.points * self.values) * self.grid.spacing / self.total())

    def variance(self) -> float:
        mu = self.mean()
        return float(np.sum((self.grid.points - mu) ** 2 * self.values) * self.grid.spacing / self.total())


@dataclass(frozen=True)
class EntropyRecord:
    """One sample of the entropy time sweep (all entropies in nats)."""

    t: float
    tau: float
    s_x: float
    s_p: float
    s_joint_closed: float
    s_joint_numeric: float
    bound: float

    @property
    def bound_gap(self) -> float:
        return self.s_joint_closed - self.bound


def make_adaptive_grid(spec: PacketSpec, t: float, pad: float = DEFAULT_PAD, n: int = DEFAULT_GRID_N) -> SpaceGrid:
    """Position grid centered on the packet at time ``t``.

    The window is ``center(t) +- pad * sigma_t``. Since the density standard
    deviation is ``sigma_t / sqrt(2)``, pad = 8 keeps the truncated mass far
    below 1e-12.
    """
    if not math.isfinite(t):
        raise ValueError(f"t must be finite, got {t!r}")
    if not pad >= MIN_PAD:
        raise ValueError(f"pad must be >= {MIN_PAD}, got {pad!r}")
    return SpaceGrid(n=n, center=float(spec.center(t)), half_width=float(pad * spec.width(t)))
