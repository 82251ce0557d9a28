"""Differential entropies and the Leipnik joint entropy, in nats."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .model import (
    DEFAULT_GRID_N,
    DEFAULT_PAD,
    DensityProfile,
    MomentumGrid,
    PacketSpec,
    SpaceGrid,
    make_adaptive_grid,
)
from .quantum import fourier_transform, position_density, sample_closed

TINY = 1e-300
MAX_PRODUCT_N = 512


class NormalizationError(ValueError):
    """A sampled density does not integrate to one within tolerance."""


def leipnik_bound() -> float:
    """Lower bound ``ln(e/2) = 1 - ln 2`` on the joint entropy of any 1D state."""
    return 1.0 - math.log(2.0)


def _xlogx(values: np.ndarray) -> np.ndarray:
    out = np.zeros_like(values)
    keep = values >= TINY
    out[keep] = values[keep] * np.log(values[keep])
    return out


def differential_entropy(density: DensityProfile, norm_tol: float = 1e-6) -> float:
    """``-sum rho ln(rho) * spacing`` with 0 ln 0 = 0.

    Raises
    ------
    NormalizationError
        When the density's total mass is off by more than ``norm_tol``; on a
        too-coarse or too-narrow grid the entropy would be silently biased.
    """
    drift = abs(density.total() - 1.0)
    if drift > norm_tol:
        raise NormalizationError(f"density mass off by {drift:.3e} (tolerance {norm_tol:.1e})")
    return float(-np.sum(_xlogx(density.values)) * density.grid.spacing)


def joint_entropy_closed(spec: PacketSpec, t) -> float:
    """``ln[(e/2) sqrt(1 + tau**2)]``; depends on time only through tau."""
    tau = spec.tau(t)
    return leipnik_bound() + 0.5 * np.log1p(tau**2)


def marginal_densities(spec: PacketSpec, t: float, n: int = DEFAULT_GRID_N,
                       pad: float = DEFAULT_PAD) -> tuple[DensityProfile, DensityProfile]:
    """Position density sampled from the analytic form; momentum density from
    the spectral transform of the sampled wave function."""
    if not t >= 0:
        raise ValueError(f"t must be non-negative, got {t!r}")
    grid = make_adaptive_grid(spec, t, pad=pad, n=n)
    rho_x = DensityProfile(grid, position_density(spec, grid.points, t))
    rho_p = fourier_transform(sample_closed(spec, t, grid), spec).density()
    return rho_x, rho_p


def marginal_entropies(spec: PacketSpec, t: float, n: int = DEFAULT_GRID_N, pad: float = DEFAULT_PAD,
                       norm_tol: float = 1e-6) -> tuple[float, float]:
    rho_x, rho_p = marginal_densities(spec, t, n, pad)
    return differential_entropy(rho_x, norm_tol), differential_entropy(rho_p, norm_tol)


def joint_entropy_numeric(spec: PacketSpec, t: float, n: int = DEFAULT_GRID_N, pad: float = DEFAULT_PAD,
                          norm_tol: float = 1e-6) -> float:
    """``S_x + S_p - ln(2 pi hbar)`` by quadrature of the sampled marginals."""
    s_x, s_p = marginal_entropies(spec, t, n, pad, norm_tol)
    return s_x + s_p - math.log(2.0 * math.pi * spec.hbar)


@dataclass(frozen=True)
class JointDensity:
    """Product density ``g(x, p) = rho_x(x) rho_p(p)`` on a phase-space grid."""

    x_grid: SpaceGrid
    p_grid: MomentumGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.values, dtype=float, copy=True)
        if arr.shape != (self.x_grid.n, self.p_grid.n):
            raise ValueError(f"expected shape {(self.x_grid.n, self.p_grid.n)}, got {arr.shape}")
        if not np.all(np.isfinite(arr)) or np.any(arr < 0):
            raise ValueError("joint density must be finite and non-negative")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @classmethod
    def from_marginals(cls, rho_x: DensityProfile, rho_p: DensityProfile) -> "JointDensity":
        if not isinstance(rho_p.grid, MomentumGrid):
            raise TypeError("momentum marginal must live on a MomentumGrid")
        return cls(rho_x.grid, rho_p.grid, np.outer(rho_x.values, rho_p.values))

    def total(self) -> float:
        return float(self.values.sum() * self.x_grid.spacing * self.p_grid.spacing)


def joint_entropy_from_product(joint: JointDensity) -> float:
    """Entropy of the full phase-space product density minus ``ln(2 pi hbar)``.

    Small grids only; this exists to check additivity against the marginal route.
    """
    if joint.x_grid.n > MAX_PRODUCT_N or joint.p_grid.n > MAX_PRODUCT_N:
        raise ValueError(f"product-density grids are limited to {MAX_PRODUCT_N} points per axis")
    cell = joint.x_grid.spacing * joint.p_grid.spacing
    return float(-np.sum(_xlogx(joint.values)) * cell - math.log(2.0 * math.pi * joint.p_grid.hbar))
