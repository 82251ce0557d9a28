"""Gaussian wave packet under a constant force: propagators, densities and
the time-dependent Leipnik joint entropy."""

from .classical import (
    classical_action,
    classical_path,
    compose_kernels,
    kernel,
    van_vleck_prefactor,
)
from .entropy import (
    JointDensity,
    differential_entropy,
    joint_entropy_closed,
    joint_entropy_from_product,
    joint_entropy_numeric,
    leipnik_bound,
)
from .model import (
    ComplexField,
    DensityProfile,
    EntropyRecord,
    MomentumGrid,
    PacketSpec,
    SpaceGrid,
    make_adaptive_grid,
)
from .quantum import (
    fourier_transform,
    inverse_fourier_transform,
    momentum_density,
    position_density,
    propagate_with_kernel,
    psi_closed,
)

__version__ = "0.1.0"
