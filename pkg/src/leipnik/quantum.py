"""Closed-form packet, spectral transform, and kernel propagation.

The closed-form wave function is the analytic solution for a Gaussian packet
under ``V(x) = -f x``. Kernel propagation integrates the exact propagator
against a sampled initial state and serves as an independent route to the
same evolved state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import czt

from . import classical
from .model import (
    DEFAULT_GRID_N,
    DEFAULT_PAD,
    ComplexField,
    MomentumGrid,
    PacketSpec,
    SpaceGrid,
    make_adaptive_grid,
)


class KernelAccuracyError(RuntimeError):
    """Kernel quadrature drifted from unit norm beyond tolerance."""


def phase_integral(spec: PacketSpec, t):
    """Closed form of ``int_0^t (p0 + f s)**2 / (2m) ds``."""
    p0, f = spec.p0, spec.force
    return (p0**2 * t + p0 * f * t**2 + f**2 * t**3 / 3.0) / (2.0 * spec.mass)


def psi_closed(spec: PacketSpec, x, t):
    """Time-dependent wave function of the packet at positions ``x``.

    Written term by term as the analytic solution: a unit-modulus phase
    factor, the amplitude normalization, the chirped Gaussian envelope, and
    the plane wave carrying momentum ``p0 + f t``.
    """
    x = np.asarray(x, dtype=float)
    tau = spec.tau(t)
    s2 = spec.sigma**2
    spread = 1.0 + tau**2
    unit_phase = ((1 - 1j * tau) / (1 + 1j * tau)) ** 0.25
    amplitude = (1.0 / (math.pi * s2 * spread)) ** 0.25
    envelope = np.exp(-((x - spec.center(t)) ** 2) / (2.0 * s2 * spread) * (1 - 1j * tau))
    plane = np.exp(1j / spec.hbar * (spec.mean_momentum(t) * x - phase_integral(spec, t)))
    out = unit_phase * amplitude * envelope * plane
    return out if out.ndim else complex(out)


def position_density(spec: PacketSpec, x, t):
    """|psi|**2: Gaussian with mean ``center(t)`` and variance ``sigma_t**2 / 2``."""
    x = np.asarray(x, dtype=float)
    w2 = spec.width(t) ** 2
    out = np.exp(-((x - spec.center(t)) ** 2) / w2) / np.sqrt(math.pi * w2)
    return out if out.ndim else float(out)


def momentum_density(spec: PacketSpec, p, t):
    """|psi~|**2: Gaussian centred on ``p0 + f t`` with constant width.

    The mean is ``+(p0 + f t)``, as Ehrenfest's theorem and the Fourier
    transform of the closed-form state both require.
    """
    p = np.asarray(p, dtype=float)
    a = spec.sigma**2 / spec.hbar**2
    out = np.sqrt(a / math.pi) * np.exp(-a * (p - spec.mean_momentum(t)) ** 2)
    return out if out.ndim else float(out)


def sample_closed(spec: PacketSpec, t: float, grid: SpaceGrid | None = None, pad: float = DEFAULT_PAD,
                  n: int = DEFAULT_GRID_N) -> ComplexField:
    """psi_closed sampled on ``grid`` (default: the adaptive grid at ``t``)."""
    if grid is None:
        grid = make_adaptive_grid(spec, t, pad=pad, n=n)
    return ComplexField(grid, psi_closed(spec, grid.points, t))


def estimate_mean_momentum(state: ComplexField, hbar: float) -> float:
    """<p> from the spectral derivative of the field."""
    psi = state.values
    k = 2 * np.pi * np.fft.fftfreq(state.grid.n, state.grid.spacing)
    dpsi = np.fft.ifft(1j * k * np.fft.fft(psi))
    num = np.sum(np.conj(psi) * dpsi).imag
    return float(hbar * num / np.sum(np.abs(psi) ** 2))


def fourier_transform(state: ComplexField, spec: PacketSpec, p_center: float | None = None) -> ComplexField:
    """Continuum-normalized transform to momentum space.

    Returns samples of ``(2 pi hbar)**-1/2 int exp(-i p x / hbar) psi(x) dx`` on
    the reciprocal grid, with ``dp * dx * n = 2 pi hbar``. The momentum window
    is centred on ``p_center``, estimated from the field when omitted.
    """
    grid = state.grid
    if state.values.shape != (grid.n,):
        raise ValueError("field values do not match grid size")
    hbar = spec.hbar
    if p_center is None:
        p_center = estimate_mean_momentum(state, hbar)
    pgrid = MomentumGrid.reciprocal_to(grid, hbar, center=p_center)
    offsets = grid.points - grid.start
    pre = state.values * np.exp(-1j * pgrid.start * offsets / hbar)
    post = grid.spacing * np.exp(-1j * pgrid.points * grid.start / hbar) / math.sqrt(2 * math.pi * hbar)
    return ComplexField(pgrid, post * np.fft.fft(pre))


def inverse_fourier_transform(field: ComplexField, grid: SpaceGrid) -> ComplexField:
    """Exact inverse of :func:`fourier_transform` back onto ``grid``."""
    pgrid = field.grid
    if not isinstance(pgrid, MomentumGrid):
        raise TypeError("inverse transform expects a field on a MomentumGrid")
    if grid.n != pgrid.n:
        raise ValueError("space and momentum grids differ in size")
    hbar = pgrid.hbar
    if not math.isclose(pgrid.spacing * grid.spacing * grid.n, 2 * math.pi * hbar, rel_tol=1e-12):
        raise ValueError("grids are not reciprocal")
    undo_post = field.values * np.exp(1j * pgrid.points * grid.start / hbar) * math.sqrt(2 * math.pi * hbar) / grid.spacing
    pre = np.fft.ifft(undo_post)
    return ComplexField(grid, pre * np.exp(1j * pgrid.start * (grid.points - grid.start) / hbar))


def spectral_second_derivative(state: ComplexField) -> np.ndarray:
    k = 2 * np.pi * np.fft.fftfreq(state.grid.n, state.grid.spacing)
    return np.fft.ifft(-(k**2) * np.fft.fft(state.values))


@dataclass(frozen=True)
class Moments:
    mean_x: float
    var_x: float
    mean_p: float
    var_p: float
    cov_xp: float


def moments(state: ComplexField, hbar: float) -> Moments:
    """First and second phase-space moments of a sampled state."""
    psi = state.values
    x = state.grid.points
    dx = state.grid.spacing
    k = 2 * np.pi * np.fft.fftfreq(state.grid.n, dx)
    dpsi = np.fft.ifft(1j * k * np.fft.fft(psi))
    norm = np.sum(np.abs(psi) ** 2) * dx
    rho = np.abs(psi) ** 2 / norm
    mean_x = np.sum(x * rho) * dx
    var_x = np.sum((x - mean_x) ** 2 * rho) * dx
    mean_p = hbar * np.sum(np.conj(psi) * dpsi).imag * dx / norm
    var_p = hbar**2 * np.sum(np.abs(dpsi) ** 2) * dx / norm - mean_p**2
    # symmetrized <(x - <x>) p>
    cov = hbar * np.sum(np.conj(psi) * (x - mean_x) * dpsi).imag * dx / norm
    return Moments(float(mean_x), float(var_x), float(mean_p), float(var_p), float(cov))


def predicted_grid(spec: PacketSpec, initial: ComplexField, duration: float,
                   pad: float = DEFAULT_PAD) -> SpaceGrid:
    """Grid covering the evolved packet, from exact moment propagation.

    For a Hamiltonian at most quadratic in x and p the first and second
    moments evolve classically, so this needs no closed-form solution.
    """
    mo = moments(initial, spec.hbar)
    T, m = duration, spec.mass
    mean = mo.mean_x + mo.mean_p * T / m + 0.5 * spec.force * T**2 / m
    var = mo.var_x + 2 * mo.cov_xp * T / m + mo.var_p * (T / m) ** 2
    # pad counts widths sigma_t = sqrt(2) * std, matching make_adaptive_grid
    half = max(pad * math.sqrt(2 * var), initial.grid.half_width * 0.5)
    return SpaceGrid(n=initial.grid.n, center=mean, half_width=half)


def _upsample(state: ComplexField, factor: int) -> tuple[np.ndarray, np.ndarray]:
    """Band-limited interpolation onto a grid ``factor`` times finer."""
    n = state.grid.n
    spec_ = np.fft.fftshift(np.fft.fft(state.values))
    big = np.zeros(n * factor, dtype=complex)
    lo = (n * factor - n) // 2
    big[lo:lo + n] = spec_
    values = np.fft.ifft(np.fft.ifftshift(big)) * factor
    x = state.grid.start + state.grid.spacing / factor * np.arange(n * factor)
    return x, values


def propagate_with_kernel(spec: PacketSpec, initial: ComplexField, duration: float,
                          grid: SpaceGrid | None = None, norm_tol: float = 1e-6) -> ComplexField:
    """Evolve ``initial`` by trapezoid quadrature of the propagator integral.

    ``psi(x, T) = int K(x, x'; T) psi(x', 0) dx'``. Because the kernel phase is
    quadratic, ``K(x, x') K(c, c') = K(x, c') K(c, x') exp(-i k (x-c)(x'-c'))``
    with ``k = m/(hbar T)``, so the trapezoid sum over a uniform input grid is
    a chirp-z transform. The input is spectrally upsampled until the chirped
    integrand is resolved on the quadrature nodes.

    Raises
    ------
    KernelAccuracyError
        If the output norm differs from the input norm by more than ``norm_tol``.
    """
    if not duration > 0:
        raise ValueError(f"duration must be positive, got {duration!r}")
    if grid is None:
        grid = predicted_grid(spec, initial, duration)
    hbar = spec.hbar
    kappa = -classical.action_mixed_derivative(spec, duration) / hbar

    # highest local frequency of the integrand over both supports
    mo = moments(initial, hbar)
    band = (abs(mo.mean_p) + 10 * math.sqrt(max(mo.var_p, 0.0))) / hbar
    reach = max(abs(grid.start + grid.half_width * 2 - initial.grid.start),
                abs(initial.grid.start + initial.grid.half_width * 2 - grid.start))
    omega = kappa * reach + abs(spec.force) * duration / (2 * hbar) + band
    target = math.pi / (1.5 * omega)
    factor = 1
    while initial.grid.spacing / factor > target:
        factor *= 2
    xs, vals = _upsample(initial, factor) if factor > 1 else (initial.grid.points, initial.values)
    dxs = xs[1] - xs[0]

    c_out, c_in = grid.center, initial.grid.center
    h = classical.kernel(spec, c_out, xs, duration) * vals
    x_out = grid.points
    # sum_j exp(-i kappa (x_i - c_out)(x_j - c_in)) h_j, as a chirp-z transform
    u0 = x_out[0] - c_out
    v = xs - c_in
    a = np.exp(1j * kappa * u0 * dxs)
    w = np.exp(-1j * kappa * grid.spacing * dxs)
    tail = czt(h, m=grid.n, w=w, a=a)
    tail *= np.exp(-1j * kappa * (x_out - c_out) * v[0])
    norm_ref = classical.kernel(spec, c_out, c_in, duration)
    out = classical.kernel(spec, x_out, c_in, duration) / norm_ref * tail * dxs

    result = ComplexField(grid, out)
    drift = abs(result.norm() - initial.norm())
    if drift > norm_tol:
        raise KernelAccuracyError(f"kernel propagation norm drift {drift:.3e} exceeds {norm_tol:.1e}")
    return result


def align_global_phase(field: np.ndarray, reference: np.ndarray) -> np.ndarray:
    """Rotate ``field`` by one global phase so it matches ``reference`` at its peak."""
    i = int(np.argmax(np.abs(reference)))
    rot = reference[i] / field[i]
    return field * rot / abs(rot)


def relative_l2(field: np.ndarray, reference: np.ndarray) -> float:
    return float(np.linalg.norm(field - reference) / np.linalg.norm(reference))


def schrodinger_residual(spec: PacketSpec, t: float, grid: SpaceGrid | None = None, dt: float = 1e-5) -> float:
    """Relative L2 norm of ``i hbar psi_t - H psi`` for the closed-form state.

    ``H = -(hbar**2/2m) d_xx - f x``. Time derivative by central difference,
    space derivative spectrally.
    """
    if grid is None:
        grid = make_adaptive_grid(spec, t)
    x = grid.points
    psi = sample_closed(spec, t, grid)
    dpsi_dt = (psi_closed(spec, x, t + dt) - psi_closed(spec, x, t - dt)) / (2 * dt)
    h_psi = -(spec.hbar**2) / (2 * spec.mass) * spectral_second_derivative(psi) - spec.force * x * psi.values
    residual = 1j * spec.hbar * dpsi_dt - h_psi
    return float(np.linalg.norm(residual) / np.linalg.norm(psi.values))
