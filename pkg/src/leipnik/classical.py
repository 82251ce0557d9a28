"""Classical path, action and the exact Feynman kernel for L = m v**2/2 + f x.

For a Lagrangian at most quadratic in x the semiclassical propagator is
exact, so ``kernel`` is the full quantum propagator, not an approximation.
"""

from __future__ import annotations

import numpy as np

from .model import PacketSpec


def _check_duration(duration):
    if not np.all(np.asarray(duration) > 0):
        raise ValueError(f"duration must be positive, got {duration!r}")


def classical_path(spec: PacketSpec, x_start, x_end, duration, tau):
    """Position at time ``tau`` along the classical path from ``x_start`` to ``x_end``.

    Parameters
    ----------
    spec : PacketSpec
        Supplies mass and force.
    x_start, x_end : float
        Endpoints at ``tau = 0`` and ``tau = duration``.
    duration : float
        Elapsed time, strictly positive.
    tau : float or ndarray
        Intermediate times in ``[0, duration]``.
    """
    _check_duration(duration)
    tau = np.asarray(tau, dtype=float)
    if np.any(tau < 0) or np.any(tau > duration):
        raise ValueError("tau must lie in [0, duration]")
    accel = spec.force / spec.mass
    velocity0 = (x_end - x_start) / duration - 0.5 * accel * duration
    out = x_start + velocity0 * tau + 0.5 * accel * tau**2
    return out if out.ndim else float(out)


def classical_action(spec: PacketSpec, x_start, x_end, duration):
    """Action of the classical path, in closed (expanded) form."""
    _check_duration(duration)
    m, f, T = spec.mass, spec.force, duration
    return (
        0.5 * m * (x_end - x_start) ** 2 / T
        + 0.5 * (x_end + x_start) * f * T
        - f**2 * T**3 / (24.0 * m)
    )


def action_mixed_derivative(spec: PacketSpec, duration):
    """d^2 S_cl / dx_start dx_end, which is -m/T independent of the force."""
    _check_duration(duration)
    return -spec.mass / duration


def van_vleck_prefactor(spec: PacketSpec, duration) -> complex:
    """Prefactor ``[i/(2 pi hbar) d^2S/dx'dx'']^(1/2)``.

    The principal square root yields ``exp(-i pi/4) sqrt(m/(2 pi hbar T))``,
    the free-particle branch.
    """
    mixed = action_mixed_derivative(spec, duration)
    return np.sqrt(1j * mixed / (2.0 * np.pi * spec.hbar) + 0j)


def kernel(spec: PacketSpec, x_end, x_start, duration):
    """Propagator K(x_end, x_start; duration), vectorized over the positions."""
    action = classical_action(spec, x_start, x_end, duration)
    return van_vleck_prefactor(spec, duration) * np.exp(1j * action / spec.hbar)


def _smooth_step(s):
    # C-infinity step: 1 for s <= 0, 0 for s >= 1
    s = np.clip(s, 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        a = np.where(s < 1.0, np.exp(-1.0 / np.where(s < 1.0, 1.0 - s, 1.0)), 0.0)
        b = np.where(s > 0.0, np.exp(-1.0 / np.where(s > 0.0, s, 1.0)), 0.0)
    return a / (a + b)


def compose_kernels(spec: PacketSpec, x_end, x_start, t1, t2, n=2**16, width=40.0):
    """Numerically evaluate ``int K(x_end, y; t2) K(y, x_start; t1) dy``.

    The integrand is a pure Fresnel oscillation, so the integral is only
    conditionally convergent. It is regulated with a C-infinity window that is
    flat on the inner half of ``mid +- width*sqrt(hbar*(t1+t2)/m)`` and falls
    to zero at the edges; the chirp makes the taper's contribution decay
    faster than any power. Trapezoid rule on ``n`` points.
    """
    _check_duration(t1)
    _check_duration(t2)
    mid = 0.5 * (x_end + x_start)
    half = width * np.sqrt(spec.hbar * (t1 + t2) / spec.mass)
    y = np.linspace(mid - half, mid + half, n)
    window = _smooth_step((np.abs(y - mid) - 0.5 * half) / (0.5 * half))
    integrand = kernel(spec, x_end, y, t2) * kernel(spec, y, x_start, t1) * window
    return np.trapezoid(integrand, y)
