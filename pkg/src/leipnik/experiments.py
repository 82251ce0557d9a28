"""Time sweeps, density surfaces and the validation report.

CSV files are written with 9 significant digits, rows in increasing t.
"""

from __future__ import annotations

import csv
import json
import logging
import math
from dataclasses import asdict, dataclass, replace
from pathlib import Path

import numpy as np

from . import classical, quantum
from .config import RunConfig
from .entropy import (
    NormalizationError,
    joint_entropy_closed,
    joint_entropy_numeric,
    leipnik_bound,
    marginal_densities,
    differential_entropy,
)
from .model import DensityProfile, EntropyRecord, PacketSpec, make_adaptive_grid

log = logging.getLogger(__name__)

ENTROPY_COLUMNS = ("t", "tau", "s_x", "s_p", "s_joint_closed", "s_joint_numeric", "bound")
SWEEP_NORM_TOL = 1e-6


class SweepError(RuntimeError):
    """A time sample failed its grid normalization check."""


def _fmt(value: float) -> str:
    return f"{value:.9g}"


def _write_rows(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def entropy_record(spec: PacketSpec, t: float, n: int, pad: float) -> EntropyRecord:
    rho_x, rho_p = marginal_densities(spec, t, n, pad)
    try:
        s_x = differential_entropy(rho_x, SWEEP_NORM_TOL)
        s_p = differential_entropy(rho_p, SWEEP_NORM_TOL)
    except NormalizationError as exc:
        raise SweepError(f"normalization failure at t={t!r}: {exc}") from exc
    return EntropyRecord(
        t=float(t),
        tau=float(spec.tau(t)),
        s_x=s_x,
        s_p=s_p,
        s_joint_closed=float(joint_entropy_closed(spec, t)),
        s_joint_numeric=s_x + s_p - math.log(2 * math.pi * spec.hbar),
        bound=leipnik_bound(),
    )


def run_entropy_sweep(config: RunConfig, out_dir: Path | None = None) -> list[EntropyRecord]:
    """Entropy records at ``n_t`` uniform times on ``[0, t_max]``."""
    spec = config.packet
    records = [entropy_record(spec, float(t), config.grid_n, config.pad) for t in config.times]
    if out_dir is not None:
        _write_rows(Path(out_dir) / "entropy.csv", ENTROPY_COLUMNS,
                    ([getattr(r, c) for c in ENTROPY_COLUMNS] for r in records))
    return records


def run_density_surface(config: RunConfig, out_dir: Path | None = None) -> np.ndarray:
    """Rows ``(t, x, rho)`` of the position density over the sweep."""
    spec = config.packet
    blocks = []
    for t in config.times:
        grid = make_adaptive_grid(spec, float(t), pad=config.pad, n=config.grid_n)
        rho = quantum.position_density(spec, grid.points, float(t))
        blocks.append(np.column_stack([np.full(grid.n, t), grid.points, rho]))
    table = np.vstack(blocks)
    if out_dir is not None:
        _write_rows(Path(out_dir) / "density_x.csv", ("t", "x", "rho"), table)
    return table


def run_momentum_surface(config: RunConfig, out_dir: Path | None = None) -> np.ndarray:
    """Rows ``(t, p, rho)`` of the momentum density from the spectral transform."""
    spec = config.packet
    blocks = []
    for t in config.times:
        _, rho_p = marginal_densities(spec, float(t), config.grid_n, config.pad)
        blocks.append(np.column_stack([np.full(rho_p.grid.n, t), rho_p.grid.points, rho_p.values]))
    table = np.vstack(blocks)
    if out_dir is not None:
        _write_rows(Path(out_dir) / "density_p.csv", ("t", "p", "rho"), table)
    return table


@dataclass(frozen=True)
class CheckResult:
    name: str
    error: float | None
    tolerance: float
    passed: bool
    detail: str = ""

    @classmethod
    def measured(cls, name: str, error: float, tolerance: float, detail: str = "") -> "CheckResult":
        ok = bool(np.isfinite(error) and error <= tolerance)
        return cls(name, float(error) if np.isfinite(error) else None, tolerance, ok, detail)


def _guarded(name: str, tolerance: float, fn) -> CheckResult:
    try:
        return fn()
    except Exception as exc:  # a crashed oracle is a failed check, not a crashed report
        log.warning("check %s raised %s", name, exc)
        return CheckResult(name, None, tolerance, False, f"{type(exc).__name__}: {exc}")


def check_kernel_propagation(config: RunConfig) -> CheckResult:
    spec = config.packet
    T = spec.mass * spec.sigma**2 / spec.hbar
    tol = 1e-6

    def run():
        initial = quantum.sample_closed(spec, 0.0, pad=config.pad, n=config.grid_n)
        evolved = quantum.propagate_with_kernel(spec, initial, T)
        ref = quantum.psi_closed(spec, evolved.grid.points, T)
        err = quantum.relative_l2(quantum.align_global_phase(evolved.values, ref), ref)
        return CheckResult.measured("kernel_propagation", err, tol, f"T={T:g}")

    return _guarded("kernel_propagation", tol, run)


def check_kernel_composition(config: RunConfig) -> CheckResult:
    spec = config.packet
    tol = 1e-4
    scale = spec.sigma
    unit_t = spec.mass * spec.sigma**2 / spec.hbar
    spots = [(0.0, 0.0, 0.5, 0.5), (1.0, -0.5, 0.3, 0.7), (-1.2, 0.8, 1.0, 1.0),
             (2.0, 1.5, 0.25, 1.5), (0.3, -2.0, 2.0, 0.4)]

    def run():
        err = 0.0
        for xe, xs, t1, t2 in spots:
            xe, xs, t1, t2 = xe * scale, xs * scale, t1 * unit_t, t2 * unit_t
            composed = classical.compose_kernels(spec, xe, xs, t1, t2)
            direct = classical.kernel(spec, xe, xs, t1 + t2)
            err = max(err, abs(composed - direct))
        return CheckResult.measured("kernel_composition", err, tol, f"{len(spots)} spot points")

    return _guarded("kernel_composition", tol, run)


def _check_times(config: RunConfig) -> list[float]:
    return sorted({0.0, 0.5 * config.t_max, float(config.t_max)})


def check_fourier_vs_closed(config: RunConfig) -> CheckResult:
    spec = config.packet
    tol = 1e-8

    def run():
        err = 0.0
        for t in _check_times(config):
            _, rho_p = marginal_densities(spec, t, config.grid_n, config.pad)
            # compare on the 8-sigma momentum window around the mean
            p = rho_p.grid.points
            std_p = spec.hbar / (math.sqrt(2) * spec.sigma)
            win = np.abs(p - spec.mean_momentum(t)) <= 8 * std_p
            err = max(err, float(np.max(np.abs(rho_p.values[win] - quantum.momentum_density(spec, p[win], t)))))
        return CheckResult.measured("fourier_vs_closed_momentum", err, tol, "L-infinity")

    return _guarded("fourier_vs_closed_momentum", tol, run)


def check_momentum_peak(config: RunConfig) -> CheckResult:
    spec = config.packet
    tol = 1.0

    def run():
        worst = 0.0
        for t in _check_times(config):
            _, rho_p = marginal_densities(spec, t, config.grid_n, config.pad)
            peak = rho_p.grid.points[int(np.argmax(rho_p.values))]
            worst = max(worst, abs(peak - spec.mean_momentum(t)) / rho_p.grid.spacing)
        return CheckResult.measured("momentum_peak", worst, tol, "offset in momentum-grid spacings")

    return _guarded("momentum_peak", tol, run)


def check_schrodinger(config: RunConfig) -> CheckResult:
    spec = config.packet
    tol = 1e-5
    unit_t = spec.mass * spec.sigma**2 / spec.hbar

    def run():
        err = 0.0
        for t in (0.5, 1.0, 2.0):
            grid = make_adaptive_grid(spec, t * unit_t, pad=config.pad, n=config.grid_n)
            err = max(err, quantum.schrodinger_residual(spec, t * unit_t, grid, dt=1e-5 * unit_t))
        return CheckResult.measured("schrodinger_residual", err, tol, "relative L2")

    return _guarded("schrodinger_residual", tol, run)


def check_ehrenfest(config: RunConfig) -> CheckResult:
    spec = config.packet
    tol = 1e-8

    def run():
        err = 0.0
        for t in _check_times(config):
            rho_x, rho_p = marginal_densities(spec, t, config.grid_n, config.pad)
            err = max(err,
                      abs(rho_x.mean() - spec.center(t)),
                      abs(rho_p.mean() - spec.mean_momentum(t)),
                      abs(rho_x.variance() - spec.width(t) ** 2 / 2),
                      abs(rho_p.variance() - spec.hbar**2 / (2 * spec.sigma**2)))
        return CheckResult.measured("ehrenfest_moments", err, tol, "means and variances")

    return _guarded("ehrenfest_moments", tol, run)


def check_normalization(config: RunConfig) -> CheckResult:
    spec = config.packet
    tol = 1e-9

    def run():
        err = 0.0
        for t in config.times:
            grid = make_adaptive_grid(spec, float(t), pad=config.pad, n=config.grid_n)
            rho = DensityProfile(grid, quantum.position_density(spec, grid.points, float(t)))
            err = max(err, abs(rho.total() - 1.0))
        return CheckResult.measured("normalization", err, tol, "position density mass")

    return _guarded("normalization", tol, run)


ENTROPY_TAUS = (0.0, 0.5, 1.0, 2.0, 5.0)


def check_entropy_agreement(config: RunConfig) -> CheckResult:
    spec = config.packet
    tol = 1e-6
    unit_t = spec.mass * spec.sigma**2 / spec.hbar

    def run():
        err = 0.0
        for tau in ENTROPY_TAUS:
            numeric = joint_entropy_numeric(spec, tau * unit_t, config.grid_n, config.pad, norm_tol=np.inf)
            err = max(err, abs(numeric - joint_entropy_closed(spec, tau * unit_t)))
        return CheckResult.measured("entropy_agreement", err, tol, "numeric vs closed form")

    return _guarded("entropy_agreement", tol, run)


def check_force_independence(config: RunConfig) -> CheckResult:
    spec = config.packet
    other = replace(spec, force=5.0 if spec.force == 0 else 0.0)
    tol = 1e-6
    unit_t = spec.mass * spec.sigma**2 / spec.hbar

    def run():
        err = 0.0
        for tau in (0.0, 1.0, 2.0, 5.0):
            a = joint_entropy_numeric(spec, tau * unit_t, config.grid_n, config.pad, norm_tol=np.inf)
            b = joint_entropy_numeric(other, tau * unit_t, config.grid_n, config.pad, norm_tol=np.inf)
            err = max(err, abs(a - b))
        return CheckResult.measured("force_independence", err, tol, f"f={spec.force:g} vs f={other.force:g}")

    return _guarded("force_independence", tol, run)


KERNEL_CHECKS = (check_kernel_propagation, check_kernel_composition)
ALL_CHECKS = (
    check_kernel_propagation,
    check_kernel_composition,
    check_fourier_vs_closed,
    check_momentum_peak,
    check_schrodinger,
    check_ehrenfest,
    check_normalization,
    check_entropy_agreement,
    check_force_independence,
)


def run_validation(config: RunConfig, checks=ALL_CHECKS) -> list[CheckResult]:
    results = []
    for check in checks:
        result = check(config)
        log.info("%-28s error=%s tol=%g %s", result.name, result.error, result.tolerance,
                 "PASS" if result.passed else "FAIL")
        results.append(result)
    return results


def write_report(results: list[CheckResult], path: Path) -> None:
    payload = {"passed": all(r.passed for r in results), "checks": [asdict(r) for r in results]}
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")
