"""``simulate --config <path> --out <dir>``

Exit status: 0 on success, 1 when a validation check or the sweep fails,
2 on a configuration error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import experiments
from .config import ConfigError, RunConfig

log = logging.getLogger("leipnik")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="simulate", description="Constant-force Gaussian packet: entropy sweeps and validation")
    p.add_argument("--config", required=True, help="JSON config file, or '-' for stdin")
    p.add_argument("--out", required=True, type=Path, help="output directory")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _load(path: str) -> RunConfig:
    if path == "-":
        return RunConfig.load(sys.stdin)
    try:
        with open(path) as fh:
            return RunConfig.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        config = _load(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    out = args.out
    out.mkdir(parents=True, exist_ok=True)
    try:
        if "entropy" in config.outputs:
            experiments.run_entropy_sweep(config, out)
        if "density_x" in config.outputs:
            experiments.run_density_surface(config, out)
        if "density_p" in config.outputs:
            experiments.run_momentum_surface(config, out)
    except experiments.SweepError as exc:
        print(f"sweep failed: {exc}", file=sys.stderr)
        return 1

    if "validate" in config.outputs:
        results = experiments.run_validation(config)
    elif "kernel_check" in config.outputs:
        results = experiments.run_validation(config, experiments.KERNEL_CHECKS)
    else:
        return 0
    experiments.write_report(results, out / "report.json")
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:<28} error={r.error!s:<24} tol={r.tolerance:g}")
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
