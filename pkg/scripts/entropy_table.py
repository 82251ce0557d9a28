"""Print closed-form and numeric joint entropy at a few tau values, for several forces.

    python scripts/entropy_table.py --n 16384
"""
import argparse
import math

from leipnik.entropy import joint_entropy_closed, joint_entropy_numeric, leipnik_bound
from leipnik.model import PacketSpec


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=16384)
    ap.add_argument("--forces", type=float, nargs="+", default=[0.0, 1.0, 5.0])
    args = ap.parse_args()

    taus = [0.0, 0.5, 1.0, math.sqrt(3), 2.0, 5.0]
    print(f"bound ln(e/2) = {leipnik_bound():.9f}")
    print(f"{'f':>5} {'tau':>8} {'closed':>12} {'numeric':>12} {'|diff|':>10}")
    for f in args.forces:
        spec = PacketSpec(force=f)
        for tau in taus:
            c = joint_entropy_closed(spec, tau)
            n = joint_entropy_numeric(spec, tau, n=args.n)
            print(f"{f:5.1f} {tau:8.4f} {c:12.9f} {n:12.9f} {abs(c - n):10.2e}")


if __name__ == "__main__":
    main()
