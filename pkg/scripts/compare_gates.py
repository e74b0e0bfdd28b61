"""Rabi-error infidelity of the geometric and dynamical gates over theta.

    python scripts/compare_gates.py [--rel-omega 0.01] [--points 16]
"""

import argparse
import math

import numpy as np

from holobench.bench import compare_gates
from holobench.holonomic import SystematicError


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rel-omega", type=float, default=0.01)
    ap.add_argument("--points", type=int, default=16)
    args = ap.parse_args()

    thetas = np.linspace(math.pi / args.points, math.pi / 2, args.points // 2)
    rep = compare_gates(thetas, SystematicError(rel_omega=args.rel_omega))
    print(f"{'theta/pi':>8} {'geo formula':>12} {'dyn formula':>12} {'dyn/geo':>8} "
          f"{'geo exact':>12} {'dyn exact':>12} {'dyn/geo':>8} {'T_d/T_g':>8}")
    for r in rep.rows:
        print(f"{r.theta / math.pi:8.4f} {r.geometric_formula:12.4e} {r.dynamical_formula:12.4e} "
              f"{r.formula_ratio:8.4f} {r.geometric_oracle:12.4e} {r.dynamical_oracle:12.4e} "
              f"{r.oracle_ratio:8.4f} {r.duration_ratio:8.4f}")
    print(f"\nmax dynamical / min geometric infidelity: formula {rep.half_ratio_check:.6f}, "
          f"exact {rep.half_ratio_oracle:.6f}")
    print(f"theta = pi/4 geometric / dynamical: formula {rep.hadamard_ratio:.4f}, "
          f"exact {rep.hadamard_ratio_oracle:.4f}")
    print(f"note: {rep.note}")


if __name__ == "__main__":
    main()
