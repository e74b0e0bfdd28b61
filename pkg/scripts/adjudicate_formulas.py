"""Second-order coefficient table: published formulas against exact averages.

    python scripts/adjudicate_formulas.py [--delta 1e-3] [--nodes 64]
"""

import argparse
import math

from holobench.bench import AverageConfig, adjudicate_formulas


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--delta", type=float, default=1e-3)
    ap.add_argument("--nodes", type=int, default=64, help="quadrature nodes per angle")
    args = ap.parse_args()

    cfg = AverageConfig(nodes_alpha=args.nodes, nodes_beta=args.nodes)
    report = adjudicate_formulas(delta=args.delta, cfg=cfg)
    print(f"{'term':<18} {'theta/pi':>8} {'published':>10} {'per-state':>10} {'exact':>10} {'slope':>6}  verdict")
    for r in report.rows:
        slope = "  -" if math.isnan(r.residual_slope) else f"{r.residual_slope:6.2f}"
        print(f"{r.term:<18} {r.theta / math.pi:8.3f} {r.paper:10.5f} {r.per_state:10.5f} "
              f"{r.exact:10.5f} {slope:>6}  {r.verdict}")
    print("\ncoefficients are per unit of", ", ".join(sorted({f"{r.term}: {r.unit}" for r in report.rows})))


if __name__ == "__main__":
    main()
