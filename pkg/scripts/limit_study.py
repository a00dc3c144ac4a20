"""Scaled radii as q -> 1 against the classical windows and radii.

    python scripts/limit_study.py [--nus 0,1] [--qs 0.9,0.99,0.999]
"""

import argparse

from qradii.series import FunctionKind
from qradii.verify import check_limit_rows, limit_rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nus", default="0,1")
    ap.add_argument("--qs", default="0.9,0.99,0.999")
    args = ap.parse_args()
    nus = [float(v) for v in args.nus.split(",")]
    qs = [float(v) for v in args.qs.split(",")]
    print(f"{'kind':>4} {'nu':>5} {'q':>6} {'scaled':>12} {'window_k1':>24} {'classical':>10} {'|gap|':>10}")
    for kind in FunctionKind:
        for nu in nus:
            rows = limit_rows(kind, nu, qs)
            for r in rows:
                lo, hi = r.window_k1
                print(
                    f"{r.kind:>4} {r.nu:5.1f} {r.q:6.3f} {r.scaled:12.8f} "
                    f"({lo:10.6f}, {hi:10.6f}) {r.classical:10.6f} {r.distance_classical:10.2e}"
                )
            for msg in check_limit_rows(rows):
                print("  !", msg)


if __name__ == "__main__":
    main()
