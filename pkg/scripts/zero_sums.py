"""Partial sums over scanned zeros next to the closed forms and tail estimates.

    python scripts/zero_sums.py [--zeros 8]
"""

import argparse

from qradii.eulerray import closed_form_sums, growth_ratio, zero_power_sums, zero_scan, zero_sum_tail
from qradii.qseries import QDomainParams
from qradii.series import FunctionKind


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--zeros", type=int, default=8)
    args = ap.parse_args()
    print(f"{'kind':>4} {'nu':>4} {'q':>4} {'k':>2} {'closed':>18} {'closed-partial':>15} {'tail':>10}")
    for kind in FunctionKind:
        for nu in (0.0, 1.0):
            for q in (0.3, 0.7):
                p = QDomainParams(nu, q)
                zeros = zero_scan(kind, p, args.zeros)
                closed = closed_form_sums(kind, p)
                for k in (1, 2):
                    gap = closed[k] - zero_power_sums(zeros, k)[k]
                    tail = zero_sum_tail(zeros, k, growth_ratio(kind, q))
                    print(f"{kind.value:>4} {nu:4.1f} {q:4.1f} {k:>2} {closed[k]:18.12g} {gap:15.3e} {tail:10.3e}")


if __name__ == "__main__":
    main()
