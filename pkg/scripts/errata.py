"""Where the commonly quoted closed-form sums depart from the Newton sums.

    python scripts/errata.py [--nu 0] [--q 0.5]
"""

import argparse

from qradii.verify import errata_report


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nu", type=float, default=0.0)
    ap.add_argument("--q", type=float, default=0.5)
    args = ap.parse_args()
    print(f"{'kind':>4} {'k':>2} {'quoted':>22} {'newton':>22} {'rel_err':>10}")
    for r in errata_report(args.nu, args.q):
        flag = "  <-" if r["rel_err"] > 1e-10 else ""
        print(f"{r['kind']:>4} {r['k']:>2} {r['literal']:22.15g} {r['newton']:22.15g} {r['rel_err']:10.2e}{flag}")


if __name__ == "__main__":
    main()
