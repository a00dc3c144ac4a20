"""Run the default verification grid and write a JSON report.

    python scripts/run_verification.py [-o report.json] [--workers 4]
"""

import argparse
import json
import time

from qradii.verify import run_verification


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("-o", "--output", default="verification_report.json")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    t0 = time.perf_counter()
    report = run_verification(workers=args.workers)
    with open(args.output, "w") as fh:
        json.dump(report.to_dict(), fh, indent=2)
    worst_theorem = max(p.theorem_residual_normalized for p in report.points)
    worst_margin = min(min(p.sandwich_margins) for p in report.points)
    print(f"{report.passed_count}/{len(report.points)} points passed in {time.perf_counter() - t0:.2f}s")
    print(f"largest normalized theorem residual {worst_theorem:.3e}")
    print(f"smallest relative sandwich margin   {worst_margin:.3e}")
    for msg in report.limit_failures:
        print("limit:", msg)


if __name__ == "__main__":
    main()
