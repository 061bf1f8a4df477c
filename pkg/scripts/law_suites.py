"""Run the monad, bimonoidal, algebra and monotonicity suites and print a summary.

Usage: python scripts/law_suites.py [--count 200] [--seed 0]
"""
import argparse
import time

from ordkant.laws import run_all


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    t = time.perf_counter()
    report = run_all(args.seed, args.count)
    for suite, fails in report.items():
        print(f"{suite:<13} {len(fails)} violations")
        for f in fails[:3]:
            print("   ", f)
    print(f"{args.count} rounds in {time.perf_counter() - t:.1f}s")


if __name__ == "__main__":
    main()
