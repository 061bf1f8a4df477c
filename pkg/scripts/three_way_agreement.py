"""Cross-check the three stochastic-order deciders on random instances.

Usage: python scripts/three_way_agreement.py [--count 1000] [--max-size 8] [--seed 0]
"""
import argparse
import random
import time
from collections import Counter

from ordkant.instances import random_measure, random_ordered_pair, random_space
from ordkant.storder import order_by_coupling, order_by_duality, order_by_upper_sets


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--max-size", type=int, default=8)
    ap.add_argument("--max-support", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    verdicts, timings = Counter(), Counter()
    disagreements = []
    for k in range(args.count):
        X = random_space(rng, rng.randint(1, args.max_size))
        if rng.random() < 0.5:
            p, q = random_ordered_pair(rng, X, args.max_support)
        else:
            p, q = random_measure(rng, X, args.max_support), random_measure(rng, X, args.max_support)
        ws = []
        for fn in (order_by_coupling, order_by_upper_sets, order_by_duality):
            t = time.perf_counter()
            w = fn(p, q)
            timings[w.method] += time.perf_counter() - t
            if not w.verify(p, q):
                disagreements.append((k, w.method, "witness does not verify"))
            ws.append(w)
        if len({w.verdict for w in ws}) != 1:
            disagreements.append((k, "all", [w.verdict for w in ws]))
        verdicts[ws[0].verdict] += 1

    print(f"instances: {args.count} (ordered {verdicts[True]}, not ordered {verdicts[False]})")
    for method, secs in timings.items():
        print(f"  {method:<10} {secs:7.2f}s")
    print(f"disagreements: {len(disagreements)}")
    for d in disagreements[:10]:
        print("  ", d)


if __name__ == "__main__":
    main()
