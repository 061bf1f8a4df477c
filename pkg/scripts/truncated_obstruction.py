"""Table of d_L(a, d) on depth-n truncations of the four-sequence space.

Usage: python scripts/truncated_obstruction.py [--max-depth 12]
"""
import argparse
from fractions import Fraction

from ordkant.instances import truncated_obstruction
from ordkant.lawvere import dl_via_potentials, is_l_ordered, l_distance


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-depth", type=int, default=10)
    args = ap.parse_args()
    print(f"{'n':>3} {'|X|':>4} {'d_L(a,d)':>9} {'3/n':>6} {'LP':>6} {'L-ordered':>9}")
    for n in range(1, args.max_depth + 1):
        X = truncated_obstruction(n)
        dl = l_distance(X).d("a", "d")
        lp_value, _ = dl_via_potentials(X, "a", "d")
        print(f"{n:>3} {X.size:>4} {str(dl):>9} {str(Fraction(3, n)):>6} {str(lp_value):>6} {str(is_l_ordered(X)[0]):>9}")
    print("d_L(a, d) = min(1, 3/n): the direct distance d(a, d) = 1 binds for n <= 3, so only n = 1, 2 differ from 3/n.")


if __name__ == "__main__":
    main()
