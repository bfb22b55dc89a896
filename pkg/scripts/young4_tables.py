"""Path tables for every orientation of a given rank, plus tableau counts.

    python scripts/young4_tables.py --r 2 --t 1 --out paths.csv
"""

import argparse
import math

from wbalg.diagrams import seq_str, sequences
from wbalg.params import Params
from wbalg.young4 import enumerate_paths, partitions, paths_csv, standard_tableaux_count, sum_of_squares


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--r", type=int, default=2)
    ap.add_argument("--t", type=int, default=1)
    ap.add_argument("--m", type=int, default=6)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--delta", default="2")
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    params = Params(args.m, args.n, args.delta)
    every = []
    for a in sequences(args.r, args.t):
        full = enumerate_paths(a, params)
        small = enumerate_paths(a, params, small_only=True)
        every.extend(full)
        print(f"{seq_str(a)}: {len(full)} paths, {len(small)} small")
    for k in range(1, 7):
        counts = {lam: standard_tableaux_count(lam) for lam in partitions(k)}
        print(f"n={k}: sum f^2 = {sum_of_squares(k)} (n! = {math.factorial(k)}), shapes {len(counts)}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(paths_csv(every))


if __name__ == "__main__":
    main()
