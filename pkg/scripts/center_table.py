"""Dimension of the center versus the span of the constructed central elements.

    python scripts/center_table.py --delta 3 --max-rank 4 --csv center.csv
"""

import argparse
import time

from wbalg.center import center_csv, center_dimension


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--delta", default="3")
    ap.add_argument("--max-rank", type=int, default=4)
    ap.add_argument("--csv", default=None)
    args = ap.parse_args()
    results = []
    print(f"{'r':>2} {'t':>2} {'full':>5} {'built':>5} {'literal':>7} {'equal':>5}  secs")
    for n in range(1, args.max_rank + 1):
        for r in range(n, -1, -1):
            t0 = time.perf_counter()
            res = center_dimension(r, n - r, args.delta)
            results.append(res)
            lit = res.extra["literal_span_dim"]
            print(f"{r:>2} {n - r:>2} {res.full_dim:>5} {res.constructed_dim:>5} {lit:>7} {str(res.equal):>5}"
                  f"  {time.perf_counter() - t0:.1f}")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(center_csv(results))


if __name__ == "__main__":
    main()
