"""Worst residual per relation family of the truncated images, at two precisions.

    python scripts/isomorphism_residuals.py --max-rank 3
"""

import argparse
from collections import defaultdict

from wbalg.cyclotomic import build
from wbalg.diagrams import sequences
from wbalg.isomorphism import ExactTruncation, build_phi_images, verify_isomorphism_relations, verify_jm_transport
from wbalg.params import Params


def family_maxima(alg, exact, bits):
    P = build_phi_images(alg, precision=bits, exact=exact)
    out = defaultdict(float)
    for rep in (verify_isomorphism_relations(P), verify_jm_transport(P)):
        for key, res in rep.data["residuals"].items():
            fam = key.split("|")[0]
            out[fam] = max(out[fam], res)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=6)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--delta", default="2")
    ap.add_argument("--max-rank", type=int, default=3)
    args = ap.parse_args()
    params = Params(args.m, args.n, args.delta)
    print(f"{'r,t':<5} {'family':<22} {'128 bits':>10} {'256 bits':>10}")
    for k in range(2, args.max_rank + 1):
        for r in range(k, -1, -1):
            alg = build(r, k - r, params)
            exact = ExactTruncation(alg)
            lo, hi = family_maxima(alg, exact, 128), family_maxima(alg, exact, 256)
            for fam in sorted(hi):
                print(f"{r},{k - r:<3} {fam:<22} {lo[fam]:>10.1e} {hi[fam]:>10.1e}")


if __name__ == "__main__":
    main()
