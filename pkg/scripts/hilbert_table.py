"""Hilbert functions of determinantal loci: evaluation sampling vs row reduction.

    python3 scripts/hilbert_table.py --shape 3x3 --rank 1 --dmax 4
"""

import argparse
import time

from hopfinv.detinv import hilbert_dim_exact, hilbert_evaluation


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--shape", default="2x2")
    ap.add_argument("--rank", type=int, default=1)
    ap.add_argument("--dmax", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    g, f = (int(x) for x in args.shape.split("x"))

    print(f"{'d':>2s} {'sampled':>8s} {'exact':>6s} {'points':>7s} {'batches':>7s}")
    for d in range(args.dmax + 1):
        t0 = time.perf_counter()
        res = hilbert_evaluation((g, f), args.rank, d, args.seed)
        exact = hilbert_dim_exact((g, f), args.rank, d)
        flag = "" if exact == res.dim else "  MISMATCH"
        print(f"{d:>2d} {res.dim:>8d} {exact:>6d} {res.samples_used:>7d} {res.batches:>7d}"
              f"  {time.perf_counter() - t0:.2f}s{flag}")


if __name__ == "__main__":
    main()
