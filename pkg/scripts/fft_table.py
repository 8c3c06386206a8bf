"""Degreewise first-fundamental-theorem table for a list of (m, n, r, s, t).

    python3 scripts/fft_table.py --dmax 2 --spec 2,2,2,1,1 --spec 3,2,2,2,2
"""

import argparse
import time

from hopfinv.glinv import ActionSpec, fft_check

DEFAULT_SPECS = ["1,1,1,1,1", "2,2,1,1,1", "2,2,2,2,2", "2,2,2,1,1", "3,2,2,2,2"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--spec", action="append", help="m,n,r,s,t (repeatable)")
    ap.add_argument("--dmax", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    print(f"{'(m,n,r,s,t)':>16s} {'u':>2s}  {'dim K[Y_u]_d':24s} {'dim K[X]^G_(d,d)':24s} ok   time")
    for text in args.spec or DEFAULT_SPECS:
        spec = ActionSpec(*(int(x) for x in text.split(",")))
        t0 = time.perf_counter()
        rep = fft_check(spec, args.dmax, args.seed, args.jobs)
        ys, invs = rep.dims()
        print(f"{str(spec.as_tuple()):>16s} {spec.u:>2d}  {str(ys):24s} {str(invs):24s} "
              f"{'yes' if rep.overall else 'NO ':3s}  {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
