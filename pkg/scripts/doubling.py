"""Region size and solve time as n doubles.

    python3 scripts/doubling.py --sizes 512,1024,2048,4096 --concurrency 0.6
"""
import argparse
import math
import time

from maxlevel.distinct import log_bound, solve_distinct
from maxlevel.kernel import perturb
from maxlevel.testbed import gen_random
from maxlevel.toplevels import build_top_k_region


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="512,1024,2048,4096")
    ap.add_argument("--concurrency", type=float, default=0.6)
    ap.add_argument("--parallel", type=float, default=0.3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    prev = None
    print("n,k,region,region/(n log2 n),ratio,solve_s")
    for n in map(int, args.sizes.split(",")):
        inst = gen_random(n, args.seed, concurrency=args.concurrency, parallel=args.parallel)
        k = log_bound(2, n)
        size = len(build_top_k_region(perturb(inst), k).vertices)
        t0 = time.perf_counter()
        solve_distinct(inst)
        secs = time.perf_counter() - t0
        ratio = f"{size / prev:.2f}" if prev else ""
        print(f"{n},{k},{size},{size / (n * math.log2(n)):.3f},{ratio},{secs:.2f}")
        prev = size


if __name__ == "__main__":
    main()
