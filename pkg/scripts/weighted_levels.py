"""Weighted k-level complexity omega(L_k) / (n k^(1/3)) across generator families.

    python3 scripts/weighted_levels.py --n 400 --ks 1,8,27,64
"""
import argparse

from maxlevel.testbed import gen_lower_bound, gen_random, weighted_level_stats


def families(n, seed):
    yield "general", gen_random(n, seed)
    yield "concurrent-0.5", gen_random(n, seed, concurrency=0.5, parallel=0.2)
    yield "concurrent-0.9", gen_random(n, seed, concurrency=0.9, parallel=0.2)
    t = 1
    while 2 ** (t + 3) + 2 <= n:
        t += 1
    yield f"lowerbound-t{t}", gen_lower_bound(t)[0]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=400)
    ap.add_argument("--ks", default="1,8,27,64")
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    ks = [int(k) for k in args.ks.split(",")]

    print("family,n,k,vertices,omega,omega/(n k^(1/3))")
    for name, inst in families(args.n, args.seed):
        n = len(inst.lines)
        for k in ks:
            if k >= n:
                continue
            st = weighted_level_stats(inst, k)
            print(f"{name},{n},{k},{st.vertex_count},{st.weight},{st.weight / (n * k ** (1 / 3)):.3f}")


if __name__ == "__main__":
    main()
