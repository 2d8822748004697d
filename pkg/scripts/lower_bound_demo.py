"""Solve the parabola/dyadic-chord construction for a range of t and compare with the oracle.

    python3 scripts/lower_bound_demo.py --tmax 6
"""
import argparse
import time

from maxlevel.distinct import solve_distinct
from maxlevel.testbed import brute_force, gen_lower_bound, upper_count


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--tmax", type=int, default=6)
    ap.add_argument("--no-oracle", action="store_true")
    args = ap.parse_args()

    print(f"{'t':>2} {'n':>5} {'max':>5} {'n-t-2':>6} {'#max':>5} {'above':>5} {'corner':>6} {'secs':>6}  oracle")
    for t in range(1, args.tmax + 1):
        inst, exp = gen_lower_bound(t)
        t0 = time.perf_counter()
        res = solve_distinct(inst)
        secs = time.perf_counter() - t0
        above = {upper_count(inst, p) for p in res.points}
        verdict = "-"
        corner = "-"
        if not args.no_oracle:
            o = brute_force(inst)
            verdict = "agrees" if (o.max_level, o.points) == (res.max_level, res.points) else "DIFFERS"
            corner = o.all_vertex_levels[exp.corner]
        print(f"{t:>2} {exp.n:>5} {res.max_level:>5} {exp.max_level:>6} {len(res.points):>5} "
              f"{','.join(map(str, sorted(above))):>5} {corner:>6} {secs:>6.2f}  {verdict}")


if __name__ == "__main__":
    main()
