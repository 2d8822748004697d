"""Command-line front end: ``python3 -m maxlevel <command> ...``."""
from __future__ import annotations

import argparse
import statistics
import sys
import time
from pathlib import Path

from . import solve
from .distinct import DuplicateLines, log_bound
from .fileio import (
    ParseError, chain_json, format_instance, oracle_json, read_instance, result_json,
)
from .kernel import BadK, BoundViolated, EmptyInstance, Instance, InvariantError, Line, Point, perturb
from .svg import render
from .testbed import brute_force, gen_lower_bound, gen_random, weighted_level_stats
from .toplevels import ChainVertex, LevelChain, build_top_k_region, upper_level

EXIT_PARSE = 2
EXIT_INVARIANT = 3


class UsageError(Exception):
    pass


def _load(path) -> Instance:
    try:
        return read_instance(path)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args):
    inst = _load(args.file)
    res = solve(inst, mode=args.mode, search=args.search)
    if res.max_level is None:
        print("no vertices")
    else:
        count = len(res.vertices)
        print(f"max level {res.max_level} at {count} " + ("vertex" if count == 1 else "vertices"))
        for v in res.vertices:
            print(f"  ({v.point.x}, {v.point.y})  degree {v.degree}  {v.source}")
    if args.json:
        Path(args.json).write_text(result_json(res, timings=args.timings))
    return 0


def cmd_oracle(args):
    inst = _load(args.file)
    if len(inst.lines) > 1500 and not args.force:
        raise UsageError("oracle is capped at 1500 distinct lines; pass --force to run anyway")
    _emit(oracle_json(brute_force(inst)), args.json)
    return 0


def cmd_gen(args):
    if args.family == "lowerbound":
        inst, exp = gen_lower_bound(args.t)
        note = f"lower-bound construction t={args.t}: n={exp.n}, expected max level {exp.max_level}"
    else:
        inst = gen_random(args.n, args.seed, args.concurrency, args.parallel, args.duplicate, args.vertical)
        note = (f"random n={args.n} seed={args.seed} concurrency={args.concurrency} "
                f"parallel={args.parallel} duplicate={args.duplicate} vertical={args.vertical}")
    _emit(format_instance(inst, note), args.out)
    return 0


def _mirror(inst: Instance) -> Instance:
    return Instance([Line(l.id, -l.a, -l.b) for l in inst.lines], dict(inst.multiplicities), [])


def lower_level(inst: Instance, k: int) -> LevelChain:
    up = upper_level(_mirror(inst), k)
    lines = {l.id: l for l in inst.lines}
    return LevelChain([lines[e.id] for e in up.edges],
                      [ChainVertex(Point(v.point.x, -v.point.y), v.lines, v.turns) for v in up.vertices])


def cmd_levels(args):
    inst = _load(args.file).without_verticals()
    chain = upper_level(inst, args.k) if args.upper else lower_level(inst, args.k)
    _emit(chain_json(chain, args.k, args.upper), args.json)
    return 0


def cmd_weighted(args):
    st = weighted_level_stats(_load(args.file).without_verticals(), args.k)
    print(f'{{"k": {st.k}, "n": {st.n}, "vertices": {st.vertex_count}, "omega": {st.weight}}}')
    return 0


def _bench_instance(family, n, seed):
    if family == "lowerbound":
        t = 1
        while 2 ** (t + 2) + 2 < n:
            t += 1
        return gen_lower_bound(t)[0]
    if family == "degenerate":
        return gen_random(n, seed, concurrency=0.6, parallel=0.3)
    return gen_random(n, seed, concurrency=0.0, parallel=0.0, span=4 * n)


def cmd_bench(args):
    sizes = [int(s) for s in args.sizes.split(",") if s]
    rows = ["n,k,vertices,omega,wall_ms"]
    for size in sizes:
        inst = _bench_instance(args.family, size, args.seed)
        n = len(inst.lines)
        k = min(log_bound(2, n), n - 1)
        walls = []
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            solve(inst, mode="distinct")
            walls.append((time.perf_counter() - t0) * 1e3)
        region = build_top_k_region(perturb(inst), k)
        omega = weighted_level_stats(inst, k).weight
        rows.append(f"{n},{k},{len(region.vertices)},{omega},{statistics.median(walls):.1f}")
    _emit("\n".join(rows) + "\n", args.out)
    return 0


def cmd_plot(args):
    inst = _load(args.file)
    chain = upper_level(inst.without_verticals(), args.k) if args.k is not None else None
    marked = []
    if args.mark_max:
        marked = solve(inst).points
    Path(args.out).write_text(render(inst, chain, marked, title=Path(args.file).name))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="maxlevel", description="Maximum-level vertices in line arrangements.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="find all maximum-level vertices")
    s.add_argument("file")
    s.add_argument("--mode", choices=["auto", "distinct", "coincide"], default="auto")
    s.add_argument("--search", choices=["binary", "exponential"], default="binary")
    s.add_argument("--json", metavar="PATH")
    s.add_argument("--timings", action="store_true", help="include per-phase timings in the JSON")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("oracle", help="brute-force all vertex levels")
    s.add_argument("file")
    s.add_argument("--json", metavar="PATH", help="write here instead of stdout")
    s.add_argument("--force", action="store_true", help="lift the 1500-line cap")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("gen", help="generate an instance file")
    g = s.add_subparsers(dest="family", required=True)
    lb = g.add_parser("lowerbound")
    lb.add_argument("--t", type=int, required=True)
    lb.add_argument("--out")
    rnd = g.add_parser("random")
    rnd.add_argument("--n", type=int, required=True)
    rnd.add_argument("--seed", type=int, default=0)
    rnd.add_argument("--concurrency", type=float, default=0.0)
    rnd.add_argument("--parallel", type=float, default=0.0)
    rnd.add_argument("--duplicate", type=float, default=0.0)
    rnd.add_argument("--vertical", type=float, default=0.0)
    rnd.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("levels", help="print a k-level as a JSON polyline")
    s.add_argument("file")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--upper", action="store_true", help="count lines above instead of below")
    s.add_argument("--json", metavar="PATH")
    s.set_defaults(func=cmd_levels)

    s = sub.add_parser("weighted", help="vertex count and degree sum of the k-level")
    s.add_argument("file")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_weighted)

    s = sub.add_parser("bench", help="timing and size table as CSV")
    s.add_argument("--family", choices=["random", "degenerate", "lowerbound"], default="degenerate")
    s.add_argument("--sizes", default="128,256,512")
    s.add_argument("--repeats", type=int, default=3)
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("plot", help="draw the arrangement as SVG")
    s.add_argument("file")
    s.add_argument("--out", required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--mark-max", action="store_true")
    s.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, DuplicateLines, EmptyInstance, BadK, UsageError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (InvariantError, BoundViolated, AssertionError) as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
