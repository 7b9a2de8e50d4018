"""Command-line entry point.

Exit codes: 0 ok, 2 invalid input, 3 resource limit exceeded, 4 verification
failure.  Output is line-oriented CSV or canonical JSON (sorted keys) so
runs diff cleanly.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from shatterlab import bounds, compression, complexes, dtree, randgen, search, setsystem, verify
from shatterlab.errors import InvalidArgumentError, ResourceLimitError


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational {text!r}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc


def _emit(args, rows: list[str] | None = None, obj=None) -> None:
    if args.format == "json" and obj is not None:
        print(json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str))
    elif rows is not None:
        for row in rows:
            print(row)
    elif obj is not None:
        print(json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str))


def build_parser() -> argparse.ArgumentParser:
    # the global flags live on a parent parser with SUPPRESS defaults, so they
    # are accepted both before and after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS)
    common.add_argument("--limit-subsets", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="shatterlab", description=__doc__, parents=[common])
    parser.set_defaults(
        seed=verify.DEFAULT_SEED,
        threads=os.cpu_count() or 1,
        format="csv",
        limit_subsets=scan_limit_default(),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "shatter", parents=[common], help="shatter profile or single value of a set system"
    )
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--m", type=int, default=None)

    p = sub.add_parser(
        "compress", parents=[common], help="compress a set system to a simplicial complex"
    )
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", required=True)

    p = sub.add_parser("complex", help="simplicial complex utilities")
    csub = p.add_subparsers(dest="subcommand", required=True)
    cstats = csub.add_parser("stats", parents=[common])
    cstats.add_argument("--in", dest="infile", required=True)

    p = sub.add_parser("dtree", help="canonical rooted d-trees")
    dsub = p.add_subparsers(dest="subcommand", required=True)
    dbuild = dsub.add_parser("build", parents=[common])
    dbuild.add_argument("--d", type=int, required=True)
    dbuild.add_argument("--Q", type=int, required=True)
    dbuild.add_argument("--r", type=int, required=True)
    dbuild.add_argument("--out", dest="outfile", default=None)
    dverify = dsub.add_parser("verify", parents=[common])
    dverify.add_argument("--d-max", type=int, default=3)
    dverify.add_argument("--Q-max", type=int, default=5)
    dverify.add_argument("--r-max", type=int, default=None, help="default 2Q+1 per cell")

    p = sub.add_parser("sample", parents=[common], help="seeded random complex")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--p", type=_fraction, required=True)
    p.add_argument("--out", dest="outfile", default=None)

    p = sub.add_parser("growth", parents=[common], help="sample -> prune sweeps and slope")
    p.add_argument("--s", type=_fraction, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=_int_list, required=True, help="comma-separated sizes")
    p.add_argument("--trials", type=int, default=5)

    p = sub.add_parser(
        "bh-probe", parents=[common], help="Bondy-Hajnal premise + growth-trend probe"
    )
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=_int_list, required=True)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--epsilon", type=_fraction, default=Fraction(1))

    p = sub.add_parser("bounds", help="closed-form bound evaluation")
    bsub = p.add_subparsers(dest="subcommand", required=True)
    beval = bsub.add_parser("eval", parents=[common])
    beval.add_argument("--kind", required=True, choices=bounds.QUERY_KINDS)
    beval.add_argument("--params", default="", help="k=2,m=13,n=256,s=7/2,d=1")

    p = sub.add_parser("search", help="finite extremal search")
    ssub = p.add_subparsers(dest="subcommand", required=True)
    sx = ssub.add_parser("extremal", parents=[common])
    sx.add_argument("--n", type=int, required=True)
    sx.add_argument("--m", type=int, required=True)
    sx.add_argument("--b", type=int, required=True)
    sx.add_argument("--oracle", action="store_true")
    sk = ssub.add_parser("kpartite", parents=[common])
    sk.add_argument("--n", type=int, required=True)
    sk.add_argument("--k", type=int, required=True)
    sk.add_argument("--out", dest="outfile", default=None)

    p = sub.add_parser("verify-paper", parents=[common], help="run the acceptance suites")
    p.add_argument("--tier", choices=("quick", "full"), default="full")
    p.add_argument("--suite", action="append", default=None, help="repeatable")

    return parser


def scan_limit_default() -> int:
    from shatterlab.scan import DEFAULT_SUBSET_LIMIT

    return DEFAULT_SUBSET_LIMIT


def _cmd_shatter(args) -> int:
    system, dups = setsystem.load_file(args.infile)
    if dups:
        print(f"# dropped {dups} duplicate members", file=sys.stderr)
    if args.m is not None:
        value = setsystem.shatter_value(system, args.m)
        _emit(args, [f"m,f\n{args.m},{value}"], {"m": args.m, "value": value})
        return 0
    profile = setsystem.shatter_profile(system)
    rows = ["m,f"] + [f"{m},{v}" for m, v in enumerate(profile.values)]
    _emit(args, rows, {"profile": list(profile.values)})
    return 0


def _cmd_compress(args) -> int:
    system, dups = setsystem.load_file(args.infile)
    result = compression.compress(system)
    setsystem.save_file(args.outfile, result)
    _emit(
        args,
        [f"members,duplicates_dropped\n{len(result)},{dups}"],
        {"members": len(result), "duplicates_dropped": dups},
    )
    return 0


def _cmd_complex_stats(args) -> int:
    with open(args.infile, encoding="utf-8") as fh:
        cx = complexes.parse_complex_json(fh.read())
    counts = cx.face_counts()
    deltas = {}
    for d in range(1, cx.dimension + 1):
        deltas[d] = complexes.delta_d(cx, d)
    rows = [f"dimension,{cx.dimension}"]
    rows += [f"faces_dim_{d},{c}" for d, c in counts.items()]
    rows += [f"delta_{d},{v}" for d, v in deltas.items()]
    _emit(args, rows, {"dimension": cx.dimension, "faces": counts, "delta": deltas})
    return 0


def _cmd_dtree_build(args) -> int:
    tree = dtree.build_Tr(args.d, args.Q, args.r)
    from shatterlab._bits import bits

    obj = {
        "n": tree.complex.n,
        "facets": [bits(f) for f in tree.facet_masks()],
        "rho": bits(tree.rho),
        "roots": bits(tree.roots),
        "params": {"d": args.d, "Q": args.Q, "r": args.r},
        "min_density": str(dtree.min_density_formula(args.d, args.Q, args.r)),
    }
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    if args.outfile:
        with open(args.outfile, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _grid_row(cell) -> str:
    d, q, r = cell
    row = verify.check_grid_cell(d, q, r)
    return (
        f"{d},{q},{r},{row['formula']},{row['block']},{row['brute']},"
        f"{int(row['balanced'])},{row['facets']}"
    )


def _cmd_dtree_verify(args) -> int:
    cells = []
    for d in range(1, args.d_max + 1):
        for q in range(1, args.Q_max + 1):
            r_top = args.r_max if args.r_max is not None else 2 * q + 1
            if d * q > 20:
                continue  # brute force cap
            cells.extend((d, q, r) for r in range(0, r_top + 1))
    print("d,Q,r,formula,blockmin,brutemin,balanced,facets")
    if args.threads > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            for row in pool.map(_grid_row, cells, chunksize=4):
                print(row)
    else:
        for cell in cells:
            print(_grid_row(cell))
    return 0


def _cmd_sample(args) -> int:
    cx = randgen.sample_complex(args.n, args.t, args.p, args.seed, limit=args.limit_subsets)
    text = complexes.format_complex_json(cx)
    if args.outfile:
        with open(args.outfile, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    counts = cx.face_counts()
    print(f"# faces by dim: {counts}", file=sys.stderr)
    return 0


def _cmd_growth(args) -> int:
    result = randgen.growth_experiment(
        args.s,
        args.m,
        args.n,
        args.trials,
        args.seed,
        scan_limit=args.limit_subsets,
        workers=args.threads,
    )
    if args.format == "json":
        obj = {
            "slope": result.slope,
            "target_exponent": str(result.target_exponent),
            "generator": randgen.GENERATOR_ID,
            "reports": [r.csv_row() for r in result.reports],
        }
        _emit(args, None, obj)
    else:
        print(f"# generator={randgen.GENERATOR_ID}")
        for line in result.csv_lines():
            print(line)
        print(f"# slope,{result.slope}")
        print(f"# target_exponent,{result.target_exponent}")
    return 0


def _cmd_bh_probe(args) -> int:
    probe = randgen.bondy_hajnal_probe(
        args.k,
        args.m,
        args.n,
        args.trials,
        args.seed,
        epsilon=args.epsilon,
        scan_limit=args.limit_subsets,
    )
    if args.format == "json":
        obj = {
            "exponent": probe.exponent,
            "target_exponent": str(probe.target_exponent),
            "premise_all_ok": probe.premise_all_ok,
            "exceeds_k": probe.exceeds_k,
            "g_k_m": probe.g_k_m,
            "rows": probe.csv_lines()[1:],
        }
        _emit(args, None, obj)
    else:
        for line in probe.csv_lines():
            print(line)
        print(f"# exponent,{probe.exponent}")
        print(f"# premise_all_ok,{int(probe.premise_all_ok)}")
    return 0


def _parse_params(text: str) -> dict:
    out = {}
    for item in text.split(","):
        if not item:
            continue
        key, _, value = item.partition("=")
        if not value:
            raise InvalidArgumentError(f"bad parameter {item!r}")
        out[key.strip()] = Fraction(value) if "/" in value or "." in value else int(value)
    return out


def _cmd_bounds_eval(args) -> int:
    result = bounds.eval_query(args.kind, _parse_params(args.params))
    if args.format == "json":
        _emit(args, None, result)
    else:
        print(",".join(str(k) for k in sorted(result)))
        print(",".join(str(result[k]) for k in sorted(result)))
    return 0


def _cmd_search_extremal(args) -> int:
    result = search.extremal_max_sets(args.n, args.m, args.b, oracle=args.oracle)
    obj = {
        "max_size": result.max_size,
        "method": result.method,
        "witness": result.witness.to_sets(),
    }
    _emit(args, [f"max_size,method\n{result.max_size},{result.method}"], obj)
    return 0


def _cmd_search_kpartite(args) -> int:
    system = search.kpartite_instance(args.n, args.k)
    if args.outfile:
        setsystem.save_file(args.outfile, system)
    _emit(args, [f"members\n{len(system)}"], {"members": len(system)})
    return 0


def _cmd_verify_paper(args) -> int:
    results = verify.run_suites(args.suite, tier=args.tier, seed=args.seed)
    for res in results:
        obj = {
            "suite": res.name,
            "status": "pass" if res.passed else "fail",
            "tolerance": res.tolerance,
            "measured": res.measured,
            "wall_time": res.wall_time,
        }
        if res.failures:
            obj["failures"] = res.failures[:10]
        print(json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str))
    ok = all(r.passed for r in results)
    print(f"# overall,{'pass' if ok else 'fail'}")
    return 0 if ok else 4


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "shatter":
            return _cmd_shatter(args)
        if args.command == "compress":
            return _cmd_compress(args)
        if args.command == "complex":
            return _cmd_complex_stats(args)
        if args.command == "dtree":
            if args.subcommand == "build":
                return _cmd_dtree_build(args)
            return _cmd_dtree_verify(args)
        if args.command == "sample":
            return _cmd_sample(args)
        if args.command == "growth":
            return _cmd_growth(args)
        if args.command == "bh-probe":
            return _cmd_bh_probe(args)
        if args.command == "bounds":
            return _cmd_bounds_eval(args)
        if args.command == "search":
            if args.subcommand == "extremal":
                return _cmd_search_extremal(args)
            return _cmd_search_kpartite(args)
        if args.command == "verify-paper":
            return _cmd_verify_paper(args)
    except (InvalidArgumentError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    raise AssertionError("unhandled command")


if __name__ == "__main__":
    sys.exit(main())
