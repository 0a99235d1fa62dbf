"""Command-line front end.

Subcommands:
  verify      measure and k-sum-freeness of an explicit interval union
  continuous  branch-and-bound maximum measure over <= m intervals
  discrete    f(n, k), optionally enumerating all maximum sets
  certify     branch bounds for the 1/2 - delta measure bound + sumset harness
  report      markdown table of cached results

All numbers are printed as exact "p/q" strings; decimals appear only in
parentheses.  Exit codes: 0 success, 1 verification failure, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from . import cache as cache_mod
from .certify import derive_delta, sumset_bound_harness
from .discrete import EnumerationLimitError, enumerate_maximum_sets, f_max
from .intervals import format_union, is_k_sum_free, parse_union
from .rationals import RationalParseError, decimal_str, format_rational
from .search import build_pattern_lp, maximize_measure, DisjunctionPattern
from . import lp as lp_mod

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2


def _add_global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # registered on the top parser with real defaults and on every
    # subparser with SUPPRESS, so the flags work in either position
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--cache", default=default,
                        help=f"cache path (default ${cache_mod.ENV_VAR} or "
                             f"{cache_mod.DEFAULT_PATH})")
    parser.add_argument("--format", choices=("json", "table"), default=default,
                        help="output format (per-command default)")
    parser.add_argument("--force", action="store_true",
                        default=argparse.SUPPRESS if suppress else False,
                        help="recompute even if the cache holds the result")
    parser.add_argument("-v", "--verbose", action="count",
                        default=argparse.SUPPRESS if suppress else 0,
                        help="-v timing, -vv LP pivot trace")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _add_global_options(common, suppress=True)
    top = argparse.ArgumentParser(
        prog="sumfree",
        description="Exact verification, search and certification of extremal "
                    "k-sum-free sets.")
    _add_global_options(top, suppress=False)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common],
                       help="check a set given as (p/q,r/s);(...)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--set", dest="set_text", required=True)

    p = sub.add_parser("continuous", parents=[common],
                       help="maximize measure over <= m intervals")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--all-optima", action="store_true")
    p.add_argument("--parallel", type=int, default=1)
    p.add_argument("--node-limit", type=int, default=None)

    p = sub.add_parser("discrete", parents=[common],
                       help="maximum k-sum-free subset of {1..n}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--enumerate", action="store_true", dest="enumerate_all")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--node-limit", type=int, default=None)

    p = sub.add_parser("certify", parents=[common],
                       help="re-derive delta and run the sumset-bound harness")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--max-intervals", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)

    sub.add_parser("report", parents=[common],
                   help="render cached results as a markdown table")
    return top


def _emit(payload: dict, fmt: str, table_lines) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in table_lines:
            print(line)


def _rat(q) -> str:
    return format_rational(q)


def _cmd_verify(args, fmt: str) -> int:
    u = parse_union(args.set_text)
    measure = u.measure()
    free, witness = is_k_sum_free(u, args.k)
    payload = {
        "set": format_union(u),
        "k": args.k,
        "measure": _rat(measure),
        "sum_free": free,
        "witness": None if witness is None else
        {"x": _rat(witness.x), "y": _rat(witness.y), "z": _rat(witness.z)},
    }
    if free:
        lines = [f"measure {_rat(measure)} ({decimal_str(measure)}); "
                 f"{args.k}-sum-free: yes"]
    else:
        lines = [f"measure {_rat(measure)} ({decimal_str(measure)}); "
                 f"{args.k}-sum-free: no; witness x={_rat(witness.x)} "
                 f"y={_rat(witness.y)} z={_rat(witness.z)}"]
    _emit(payload, fmt, lines)
    return EXIT_OK if free else EXIT_VERIFY_FAILED


def _cmd_continuous(args, fmt: str, cache_path: str, force: bool, verbose: int) -> int:
    params = {"k": args.k, "m": args.m, "all_optima": args.all_optima,
              "node_limit": args.node_limit}
    cached = None if force else cache_mod.lookup(cache_path, "continuous", params)
    if cached is not None:
        payload = cached.result
    else:
        if verbose >= 2:
            root = build_pattern_lp(args.m, args.k, DisjunctionPattern(args.m))
            lp_mod.solve(root, trace=lambda s: sys.stderr.write(s + "\n"))
        t0 = time.perf_counter()
        result = maximize_measure(args.m, args.k, all_optima=args.all_optima,
                                  parallel=args.parallel,
                                  node_limit=args.node_limit)
        elapsed = time.perf_counter() - t0
        payload = {
            "optimum": _rat(result.optimum),
            "witnesses": [format_union(w) for w in result.witnesses],
            "nodes_explored": result.nodes_explored,
            "status": result.status,
            "witnesses_exact": result.witnesses_exact,
        }
        if verbose:
            sys.stderr.write(f"continuous m={args.m} k={args.k}: "
                             f"{result.nodes_explored} nodes, "
                             f"{result.lp_pivots} pivots, {elapsed:.2f}s\n")
        cache_mod.append_record(cache_path, cache_mod.make_record(
            "continuous", params, payload, __version__))
    lines = [f"optimum {payload['optimum']}",
             f"status {payload['status']} after {payload['nodes_explored']} nodes"]
    lines += [f"witness: {w if w else '(empty set)'}" for w in payload["witnesses"]]
    _emit(payload, fmt, lines)
    return EXIT_OK


def _cmd_discrete(args, fmt: str, cache_path: str, force: bool, verbose: int) -> int:
    params = {"n": args.n, "k": args.k, "enumerate": args.enumerate_all,
              "node_limit": args.node_limit}
    cached = None if force else cache_mod.lookup(cache_path, "discrete", params)
    if cached is not None:
        payload = cached.result
    else:
        t0 = time.perf_counter()
        if args.enumerate_all:
            sets = enumerate_maximum_sets(args.n, args.k, node_limit=args.node_limit)
            value = len(sets[0]) if sets else 0
            payload = {"n": args.n, "k": args.k, "f": value,
                       "witnesses": [list(s) for s in sets]}
        else:
            value, witness = f_max(args.n, args.k)
            payload = {"n": args.n, "k": args.k, "f": value,
                       "witnesses": [list(witness)]}
        if verbose:
            sys.stderr.write(f"discrete n={args.n} k={args.k}: "
                             f"{time.perf_counter() - t0:.2f}s\n")
        cache_mod.append_record(cache_path, cache_mod.make_record(
            "discrete", params, payload, __version__))
    lines = [f"f({args.n},{args.k}) = {payload['f']}"]
    if args.witness or args.enumerate_all:
        lines += ["witness: {" + ",".join(map(str, w)) + "}"
                  for w in payload["witnesses"]]
    _emit(payload, fmt, lines)
    return EXIT_OK


def _cmd_certify(args, fmt: str, cache_path: str, force: bool, verbose: int) -> int:
    params = {"trials": args.trials, "max_intervals": args.max_intervals,
              "seed": args.seed}
    cached = None if force else cache_mod.lookup(cache_path, "certify", params)
    if cached is not None:
        payload = cached.result
    else:
        cert = derive_delta()
        t0 = time.perf_counter()
        harness = sumset_bound_harness(trials=args.trials,
                                      max_intervals=args.max_intervals,
                                      seed=args.seed)
        if verbose:
            sys.stderr.write(f"harness: {time.perf_counter() - t0:.2f}s\n")
        payload = {
            "delta_star": _rat(cert.delta_star),
            "branches": [
                {"name": b.name, "bound": f"{_rat(b.constant)} + {_rat(b.delta_coeff)}*d",
                 "delta_sup": _rat(b.delta_sup)}
                for b in cert.branches
            ],
            "chain_ok": cert.all_steps_ok(),
            "steps": [{"name": s.name, "lhs": _rat(s.lhs), "rhs": _rat(s.rhs),
                       "ok": s.ok} for s in cert.steps],
            "harness": {
                "trials": harness.trials,
                "max_intervals": harness.max_intervals,
                "seed": harness.seed,
                "violations": harness.violations,
                "min_slack": _rat(harness.min_slack),
                "min_slack_example": format_union(harness.min_slack_example),
            },
        }
        cache_mod.append_record(cache_path, cache_mod.make_record(
            "certify", params, payload, __version__))
    lines = ["branch suprema:"]
    lines += [f"  {b['name']:20s} x <= {b['bound']:18s} delta_sup = {b['delta_sup']}"
              for b in payload["branches"]]
    lines += [f"delta* = {payload['delta_star']}",
              f"inequality chain at the boundary point: "
              f"{'ok' if payload['chain_ok'] else 'CONTRADICTION'}",
              f"harness: {payload['harness']['violations']} violations in "
              f"{payload['harness']['trials']} trials "
              f"(min slack {payload['harness']['min_slack']})"]
    _emit(payload, fmt, lines)
    ok = payload["chain_ok"] and payload["harness"]["violations"] == 0
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def _cmd_report(cache_path: str) -> int:
    records = cache_mod.load_records(cache_path)
    print("| kind | parameters | result | version |")
    print("| --- | --- | --- | --- |")
    for key in sorted(records):
        rec = records[key]
        params = json.dumps(rec.parameters, sort_keys=True)
        if rec.kind == "continuous":
            summary = (f"optimum {rec.result['optimum']}, "
                       f"{len(rec.result['witnesses'])} witness(es), "
                       f"{rec.result['status']}")
        elif rec.kind == "discrete":
            summary = (f"f = {rec.result['f']}, "
                       f"{len(rec.result.get('witnesses', []))} set(s)")
        elif rec.kind == "certify":
            summary = (f"delta* = {rec.result['delta_star']}, "
                       f"{rec.result['harness']['violations']} violations")
        else:
            summary = json.dumps(rec.result, sort_keys=True)
        print(f"| {rec.kind} | `{params}` | {summary} | {rec.version} |")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    cache_path = cache_mod.resolve_path(args.cache)
    defaults = {"verify": "table", "continuous": "json", "discrete": "json",
                "certify": "table", "report": "table"}
    fmt = args.format or defaults[args.command]
    try:
        if args.command == "verify":
            return _cmd_verify(args, fmt)
        if args.command == "continuous":
            return _cmd_continuous(args, fmt, cache_path, args.force, args.verbose)
        if args.command == "discrete":
            return _cmd_discrete(args, fmt, cache_path, args.force, args.verbose)
        if args.command == "certify":
            return _cmd_certify(args, fmt, cache_path, args.force, args.verbose)
        if args.command == "report":
            return _cmd_report(cache_path)
    except RationalParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except EnumerationLimitError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VERIFY_FAILED
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
