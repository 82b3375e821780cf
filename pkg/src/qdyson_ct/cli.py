"""Command line front end.

Subcommands::

    ct          constant term by one engine or all of them
    verify      sweep all parameter vectors within bounds and cross-check engines
    vanish      check that F vanishes on all standard grid nodes but one
    identities  random battery of the integer identities behind the cancellation
    bench       time the engines against each other

Exit status is 0 when every requested check passed, 1 when a check failed and
2 when a budget refused the work (or on a usage error).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .errors import QDysonError, ScaleLimitExceeded
from .qdyson import (
    ENGINE_NAMES,
    Budgets,
    ParameterVector,
    identity_checks,
    reduce_zero_params,
    run_engine,
    sweep,
    verify_vanishing,
)
from .qpoly import UniPoly

EXIT_OK, EXIT_FAIL, EXIT_BUDGET = 0, 1, 2

DEFAULT_SEED = 20240101
DEFAULT_BENCH_SCENARIOS = ((1, 1), (2, 2, 2), (10,) * 10)


def _parse_a(text: str) -> ParameterVector:
    try:
        return ParameterVector.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad parameter vector {text!r}: {exc}") from None


def _parse_engines(text: str) -> list[str]:
    if text == "all":
        return list(ENGINE_NAMES)
    names = [x.strip() for x in text.split(",") if x.strip()]
    for name in names:
        if name not in ENGINE_NAMES:
            raise argparse.ArgumentTypeError(f"unknown engine {name!r}")
    return names


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _budgets(args) -> Budgets:
    return Budgets.from_env(args.term_budget, args.node_budget)


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _emit_csv(header: Sequence[str], rows: Sequence[Sequence]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())


# -- ct --------------------------------------------------------------------


def cmd_ct(args) -> int:
    pv = args.a
    budgets = _budgets(args)
    engines = _parse_engines(args.engine)
    results: dict[str, object] = {}
    skipped: dict[str, str] = {}
    start = time.perf_counter()
    for name in engines:
        try:
            results[name] = run_engine(name, pv, budgets)
        except ScaleLimitExceeded as exc:
            skipped[name] = str(exc)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    values = list(results.values())
    disagree = len(set(values)) > 1
    agree = bool(values) and not disagree
    if disagree:
        code = EXIT_FAIL
    else:
        code = EXIT_BUDGET if skipped else EXIT_OK

    if args.format == "json":
        payload = {
            "a": list(pv.a),
            "sigma": pv.sigma,
            "engine": args.engine,
            "ct": values[0].to_json() if values else None,
            "agree": agree,
            "elapsed_ms": elapsed_ms,
            "verdict": code == EXIT_OK,
        }
        if len(engines) > 1:
            payload["results"] = {k: v.to_json() for k, v in results.items()}
            payload["skipped"] = sorted(skipped)
        _emit_json(payload)
    elif args.format == "csv":
        rows = [[str(pv), pv.sigma, k, " ".join(v.to_json())] for k, v in results.items()]
        rows += [[str(pv), pv.sigma, k, "SKIPPED"] for k in skipped]
        _emit_csv(["a", "sigma", "engine", "ct"], rows)
    else:
        if len(engines) == 1:
            if values:
                print(values[0])
        else:
            width = max(len(e) for e in engines)
            for name in engines:
                shown = results[name] if name in results else "SKIPPED"
                print(f"{name:<{width}}  {shown}")
            print("AGREE" if agree else "DISAGREE")
        for name, reason in skipped.items():
            print(f"{name}: SKIPPED ({reason})", file=sys.stderr)
    return code


# -- verify ----------------------------------------------------------------


def _verify_instance(job: tuple[tuple[int, ...], tuple[str, ...], Budgets]) -> dict:
    a, engines, budgets = job
    results: dict[str, str] = {}
    skipped: list[str] = []
    errors: dict[str, str] = {}
    for name in engines:
        try:
            results[name] = json.dumps(run_engine(name, a, budgets).to_json())
        except ScaleLimitExceeded:
            skipped.append(name)
        except QDysonError as exc:
            errors[name] = f"{type(exc).__name__}: {exc}"
    distinct = set(results.values())
    agree = len(distinct) == 1 and not errors
    ct = json.loads(next(iter(distinct))) if len(distinct) == 1 else None
    return {
        "a": list(a),
        "n": len(a),
        "sigma": sum(a),
        "engines": [e for e in engines if e in results],
        "skipped": skipped,
        "errors": errors,
        "agree": agree,
        "ct": ct,
    }


def run_verify(n_max: int, sigma_max: int, engines: Sequence[str], budgets: Budgets, jobs: int) -> list[dict]:
    """Cross-check engines on every instance; results come back in sweep order."""
    work = [(a, tuple(engines), budgets) for a in sweep(n_max, sigma_max)]
    if jobs <= 1:
        return [_verify_instance(w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_verify_instance, work, chunksize=max(1, len(work) // (jobs * 8))))


def _render_ct(coeffs) -> str:
    return "-" if coeffs is None else str(UniPoly.from_json(coeffs))


def cmd_verify(args) -> int:
    engines = args.engines or list(ENGINE_NAMES)
    rows = run_verify(args.n_max, args.sigma_max, engines, _budgets(args), args.jobs or os.cpu_count() or 1)
    failures = [r for r in rows if not r["agree"]]
    verdict = not failures
    if args.format == "json":
        _emit_json(
            {
                "n_max": args.n_max,
                "sigma_max": args.sigma_max,
                "engines": engines,
                "instances": rows,
                "total": len(rows),
                "failures": len(failures),
                "verdict": verdict,
            }
        )
    elif args.format == "csv":
        _emit_csv(
            ["a", "n", "sigma", "engines", "skipped", "agree", "ct"],
            [
                [
                    ",".join(map(str, r["a"])),
                    r["n"],
                    r["sigma"],
                    ";".join(r["engines"]),
                    ";".join(r["skipped"]),
                    "AGREE" if r["agree"] else "DISAGREE",
                    " ".join(r["ct"]) if r["ct"] is not None else "",
                ]
                for r in rows
            ],
        )
    else:
        for r in rows:
            a = ",".join(map(str, r["a"]))
            status = "AGREE" if r["agree"] else "DISAGREE"
            extra = f"  skipped={','.join(r['skipped'])}" if r["skipped"] else ""
            for name, msg in r["errors"].items():
                extra += f"  {name}: {msg}"
            print(f"a=({a})  sigma={r['sigma']}  {status}  ct={_render_ct(r['ct'])}{extra}")
        print(f"{len(rows) - len(failures)}/{len(rows)} instances agree")
        print("PASS" if verdict else "FAIL")
    return EXIT_OK if verdict else EXIT_FAIL


# -- vanish ----------------------------------------------------------------


def cmd_vanish(args) -> int:
    pv = reduce_zero_params(args.a)
    try:
        report = verify_vanishing(pv, _budgets(args).node_budget)
    except ScaleLimitExceeded as exc:
        print(f"SKIPPED: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if args.format == "json":
        _emit_json(
            {
                "a": list(report.a),
                "node_count": report.node_count,
                "expected": list(report.expected),
                "nonzero": [list(x) for x in report.nonzero],
                "verdict": report.passed,
            }
        )
    else:
        fmt = lambda t: "(" + ",".join(map(str, t)) + ")"
        print(f"a=({pv})  nodes={report.node_count}")
        print("nonzero at: " + (" ".join(fmt(x) for x in report.nonzero) or "none"))
        print(f"expected:   {fmt(report.expected)}")
        print("PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_FAIL


# -- identities ------------------------------------------------------------


def random_vectors(count: int, seed: int, n_max: int, a_max: int) -> list[tuple[int, ...]]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(0, n_max)
        out.append(tuple(rng.randint(0, a_max) for _ in range(n)))
    return out


def cmd_identities(args) -> int:
    vectors = random_vectors(args.count, args.seed, args.n_max, args.a_max)
    reports = [identity_checks(a) for a in vectors]
    failed = [r for r in reports if not r.passed]
    if args.format == "json":
        _emit_json(
            {
                "count": len(reports),
                "seed": args.seed,
                "failures": [{"a": list(r.a), "identities": r.failures()} for r in failed],
                "verdict": not failed,
            }
        )
    else:
        for r in failed:
            print(f"FAIL a={r.a}: {', '.join(r.failures())}")
        print(f"{len(reports) - len(failed)}/{len(reports)} PASS")
    return EXIT_OK if not failed else EXIT_FAIL


# -- bench -----------------------------------------------------------------


def run_bench(scenarios, engines: Sequence[str], budgets: Budgets, reps: int) -> list[dict]:
    rows = []
    for a in scenarios:
        pv = ParameterVector.of(a)
        for name in engines:
            row = {"n": pv.n, "a": str(pv), "sigma": pv.sigma, "engine": name}
            times = []
            result = None
            try:
                for _ in range(reps):
                    t0 = time.perf_counter()
                    result = run_engine(name, pv, budgets)
                    times.append((time.perf_counter() - t0) * 1000.0)
            except ScaleLimitExceeded:
                row.update(median_ms=None, result_degree=None, ct=None)
            else:
                row.update(median_ms=statistics.median(times), result_degree=result.degree, ct=result)
            rows.append(row)
    return rows


def cmd_bench(args) -> int:
    scenarios = args.a or [ParameterVector(s) for s in DEFAULT_BENCH_SCENARIOS]
    engines = args.engines or list(ENGINE_NAMES)
    rows = run_bench(scenarios, engines, _budgets(args), args.reps)
    verdict = True
    for a in {r["a"] for r in rows}:
        done = [r["ct"] for r in rows if r["a"] == a and r["ct"] is not None]
        verdict &= all(x == done[0] for x in done)
    table = [
        [
            r["n"],
            r["a"],
            r["sigma"],
            r["engine"],
            "SKIPPED" if r["median_ms"] is None else f"{r['median_ms']:.3f}",
            "" if r["result_degree"] is None else r["result_degree"],
        ]
        for r in rows
    ]
    header = ["n", "a", "sigma", "engine", "median_ms", "result_degree"]
    if args.format == "csv":
        _emit_csv(header, table)
    elif args.format == "json":
        _emit_json(
            {
                "rows": [{k: v for k, v in r.items() if k != "ct"} for r in rows],
                "verdict": verdict,
            }
        )
    else:
        widths = [max(len(str(x)) for x in col) for col in zip(header, *table)]
        for line in [header, *table]:
            print("  ".join(str(x).ljust(w) for x, w in zip(line, widths)).rstrip())
        print("AGREE" if verdict else "DISAGREE")
    return EXIT_OK if verdict else EXIT_FAIL


# -- entry point -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--node-budget", type=_positive, default=None, help="max interpolation grid nodes")
    common.add_argument("--term-budget", type=_positive, default=None, help="max naive expansion entries")
    common.add_argument("--jobs", type=_positive, default=None, help="worker processes (default: CPU count)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    parser = argparse.ArgumentParser(prog="qdyson-ct", description="q-Dyson constant term engines")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ct", parents=[common], help="compute a constant term")
    p.add_argument("--a", type=_parse_a, required=True, help="comma-separated parameters, e.g. 2,1,1")
    p.add_argument("--engine", choices=(*ENGINE_NAMES, "all"), default="all")
    p.set_defaults(func=cmd_ct)

    p = sub.add_parser("verify", parents=[common], help="cross-check engines over a sweep")
    p.add_argument("--n-max", type=_positive, required=True)
    p.add_argument("--sigma-max", type=_nonneg, required=True)
    p.add_argument("--engines", type=_parse_engines, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("vanish", parents=[common], help="check the single nonvanishing grid node")
    p.add_argument("--a", type=_parse_a, required=True)
    p.set_defaults(func=cmd_vanish)

    p = sub.add_parser("identities", parents=[common], help="random identity battery")
    p.add_argument("--count", type=_nonneg, default=1000)
    p.add_argument("--n-max", type=_nonneg, default=12)
    p.add_argument("--a-max", type=_nonneg, default=12)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("bench", parents=[common], help="time the engines")
    p.add_argument("--a", type=_parse_a, action="append", help="scenario (repeatable)")
    p.add_argument("--engines", type=_parse_engines, default=None)
    p.add_argument("--reps", type=_positive, default=3)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScaleLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        parser.error(str(exc))
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
