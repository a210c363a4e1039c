"""Command-line entry points.

Exit codes: 0 success, 1 a directive, validation or suite failed, 2 parse or
usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional

from .checker import DerivationFormatError, load, validate
from .harness import SUITES, SuiteConfig, run_suite
from .opsem import DEFAULT_FUEL, evaluate
from .surface import ParseError, parse_program, show
from .syntax import alpha_eq

OK, FAILED, USAGE = 0, 1, 2

SEED_ENV = "CUBICAL_SEED"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


class _UsageError(Exception):
    pass


def _globals(parser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--fuel", type=int, default=d(DEFAULT_FUEL), help="step budget per evaluation")
    parser.add_argument("--format", choices=("pretty", "structured"), default=d("pretty"))
    parser.add_argument("--max-trace-len", type=int, default=d(None),
                        help="keep only the last K steps of each trace")


def _suite_flags(p, default_count=None) -> None:
    p.add_argument("--count", type=int, default=default_count)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-shrink", action="store_true")
    p.add_argument("--report", metavar="PATH", help="also write the structured report here")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="cubical", description="Evaluate, trace and check cubical programs.")
    _globals(top, suppress=False)
    common = _Parser(add_help=False)
    _globals(common, suppress=True)
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, text in (("eval", "evaluate each directive of a source file"),
                       ("trace", "print the step trace of each directive")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("file")
    p = sub.add_parser("check", parents=[common], help="validate derivation files")
    p.add_argument("paths", nargs="+", help="derivation files or directories of them")
    p = sub.add_parser("canonicity", parents=[common], help="run the canonicity suite")
    _suite_flags(p, default_count=10_000)
    p = sub.add_parser("fuzz", parents=[common], help="run a property suite")
    p.add_argument("suite", choices=SUITES)
    _suite_flags(p)
    return top


# ----------------------------------------------------------------------------
# Source files


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _run_directive(d, fuel, max_len):
    tr = evaluate(d.term, fuel, max_len=max_len)
    res = {"line": d.line, "kind": d.kind, "term": show(d.term), "outcome": tr.outcome,
           "steps": tr.n_steps}
    if tr.outcome == "value":
        res["value"] = show(tr.final)
    elif tr.outcome == "stuck":
        res["stuck"] = f"{tr.stuck.reason}: {show(tr.stuck.subterm)}"
    ok = tr.outcome == "value"
    if d.kind == "assert-canon":
        want = evaluate(d.expected, fuel, keep=False)
        res["expected"] = show(d.expected)
        ok = ok and want.outcome == "value" and alpha_eq(tr.final, want.final)
    res["ok"] = ok
    return res, tr


def _source(args, with_trace: bool, out) -> int:
    prog = parse_program(_read(args.file))
    results = []
    for d in prog.directives:
        res, tr = _run_directive(d, args.fuel, args.max_trace_len)
        if with_trace:
            res["trace"] = tr.lines()
        results.append(res)
    failed = [r for r in results if not r["ok"]]
    if args.format == "structured":
        print(json.dumps({"file": args.file, "results": results, "ok": not failed},
                         indent=2, ensure_ascii=False), file=out)
    else:
        for r in results:
            mark = "ok  " if r["ok"] else "FAIL"
            if "value" in r:
                what = f"⇓ {r['value']}"
            elif "stuck" in r:
                what = f"stuck ({r['stuck']})"
            else:
                what = "out of fuel"
            line = f"{mark} line {r['line']} {r['kind']}: {r['term']} {what}"
            if r["kind"] == "assert-canon" and not r["ok"]:
                line += f", expected {r['expected']}"
            print(line, file=out)
            if with_trace:
                for t in r["trace"]:
                    print(f"    {t}", file=out)
    return FAILED if failed else OK


# ----------------------------------------------------------------------------
# Derivations


def _deriv_files(paths) -> list:
    out = []
    for p in map(Path, paths):
        if p.is_dir():
            out += sorted(q for q in p.rglob("*") if q.suffix in (".json", ".deriv"))
        else:
            out.append(p)
    return out


def _check(args, out) -> int:
    files = _deriv_files(args.paths)
    if not files:
        raise _UsageError("no derivation files found")
    reports = []
    for f in files:
        try:
            rep = validate(load(f))
        except (DerivationFormatError, ParseError, json.JSONDecodeError) as e:
            raise _UsageError(f"{f}: {e}") from e
        reports.append((str(f), rep))
    bad = [f for f, r in reports if not r.valid]
    if args.format == "structured":
        doc = {"files": {f: r.to_dict() for f, r in reports}, "valid": not bad}
        print(json.dumps(doc, indent=2, ensure_ascii=False), file=out)
    else:
        for f, r in reports:
            print(f"{f}: {r.summary()}", file=out)
        print(f"{len(reports) - len(bad)}/{len(reports)} valid", file=out)
    return FAILED if bad else OK


# ----------------------------------------------------------------------------
# Suites


def _suite(args, name: str, out) -> int:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get(SEED_ENV, "0"))
    cfg = SuiteConfig(count=args.count, seed=seed, depth=args.depth, fuel=args.fuel,
                      shards=args.shards, workers=args.workers, shrink=not args.no_shrink)
    if args.max_trace_len is not None:
        cfg.max_trace_len = args.max_trace_len
    rep = run_suite(name, cfg)
    if args.report:
        Path(args.report).write_text(rep.to_json() + "\n", encoding="utf-8")
    print(rep.to_json() if args.format == "structured" else rep.summary(), file=out)
    return OK if rep.passed else FAILED


def main(argv: Optional[list] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.fuel < 1:
            raise _UsageError("--fuel must be positive")
        if args.command in ("eval", "trace"):
            return _source(args, args.command == "trace", out)
        if args.command == "check":
            return _check(args, out)
        if args.command == "canonicity":
            return _suite(args, "canonicity", out)
        return _suite(args, args.suite, out)
    except ParseError as e:
        file = getattr(args, "file", "<input>")
        print(f"{file}: {e}", file=sys.stderr)
        return USAGE
    except (_UsageError, OSError, ValueError) as e:
        print(str(e), file=sys.stderr)
        return USAGE
    except SystemExit as e:  # --help
        return OK if e.code in (0, None) else USAGE


if __name__ == "__main__":
    sys.exit(main())
