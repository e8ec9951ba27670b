"""Command line: check, transform, search and stats.

Exit codes: 0 success, 1 a check or search came out negative, 2 usage or
parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import transform as T
from .checker import analyze, check
from .derivation import PreconditionViolation, StructureError
from .document import load, print_document
from .parser import ParseError, Parser
from .search import BudgetInvalid, SearchBudget, prove
from .syntax import get_order, subterms
from .systems import UnknownSystem, get_system


class UsageError(Exception):
    pass


# ------------------------------------------------------------ pipelines


def _base(name: str) -> str:
    core = name[3:] if name.startswith("cf.") else name
    return core.split("@", 1)[0]


def _flag(name: str, flag: str) -> str:
    return name if flag in name else name + flag


def _cf(name: str) -> str:
    return name if name.startswith("cf.") else "cf." + name


def _family(name: str) -> str:
    base = _base(name)
    return "LJ" if base.startswith("LJ") else "LK" if base.startswith("LK") else "EQ"


def _embed_target(name: str) -> str:
    fam = _family(name)
    return "cf.{eqelim}" if fam == "EQ" else f"cf.{fam}1="


def _eq_target(name: str) -> str:
    fam = _family(name)
    return "EQ" if fam == "EQ" else f"{fam}="


# name -> (function(derivation, order, input system), target system from the input system)
PIPELINE = {
    "to_atomic": (lambda d, o, n: T.to_atomic(d), lambda s: _flag(s, "@atomic")),
    "separate": (lambda d, o, n: T.separate(d), lambda s: _eq_target(s)),
    "eliminate_cuts_full": (lambda d, o, n: T.eliminate_cuts_full(d, _base(n)), lambda s: _cf(_base(s))),
    "eliminate_cuts_eq": (lambda d, o, n: T.eliminate_cuts_eq(d), lambda s: "cf.EQ"),
    "to_eqn": (lambda d, o, n: T.eq_cng_interderive(d, "toEQN"), lambda s: "EQN"),
    "to_eq": (lambda d, o, n: T.eq_cng_interderive(d, "toEQ"), lambda s: "EQ"),
    "eliminate_cuts_eqn": (lambda d, o, n: T.eliminate_cuts_eqn(d), lambda s: "cf.EQN"),
    "l_rules_to_eq": (lambda d, o, n: T.l_rules_to_eq(d), lambda s: _eq_target(s)),
    "singletonize": (lambda d, o, n: T.singletonize(d), lambda s: _flag(s, "@singleton")),
    "transpose_eq1": (lambda d, o, n: T.transpose_eq(d, "EQ1"), lambda s: "cf.EQ1"),
    "transpose_eq2": (lambda d, o, n: T.transpose_eq(d, "EQ2"), lambda s: "cf.EQ2"),
    "semishorten": (lambda d, o, n: T.semishorten(d, o), None),
    "embed_pure": (lambda d, o, n: T.embed_pure(d), _embed_target),
}


def _validate_pipeline(stages: list[str], order: str | None) -> None:
    unknown = [s for s in stages if s not in PIPELINE]
    if unknown:
        raise UsageError(f"unknown pipeline stage(s): {', '.join(unknown)}; "
                         f"choose from {', '.join(PIPELINE)}")
    if "semishorten" in stages and not order:
        raise UsageError("semishorten needs --order")


def _target(stage: str, system: str, order: str | None) -> str:
    if stage == "semishorten":
        return f"cf.EQ12@semishort({order})"
    return PIPELINE[stage][1](system)


# ------------------------------------------------------------ commands


def _out(args, text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _err(text: str) -> None:
    sys.stderr.write(text + "\n")


def _files(paths: list[str]) -> list[Path]:
    out = []
    for p in map(Path, paths):
        if p.is_dir():
            out.extend(sorted(p.glob("*.drv")))
        else:
            out.append(p)
    if not out:
        raise UsageError("no derivation files given")
    return out


def _system_for(doc, override: str | None):
    name = override or doc.system_name
    if not name:
        raise UsageError("no system: give --system or a 'system' header line")
    spec = get_system(name)
    if doc.hypotheses:
        spec = spec.with_hypotheses(*doc.hypotheses)
    return spec


def cmd_check(args) -> int:
    results = []
    status = 0
    for path in _files(args.files):
        try:
            doc = load(path)
        except ParseError as e:
            _err(f"{path}:{e}")
            return 2
        spec = _system_for(doc, args.system)
        rep = check(doc.derivation, spec)
        results.append({"file": str(path), "system": spec.name, **rep.to_dict()})
        if not rep.ok:
            status = 1
        if args.format == "text":
            _out(args, f"{path}: {'ok' if rep.ok else 'FAILED'} in {spec.name}")
            for line in rep.lines():
                _out(args, f"  {line}")
    if args.format == "json":
        _out(args, json.dumps(results if len(results) > 1 else results[0], indent=2))
    return status


def cmd_stats(args) -> int:
    try:
        doc = load(args.file)
    except ParseError as e:
        _err(f"{args.file}:{e}")
        return 2
    order = get_order(args.order or doc.order or "size")
    m = analyze(doc.derivation, order)
    if args.format == "json":
        _out(args, json.dumps(m.to_dict(), indent=2))
    else:
        for k, v in m.to_dict().items():
            _out(args, f"{k}\t{v}")
    return 0


def cmd_transform(args) -> int:
    stages = [s.strip() for s in args.pipeline.split(",") if s.strip()]
    _validate_pipeline(stages, args.order)
    try:
        doc = load(args.file)
    except ParseError as e:
        _err(f"{args.file}:{e}")
        return 2
    spec = _system_for(doc, args.system)
    order = get_order(args.order) if args.order else None
    d = doc.derivation
    rep = check(d, spec)
    if not rep.ok:
        _err(f"{args.file}: input does not check in {spec.name}")
        for line in rep.lines():
            _err(f"  {line}")
        return 1
    current = spec.name
    log = []
    with T.recording() as tr:
        for stage in stages:
            try:
                d = PIPELINE[stage][0](d, order, current)
            except (PreconditionViolation, StructureError) as e:
                _err(f"{stage}: {e}")
                return 1
            current = _target(stage, current, args.order)
            target = get_system(current)
            if doc.hypotheses:
                target = target.with_hypotheses(*doc.hypotheses)
            rep = check(d, target)
            log.append({"stage": stage, "system": current, "ok": rep.ok, "census": rep.census.to_dict()})
            if not rep.ok:
                _err(f"{stage}: output does not check in {current}")
                for line in rep.lines()[:20]:
                    _err(f"  {line}")
                return 1
    text = print_document(d, current, args.order, comment=f"pipeline: {','.join(stages)}")
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        _out(args, text)
    if args.format == "json":
        report = {"stages": log, "traceSteps": len(tr.entries), "traceNonDecreasing": len(tr.bad())}
        (sys.stderr if not args.output else sys.stdout).write(json.dumps(report, indent=2) + "\n")
    return 0


def cmd_search(args) -> int:
    p = Parser()
    try:
        goal = p.sequent(args.goal)
        universe = None
        if args.universe:
            universe = set()
            for t in args.universe.split(";"):
                universe.update(subterms(p.term(t.strip())))
            universe = frozenset(universe)
    except ParseError as e:
        _err(f"goal:{e}")
        return 2
    budget = SearchBudget(args.depth, args.cap, universe)
    res = prove(goal, args.system, budget)
    if res.found:
        if args.format == "json":
            _out(args, json.dumps({"result": "Found", "depth": res.depth,
                                   "statistics": res.statistics.to_dict(),
                                   "derivation": print_document(res.derivation, args.system)}, indent=2))
        else:
            _out(args, f"Found at depth {res.depth}")
            _out(args, print_document(res.derivation, args.system))
        return 0
    cert = res.certificate
    if args.format == "json":
        _out(args, json.dumps({"result": "ExhaustedWithinBudget", **cert.to_dict()}, indent=2))
    else:
        _out(args, f"ExhaustedWithinBudget: {len(cert.visited)} sequent classes, none derivable")
        _out(args, f"budget: depth {budget.max_depth}, cap {budget.multiplicity_cap}, "
                   f"universe {{{', '.join(cert.universe)}}}")
        for v in cert.visited:
            _out(args, f"  {v}")
    return 1


# ------------------------------------------------------------ entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eqcut", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="check derivation documents")
    c.add_argument("files", nargs="+", help="files or directories of *.drv files")
    c.add_argument("--system", help="override the system named in the document")

    t = sub.add_parser("transform", help="run a transformation pipeline")
    t.add_argument("file")
    t.add_argument("--pipeline", required=True, help="comma-separated stages: " + ", ".join(PIPELINE))
    t.add_argument("--order", help="term order, needed by semishorten")
    t.add_argument("--system", help="override the input system")
    t.add_argument("-o", "--output", help="write the result here instead of stdout")

    s = sub.add_parser("search", help="bounded backward search in a cut-free equality calculus")
    s.add_argument("--goal", required=True)
    s.add_argument("--system", required=True)
    s.add_argument("--depth", type=int, default=8)
    s.add_argument("--cap", type=int, default=3)
    s.add_argument("--universe", help="';'-separated terms, closed under subterms (default: the goal's)")

    st = sub.add_parser("stats", help="print the census of a derivation")
    st.add_argument("file")
    st.add_argument("--order", help="term order for the lengthening count (default size)")

    for p in (c, t, s, st):
        p.add_argument("--format", choices=("text", "json"), default="text")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    handler = {"check": cmd_check, "transform": cmd_transform, "search": cmd_search, "stats": cmd_stats}
    try:
        return handler[args.command](args)
    except (UsageError, UnknownSystem, BudgetInvalid, KeyError, OSError) as e:
        _err(f"eqcut: {e}")
        return 2
    except PreconditionViolation as e:
        _err(f"eqcut: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
