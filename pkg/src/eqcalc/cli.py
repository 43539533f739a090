"""Command-line front end: ``eqcalc <subcommand> ...``.

Exit status is 0 on success, 1 when the logic says no (inapplicable step,
unmet expectation, goal not reached, non-thesis), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .catalog import InvalidLength, enumerate_theses, known_axioms
from .formula import (
    ParseError,
    canonical_form,
    canonical_string,
    parse_polish,
    print_folded,
    print_polish,
)
from .inference import Inapplicable, condensed_detach, reverse_condensed_detach
from .proofs import (
    ExpectationMismatch,
    StepFailed,
    TraceError,
    epp_fixture,
    format_trace,
    paper_fixture,
    parse_trace,
    replay,
)
from .search import (
    BASIS,
    CandidateStatus,
    SearchLimits,
    SearchStatus,
    check_single_axiom_candidate,
    extract_trace,
    saturate,
)
from .semantics import is_tautology


class UsageError(Exception):
    pass


def _formula(text):
    try:
        return parse_polish(text)
    except ParseError as exc:
        raise UsageError(f"bad formula {text!r}: {exc}") from None


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, rows, json_obj=None):
    if args.json:
        print(json.dumps(rows if json_obj is None else json_obj, indent=1))
    else:
        for row in rows:
            print("\t".join(str(v) for v in row.values()))


def cmd_parse(args):
    f = _formula(args.formula)
    c = canonical_form(f)
    _emit(args, [{
        "formula": print_polish(f),
        "canonical": print_polish(c),
        "folded": print_folded(c),
        "length": f.length,
    }])
    return 0


def cmd_taut(args):
    f = _formula(args.formula)
    taut = is_tautology(f)
    _emit(args, [{"formula": print_polish(f), "tautology": str(taut).lower()}])
    return 0 if taut else 1


def cmd_detach(args):
    rule = condensed_detach if args.command == "d" else reverse_condensed_detach
    major, minor = _formula(args.major), _formula(args.minor)
    try:
        out = rule(major, minor)
    except Inapplicable as exc:
        print(f"inapplicable: {exc}", file=sys.stderr)
        return 1
    _emit(args, [{
        "canonical": print_polish(out.result),
        "folded": print_folded(out.result),
        "length": out.result.length,
        "major_instance_length": out.major_instance_length,
        "minor_instance_length": out.minor_instance_length,
    }])
    return 0


def cmd_replay(args):
    if args.paper:
        trace = paper_fixture()
    elif args.epp:
        trace = epp_fixture()
    elif args.trace:
        try:
            trace = parse_trace(_read(args.trace))
        except TraceError as exc:
            raise UsageError(f"{args.trace}: {exc}") from None
    else:
        raise UsageError("replay needs a trace file, --paper or --epp")
    try:
        report = replay(trace)
    except (StepFailed, ExpectationMismatch) as exc:
        print(str(exc), file=sys.stderr)
        return 1
    if args.json:
        print(report.to_json())
    else:
        sys.stdout.write(report.to_tsv())
    return 0


def cmd_enumerate(args):
    try:
        ts = enumerate_theses(args.length, args.all)
    except InvalidLength as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        obj = {"length": ts.length, "count": len(ts)}
        if not args.count_only:
            obj["members"] = [print_polish(f) for f in ts]
        print(json.dumps(obj, indent=1))
    elif args.count_only:
        print(len(ts))
    else:
        sys.stdout.write(ts.dump())
    return 0


def cmd_axioms(args):
    rows = [
        {"name": e.name, "source": e.source, "formula": print_polish(e.formula),
         "canonical": canonical_string(e.formula)}
        for e in known_axioms()
    ]
    _emit(args, rows)
    return 0


def _limits(args):
    hints = []
    if args.hints:
        for line in _read(args.hints).splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                hints.append(_formula(line))
    if args.paper_hints:
        hints.extend(r.formula for r in replay(paper_fixture()))
    try:
        return SearchLimits(
            max_symbol_length=args.max_length,
            max_kept=args.max_kept,
            max_steps=args.max_steps,
            rules=args.rules.upper(),
            hints=tuple(hints),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _search_rows(outcome):
    rows = [{"key": "status", "value": outcome.status.value}]
    if outcome.limit:
        rows.append({"key": "limit", "value": outcome.limit})
    rows += [{"key": k, "value": v} for k, v in outcome.stats.as_dict().items()]
    rows += [
        {"key": f"goal {g}", "value": "not-found" if i is None else f"entry {i}"}
        for g, i in outcome.found.items()
    ]
    return rows


def cmd_search(args):
    axioms = [_formula(a) for a in args.axiom]
    goals = [_formula(g) for g in args.goal]
    outcome = saturate(axioms, _limits(args), goals)
    _emit(args, _search_rows(outcome), json.loads(outcome.to_json()))
    if args.trace and not args.json:
        for g in goals:
            if outcome.kb.find(g) is not None:
                print(f"# trace for {print_polish(g)}")
                sys.stdout.write(format_trace(extract_trace(outcome.kb, g)))
    if not goals:
        return 0
    return 0 if outcome.status is SearchStatus.ALL_GOALS_REACHED else 1


def cmd_check_axiom(args):
    report = check_single_axiom_candidate(_formula(args.formula), _limits(args))
    rows = [{"key": "candidate", "value": print_polish(report.candidate)},
            {"key": "verdict", "value": report.status.value}]
    rows += _search_rows(report.outcome)
    obj = {
        "candidate": print_polish(report.candidate),
        "verdict": report.status.value,
        "search": json.loads(report.outcome.to_json()),
        "traces": {k: format_trace(t) for k, t in report.traces.items()},
    }
    _emit(args, rows, obj)
    if args.trace and not args.json:
        for k, t in report.traces.items():
            print(f"# trace for {k}")
            sys.stdout.write(format_trace(t))
    return 0 if report.status is CandidateStatus.CONFIRMED else 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    # Accept --json on either side of the subcommand.
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="structured output")

    p = _Parser(prog="eqcalc", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="structured output")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("parse", parents=[common], help="canonical and folded forms")
    s.add_argument("formula")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("taut", parents=[common], help="two-valued tautology test")
    s.add_argument("formula")
    s.set_defaults(func=cmd_taut)

    for name, what in (("d", "condensed detachment"), ("r", "reverse condensed detachment")):
        s = sub.add_parser(name, parents=[common], help=what)
        s.add_argument("major")
        s.add_argument("minor")
        s.set_defaults(func=cmd_detach)

    s = sub.add_parser("replay", parents=[common], help="replay a proof trace")
    s.add_argument("trace", nargs="?")
    s.add_argument("--paper", action="store_true", help="the 26-step XCB proof")
    s.add_argument("--epp", action="store_true", help="the Epp-from-XCB proof")
    s.set_defaults(func=cmd_replay)

    s = sub.add_parser("enumerate", parents=[common], help="census of theses")
    s.add_argument("--length", type=int, required=True)
    s.add_argument("--count-only", action="store_true")
    s.add_argument("--all", action="store_true",
                   help="every tautology, not only exactly-twice ones")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("axioms", parents=[common], help="the 14 shortest single axioms")
    s.set_defaults(func=cmd_axioms)

    limits = _Parser(add_help=False)
    limits.add_argument("--max-length", type=int, default=SearchLimits.max_symbol_length)
    limits.add_argument("--max-steps", type=int, default=SearchLimits.max_steps)
    limits.add_argument("--max-kept", type=int, default=SearchLimits.max_kept)
    limits.add_argument("--rules", choices=["d", "dr", "D", "DR"], default="d")
    limits.add_argument("--hints", metavar="FILE", help="one formula per line")
    limits.add_argument("--paper-hints", action="store_true",
                        help="use the 26 proof formulas as hints")
    limits.add_argument("--trace", action="store_true", help="print found proofs")

    s = sub.add_parser("search", parents=[common, limits], help="bounded saturation")
    s.add_argument("--axiom", action="append", required=True)
    s.add_argument("--goal", action="append", default=[])
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("check-axiom", parents=[common, limits],
                       help="look for " + " and ".join(print_polish(b) for b in BASIS))
    s.add_argument("formula")
    s.set_defaults(func=cmd_check_axiom)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"eqcalc: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
