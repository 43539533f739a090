"""Proof traces: parsing, deterministic replay, and the embedded XCB proof.

Trace text format, one item per line (``#`` starts a comment line)::

    <id> = axiom <formula>
    <id> = D<major>.<minor>
    <id> = R<major>.<minor>
    expect <id> <formula>
    expect-length <id> <n>
    expect-instance <id> <major-length> <minor-length>
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable

from .formula import (
    XCB,
    Equiv,
    Formula,
    ParseError,
    canonical_form,
    canonical_string,
    parse_polish,
    print_folded,
    print_polish,
)
from .inference import (
    DetachmentOutcome,
    Inapplicable,
    condensed_detach,
    reverse_condensed_detach,
)
from .semantics import is_tautology

__all__ = [
    "ProofStep",
    "ProofTrace",
    "StepRecord",
    "ReplayReport",
    "TraceError",
    "TraceSyntaxError",
    "ForwardReference",
    "DuplicateId",
    "StepFailed",
    "ExpectationMismatch",
    "parse_trace",
    "format_trace",
    "replay",
    "paper_fixture",
    "PAPER_TRACE",
    "EPP_TRACE",
    "epp_fixture",
    "renumber",
    "PreconditionFailed",
    "ReconstructionFailed",
    "Reconstruction",
    "reconstruct_reverse_detachment",
]


class TraceError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class TraceSyntaxError(TraceError):
    pass


class ForwardReference(TraceError):
    pass


class DuplicateId(TraceError):
    pass


class StepFailed(Exception):
    def __init__(self, step_id: int, cause: Exception):
        super().__init__(f"step {step_id} failed: {cause}")
        self.step_id = step_id
        self.cause = cause


class ExpectationMismatch(Exception):
    def __init__(self, step_id: int, expected, got):
        super().__init__(f"step {step_id}: expected {expected}, got {got}")
        self.step_id = step_id
        self.expected = expected
        self.got = got


@dataclass(frozen=True)
class ProofStep:
    """``rule`` is ``"axiom"``, ``"D"`` or ``"R"``."""

    id: int
    rule: str
    major: int | None = None
    minor: int | None = None
    formula: Formula | None = None

    def label(self) -> str:
        if self.rule == "axiom":
            return "axiom"
        return f"{self.rule}{self.major}.{self.minor}"


@dataclass
class ProofTrace:
    steps: list[ProofStep]
    expectations: dict[int, Formula] = field(default_factory=dict)
    length_expectations: dict[int, int] = field(default_factory=dict)
    instance_expectations: dict[int, tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self):
        seen: set[int] = set()
        for step in self.steps:
            if step.id in seen:
                raise DuplicateId(f"duplicate step id {step.id}")
            if step.rule != "axiom":
                for ref in (step.major, step.minor):
                    if ref not in seen:
                        raise ForwardReference(
                            f"step {step.id} refers to undefined step {ref}"
                        )
            seen.add(step.id)
        expected_ids = (
            set(self.expectations)
            | set(self.length_expectations)
            | set(self.instance_expectations)
        )
        for ref in sorted(expected_ids - seen):
            raise ForwardReference(f"expectation on undefined step {ref}")

    def __len__(self):
        return len(self.steps)

    @property
    def final(self) -> ProofStep:
        return self.steps[-1]

    def rules_used(self) -> set[str]:
        return {s.rule for s in self.steps}


_STEP_RE = re.compile(r"(\d+)\s*=\s*(?:axiom\s+(\S+)|([DR])(\d+)\.(\d+))\Z")
_EXPECT_RE = re.compile(r"expect\s+(\d+)\s+(\S+)\Z")
_EXPECT_LEN_RE = re.compile(r"expect-length\s+(\d+)\s+(\d+)\Z")
_EXPECT_INST_RE = re.compile(r"expect-instance\s+(\d+)\s+(\d+)\s+(\d+)\Z")


def _formula_at(text: str, lineno: int) -> Formula:
    try:
        return parse_polish(text)
    except ParseError as exc:
        raise TraceSyntaxError(str(exc), lineno) from None


def parse_trace(text: str) -> ProofTrace:
    steps: list[ProofStep] = []
    ids: set[int] = set()
    expectations: dict[int, Formula] = {}
    lengths: dict[int, int] = {}
    instances: dict[int, tuple[int, int]] = {}
    expect_lines: dict[int, int] = {}

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if m := _STEP_RE.match(line):
            sid = int(m[1])
            if sid in ids:
                raise DuplicateId(f"step {sid} defined twice", lineno)
            if m[2] is not None:
                step = ProofStep(sid, "axiom", formula=_formula_at(m[2], lineno))
            else:
                major, minor = int(m[4]), int(m[5])
                for ref in (major, minor):
                    if ref not in ids:
                        raise ForwardReference(
                            f"step {sid} refers to step {ref} before it is defined",
                            lineno,
                        )
                step = ProofStep(sid, m[3], major, minor)
            ids.add(sid)
            steps.append(step)
        elif m := _EXPECT_RE.match(line):
            expectations[int(m[1])] = _formula_at(m[2], lineno)
            expect_lines.setdefault(int(m[1]), lineno)
        elif m := _EXPECT_LEN_RE.match(line):
            lengths[int(m[1])] = int(m[2])
            expect_lines.setdefault(int(m[1]), lineno)
        elif m := _EXPECT_INST_RE.match(line):
            instances[int(m[1])] = (int(m[2]), int(m[3]))
            expect_lines.setdefault(int(m[1]), lineno)
        else:
            raise TraceSyntaxError(f"cannot parse {line!r}", lineno)

    for sid, lineno in expect_lines.items():
        if sid not in ids:
            raise ForwardReference(f"expectation on undefined step {sid}", lineno)
    return ProofTrace(steps, expectations, lengths, instances)


def format_trace(trace: ProofTrace) -> str:
    """Inverse of :func:`parse_trace` (comments are not preserved)."""
    lines = []
    for step in trace.steps:
        if step.rule == "axiom":
            lines.append(f"{step.id} = axiom {print_polish(step.formula)}")
        else:
            lines.append(f"{step.id} = {step.label()}")
    for sid, f in sorted(trace.expectations.items()):
        lines.append(f"expect {sid} {print_polish(f)}")
    for sid, n in sorted(trace.length_expectations.items()):
        lines.append(f"expect-length {sid} {n}")
    for sid, (a, b) in sorted(trace.instance_expectations.items()):
        lines.append(f"expect-instance {sid} {a} {b}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class StepRecord:
    id: int
    rule: str
    major: int | None
    minor: int | None
    formula: Formula
    major_instance_length: int | None
    minor_instance_length: int | None
    tautology: bool
    # None when the step carries no expectation.
    expectation_met: bool | None

    @property
    def canonical(self) -> str:
        return print_polish(self.formula)

    @property
    def folded(self) -> str:
        return print_folded(self.formula)

    @property
    def length(self) -> int:
        return self.formula.length

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "rule": self.rule,
            "parents": [self.major, self.minor] if self.major is not None else [],
            "formula": self.canonical,
            "folded": self.folded,
            "length": self.length,
            "major_instance_length": self.major_instance_length,
            "minor_instance_length": self.minor_instance_length,
            "tautology": self.tautology,
            "expectation_met": self.expectation_met,
        }

    def as_tsv(self) -> str:
        def show(x):
            return "-" if x is None else str(x)

        parents = f"{self.major}.{self.minor}" if self.major is not None else "-"
        flag = {None: "-", True: "ok", False: "MISMATCH"}[self.expectation_met]
        return "\t".join(
            [
                str(self.id),
                self.rule,
                parents,
                self.canonical,
                self.folded,
                str(self.length),
                show(self.major_instance_length),
                show(self.minor_instance_length),
                "taut" if self.tautology else "NON-TAUT",
                flag,
            ]
        )


@dataclass
class ReplayReport:
    records: list[StepRecord]

    def __getitem__(self, step_id: int) -> StepRecord:
        for r in self.records:
            if r.id == step_id:
                return r
        raise KeyError(step_id)

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)

    @property
    def final(self) -> StepRecord:
        return self.records[-1]

    @property
    def all_tautologies(self) -> bool:
        return all(r.tautology for r in self.records)

    def to_tsv(self) -> str:
        return "".join(r.as_tsv() + "\n" for r in self.records)

    def to_json(self) -> str:
        return json.dumps([r.as_dict() for r in self.records], indent=1)


def replay(trace: ProofTrace, *, strict: bool = True) -> ReplayReport:
    """Execute every step of ``trace`` and check its expectations.

    Formulas are compared up to alphabetical variance.  Inapplicable steps
    raise :class:`StepFailed`.  With ``strict`` (the default) an unmet
    expectation raises :class:`ExpectationMismatch`; otherwise it is only
    flagged in the report.
    """
    derived: dict[int, Formula] = {}
    records: list[StepRecord] = []
    for step in trace.steps:
        major_len = minor_len = None
        if step.rule == "axiom":
            formula = canonical_form(step.formula)
        else:
            rule = condensed_detach if step.rule == "D" else reverse_condensed_detach
            try:
                out: DetachmentOutcome = rule(derived[step.major], derived[step.minor])
            except Inapplicable as exc:
                raise StepFailed(step.id, exc) from exc
            formula = out.result
            major_len = out.major_instance_length
            minor_len = out.minor_instance_length
        derived[step.id] = formula

        checks = []
        if step.id in trace.expectations:
            want = trace.expectations[step.id]
            ok = canonical_string(want) == canonical_string(formula)
            checks.append((ok, print_polish(want), print_polish(formula)))
        if step.id in trace.length_expectations:
            want_len = trace.length_expectations[step.id]
            checks.append((formula.length == want_len, want_len, formula.length))
        if step.id in trace.instance_expectations:
            want_pair = trace.instance_expectations[step.id]
            checks.append((want_pair == (major_len, minor_len), want_pair, (major_len, minor_len)))
        met = all(c[0] for c in checks) if checks else None
        if strict:
            for ok, want, got in checks:
                if not ok:
                    raise ExpectationMismatch(step.id, want, got)

        records.append(
            StepRecord(
                step.id,
                step.rule,
                step.major,
                step.minor,
                formula,
                major_len,
                minor_len,
                is_tautology(formula),
                met,
            )
        )
    return ReplayReport(records)


PAPER_TRACE = """\
# XCB = EpEEEpqErqr derives EEpqEEqrEpr (23) and EEpqEqp (26)
# by condensed detachment alone.
1 = axiom EpEEEpqErqr
2 = D1.1
3 = D2.1
4 = D1.3
5 = D3.1
6 = D4.1
# not D3.4: that gives a different line 7 and step 17 then fails
7 = D3.5
8 = D1.5
9 = D2.7
10 = D6.8
11 = D4.9
12 = D1.10
13 = D11.3
14 = D1.13
15 = D9.14
16 = D9.15
17 = D12.16
18 = D17.2
19 = D3.18
20 = D1.19
21 = D20.5
22 = D20.19
23 = D21.19
24 = D23.22
25 = D23.24
26 = D25.19
expect 1 EpEEEpqErqr
# 19 is CXM, an eleven-symbol thesis
expect-length 19 11
# the premiss instances for 17 are 2939 and 2919 symbols long
expect-instance 17 2939 2919
expect 23 EEpqEEqrEpr
expect 26 EEpqEqp
"""


def paper_fixture() -> ProofTrace:
    return parse_trace(PAPER_TRACE)


def renumber(traces: Iterable[ProofTrace]) -> tuple[ProofTrace, list[int]]:
    """Concatenate traces, renumbering steps from 1 and sharing axioms.

    Returns the merged trace (expectations dropped) and the new id of each
    input trace's final step.
    """
    steps: list[ProofStep] = []
    axioms: dict[str, int] = {}
    finals: list[int] = []
    for trace in traces:
        local: dict[int, int] = {}
        for step in trace.steps:
            if step.rule == "axiom":
                key = canonical_string(step.formula)
                if key not in axioms:
                    axioms[key] = len(steps) + 1
                    steps.append(ProofStep(axioms[key], "axiom", formula=step.formula))
                local[step.id] = axioms[key]
            else:
                new_id = len(steps) + 1
                steps.append(
                    ProofStep(new_id, step.rule, local[step.major], local[step.minor])
                )
                local[step.id] = new_id
        finals.append(local[trace.final.id])
    return ProofTrace(steps), finals


# D-only derivation of Epp from XCB, found by saturate() at length cap 31.
EPP_TRACE = """\
1 = axiom EpEEEpqErqr
2 = D1.1
3 = D2.1
4 = D1.2
5 = D3.2
6 = D1.5
7 = D4.1
8 = D7.6
9 = D8.3
10 = D2.9
11 = D1.10
12 = D11.1
13 = D1.11
14 = D12.10
15 = D12.1
16 = D14.8
17 = D11.15
18 = D8.17
19 = D11.18
20 = D1.19
21 = D20.16
22 = D13.21
23 = D12.22
expect 23 Epp
"""


def epp_fixture() -> ProofTrace:
    return parse_trace(EPP_TRACE)


class PreconditionFailed(ValueError):
    pass


class ReconstructionFailed(Exception):
    def __init__(self, stage: str, cause: Exception | None = None):
        msg = f"reverse detachment reconstruction failed at {stage}"
        if cause is not None:
            msg += f": {cause}"
        super().__init__(msg)
        self.stage = stage
        self.cause = cause


@dataclass
class Reconstruction:
    """Result of :func:`reconstruct_reverse_detachment`.

    ``middle`` records which combination of ``EEEEppqErqr`` and XCB produced
    ``EEEEppqrEqr``, as ``(major, minor)`` labels.
    """

    trace: ProofTrace
    middle: tuple[str, str]
    stages: dict[str, int]


def _check_d_only_from_xcb(trace: ProofTrace, what: str) -> Formula:
    if trace.rules_used() - {"axiom", "D"}:
        raise PreconditionFailed(f"{what} uses rules other than D")
    for step in trace.steps:
        if step.rule == "axiom" and canonical_string(step.formula) != canonical_string(XCB):
            raise PreconditionFailed(f"{what} has an axiom other than XCB")
    try:
        return replay(trace).final.formula
    except (StepFailed, ExpectationMismatch) as exc:
        raise PreconditionFailed(f"{what} does not replay: {exc}") from exc


def reconstruct_reverse_detachment(
    implication: ProofTrace, consequent: ProofTrace
) -> Reconstruction:
    """Turn D-only proofs of ``E alpha beta`` and ``beta`` into a D-only
    proof of ``alpha``, all from XCB.

    The route: detach ``beta`` from XCB; derive ``Epp`` and detach it from
    XCB to get ``EEEEppqErqr``; combine that with XCB into ``EEEEppqrEqr``;
    detach the first result from it, giving ``EEalpha beta alpha``, and
    detach ``E alpha beta`` from that.
    """
    imp = _check_d_only_from_xcb(implication, "implication proof")
    con = _check_d_only_from_xcb(consequent, "consequent proof")
    if not isinstance(imp, Equiv):
        raise PreconditionFailed(f"implication proof ends in a variable, {imp}")
    if canonical_string(imp.right) != canonical_string(con):
        raise PreconditionFailed(
            f"consequent proof ends in {print_polish(con)}, "
            f"not {print_polish(canonical_form(imp.right))}"
        )

    base, (imp_id, con_id, epp_id) = renumber([implication, consequent, epp_fixture()])
    xcb_id = next(s.id for s in base.steps if s.rule == "axiom")

    steps = list(base.steps)
    derived = {r.id: r.formula for r in replay(base)}
    stages: dict[str, int] = {}

    def add(stage: str, major: int, minor: int) -> Formula:
        try:
            out = condensed_detach(derived[major], derived[minor])
        except Inapplicable as exc:
            raise ReconstructionFailed(stage, exc) from exc
        sid = len(steps) + 1
        steps.append(ProofStep(sid, "D", major, minor))
        derived[sid] = out.result
        stages[stage] = sid
        return out.result

    add("detach-consequent", xcb_id, con_id)
    add("detach-epp", xcb_id, epp_id)
    f3 = stages["detach-epp"]

    # Which premiss is major in the middle step is not fixed in advance; try
    # both and keep the first whose continuation reaches alpha.
    want = canonical_string(imp.left)
    middle = None
    for major, minor, label in ((f3, xcb_id, ("EEEEppqErqr", "XCB")),
                                (xcb_id, f3, ("XCB", "EEEEppqErqr"))):
        try:
            m = condensed_detach(derived[major], derived[minor]).result
            n = condensed_detach(m, derived[stages["detach-consequent"]]).result
            a = condensed_detach(n, derived[imp_id]).result
        except Inapplicable:
            continue
        if canonical_string(a) == want:
            middle = (major, minor, label)
            break
    if middle is None:
        raise ReconstructionFailed("middle")
    add("middle", middle[0], middle[1])
    add("reverse-form", stages["middle"], stages["detach-consequent"])
    result = add("detach-implication", stages["reverse-form"], imp_id)
    if canonical_string(result) != want:
        raise ReconstructionFailed("endpoint")
    return Reconstruction(ProofTrace(steps), middle[2], stages)

