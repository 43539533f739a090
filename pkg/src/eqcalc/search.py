"""Bounded given-clause saturation under condensed detachment.

The knowledge base holds one entry per alphabetical-variant class.  Each
round selects the unprocessed entry of least (symbol length, id), combines
it both ways with every processed entry (itself included) under the enabled
rules, and inserts the surviving results sorted by (length, canonical text).
Entries matching a hint are exempt from the length cap and are selected
before all non-hint entries.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .formula import Formula, canonical_form, canonical_string, parse_polish
from .inference import Inapplicable, condensed_detach, reverse_condensed_detach
from .proofs import ProofStep, ProofTrace
from .semantics import is_tautology

__all__ = [
    "SearchLimits",
    "Entry",
    "KnowledgeBase",
    "SearchStatus",
    "SearchStats",
    "SearchOutcome",
    "NotDerived",
    "saturate",
    "extract_trace",
    "CandidateStatus",
    "CandidateReport",
    "check_single_axiom_candidate",
    "BASIS",
]

BASIS = (parse_polish("EEpqEEqrEpr"), parse_polish("EEpqEqp"))


@dataclass(frozen=True)
class SearchLimits:
    max_symbol_length: int = 23
    max_kept: int = 5000
    max_steps: int = 2000
    rules: str = "D"
    hints: tuple[Formula, ...] = ()
    check_soundness: bool = False

    def __post_init__(self):
        for name in ("max_symbol_length", "max_kept", "max_steps"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.rules not in ("D", "DR"):
            raise ValueError(f"rules must be 'D' or 'DR', got {self.rules!r}")
        object.__setattr__(self, "hints", tuple(self.hints))


@dataclass(frozen=True)
class Entry:
    id: int
    formula: Formula
    key: str
    rule: str
    major: int | None = None
    minor: int | None = None
    hint: bool = False


class KnowledgeBase:
    """Variant-free store of derived formulas with parent links."""

    def __init__(self):
        self.entries: list[Entry] = []
        self.index: dict[str, int] = {}
        self.frontier: list[tuple[bool, int, int]] = []
        self.processed: list[int] = []

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, entry_id: int) -> Entry:
        return self.entries[entry_id - 1]

    def find(self, f: Formula) -> Entry | None:
        i = self.index.get(canonical_string(f))
        return None if i is None else self[i]

    def add(self, formula: Formula, key: str, rule: str, major=None, minor=None,
            hint=False) -> Entry:
        entry = Entry(len(self.entries) + 1, formula, key, rule, major, minor, hint)
        self.entries.append(entry)
        self.index[key] = entry.id
        heapq.heappush(self.frontier, (not hint, formula.length, entry.id))
        return entry


class SearchStatus(Enum):
    ALL_GOALS_REACHED = "AllGoalsReached"
    LIMIT_REACHED = "LimitReached"
    # Frontier exhausted.  Complete only if nothing was cut by the length cap.
    SATURATED = "Saturated"


@dataclass
class SearchStats:
    steps: int = 0
    generated: int = 0
    kept: int = 0
    discarded_by_length: int = 0
    discarded_as_variant: int = 0
    inapplicable: int = 0

    def as_dict(self) -> dict:
        return dict(self.__dict__)

    def to_tsv(self) -> str:
        return "".join(f"{k}\t{v}\n" for k, v in self.as_dict().items())


@dataclass
class SearchOutcome:
    status: SearchStatus
    kb: KnowledgeBase
    found: dict[str, int | None]
    stats: SearchStats
    limit: str | None = None

    @property
    def closure_complete(self) -> bool:
        """True when the KB is the entire closure of the axioms."""
        return (
            self.status is SearchStatus.SATURATED
            and self.stats.discarded_by_length == 0
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "status": self.status.value,
                "limit": self.limit,
                "found": self.found,
                "stats": self.stats.as_dict(),
            },
            indent=1,
        )


class NotDerived(LookupError):
    pass


def saturate(
    axioms: Sequence[Formula],
    limits: SearchLimits = SearchLimits(),
    goals: Iterable[Formula] = (),
) -> SearchOutcome:
    if not axioms:
        raise ValueError("at least one axiom is required")
    goal_keys = {canonical_string(g): None for g in goals}
    hint_keys = {canonical_string(h) for h in limits.hints}
    rules = [("D", condensed_detach)]
    if limits.rules == "DR":
        rules.append(("R", reverse_condensed_detach))

    kb = KnowledgeBase()
    stats = SearchStats()

    def admit(formula, key, rule, major=None, minor=None):
        entry = kb.add(formula, key, rule, major, minor, key in hint_keys)
        stats.kept += 1
        if limits.check_soundness and not is_tautology(formula):
            raise AssertionError(f"unsound derivation of {key}")
        if key in goal_keys and goal_keys[key] is None:
            goal_keys[key] = entry.id

    def outcome(status, limit=None):
        return SearchOutcome(status, kb, dict(goal_keys), stats, limit)

    def all_found():
        return all(v is not None for v in goal_keys.values())

    for ax in axioms:
        key = canonical_string(ax)
        if key in kb.index:
            continue
        admit(canonical_form(ax), key, "axiom")
    if goal_keys and all_found():
        return outcome(SearchStatus.ALL_GOALS_REACHED)

    while kb.frontier:
        if stats.steps >= limits.max_steps:
            return outcome(SearchStatus.LIMIT_REACHED, "max_steps")
        *_, given_id = heapq.heappop(kb.frontier)
        stats.steps += 1
        kb.processed.append(given_id)
        given = kb[given_id].formula

        fresh: dict[str, tuple] = {}
        for other_id in kb.processed:
            other = kb[other_id].formula
            pairs = [(given_id, other_id, given, other)]
            if other_id != given_id:
                pairs.append((other_id, given_id, other, given))
            for name, rule in rules:
                for major_id, minor_id, major, minor in pairs:
                    try:
                        result = rule(major, minor).result
                    except Inapplicable:
                        stats.inapplicable += 1
                        continue
                    stats.generated += 1
                    key = canonical_string(result)
                    if key in kb.index or key in fresh:
                        stats.discarded_as_variant += 1
                        continue
                    if result.length > limits.max_symbol_length and key not in hint_keys:
                        stats.discarded_by_length += 1
                        continue
                    fresh[key] = (result, name, major_id, minor_id)

        for key in sorted(fresh, key=lambda k: (fresh[k][0].length, k)):
            if len(kb) >= limits.max_kept:
                return outcome(SearchStatus.LIMIT_REACHED, "max_kept")
            result, name, major_id, minor_id = fresh[key]
            admit(result, key, name, major_id, minor_id)
        if goal_keys and all_found():
            return outcome(SearchStatus.ALL_GOALS_REACHED)

    return outcome(SearchStatus.SATURATED)


def extract_trace(kb: KnowledgeBase, target: Formula) -> ProofTrace:
    """Minimal trace (ancestors of ``target`` only) with axioms first."""
    entry = kb.find(target)
    if entry is None:
        raise NotDerived(f"{target} is not in the knowledge base")
    needed: set[int] = set()
    stack = [entry.id]
    while stack:
        i = stack.pop()
        if i in needed:
            continue
        needed.add(i)
        e = kb[i]
        if e.rule != "axiom":
            stack.extend((e.major, e.minor))
    # Entry ids already respect dependency order.
    order = sorted(needed, key=lambda i: (kb[i].rule != "axiom", i))
    new_id = {old: n for n, old in enumerate(order, 1)}
    steps = []
    for old in order:
        e = kb[old]
        if e.rule == "axiom":
            steps.append(ProofStep(new_id[old], "axiom", formula=e.formula))
        else:
            steps.append(ProofStep(new_id[old], e.rule, new_id[e.major], new_id[e.minor]))
    return ProofTrace(steps)


class CandidateStatus(Enum):
    CONFIRMED = "Confirmed"
    # Bounded search can never refute single-axiom status.
    INCONCLUSIVE = "Inconclusive"


@dataclass
class CandidateReport:
    candidate: Formula
    status: CandidateStatus
    outcome: SearchOutcome
    traces: dict[str, ProofTrace] = field(default_factory=dict)

    @property
    def stats(self) -> SearchStats:
        return self.outcome.stats


def check_single_axiom_candidate(
    candidate: Formula, limits: SearchLimits = SearchLimits()
) -> CandidateReport:
    """Search for the basis pair ``EEpqEEqrEpr``, ``EEpqEqp`` from ``candidate``."""
    outcome = saturate([candidate], limits, BASIS)
    traces = {}
    for goal in BASIS:
        if outcome.kb.find(goal) is not None:
            traces[canonical_string(goal)] = extract_trace(outcome.kb, goal)
    status = (
        CandidateStatus.CONFIRMED
        if outcome.status is SearchStatus.ALL_GOALS_REACHED
        else CandidateStatus.INCONCLUSIVE
    )
    return CandidateReport(candidate, status, outcome, traces)
