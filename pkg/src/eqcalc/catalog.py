"""Census of short equivalential theses and the shortest single axioms.

Candidates of a given length are generated as (tree shape, variable
pattern) pairs.  Patterns are set partitions of the leaf positions written
as restricted growth strings, so each alphabetical-variant class is produced
exactly once and is already in canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .formula import Formula, canonical_name, canonical_string, parse_polish
from .semantics import even_occurrence_predicate, is_tautology

__all__ = [
    "InvalidLength",
    "ThesisSet",
    "AxiomEntry",
    "tree_shapes",
    "restricted_growth_strings",
    "enumerate_theses",
    "known_axioms",
    "thesis_membership",
]


class InvalidLength(ValueError):
    pass


@lru_cache(maxsize=None)
def tree_shapes(n_leaves: int) -> tuple[str, ...]:
    """Polish templates of all full binary trees with ``n_leaves`` leaves,
    leaves written as ``.``."""
    if n_leaves == 1:
        return (".",)
    out = []
    for k in range(1, n_leaves):
        for left in tree_shapes(k):
            for right in tree_shapes(n_leaves - k):
                out.append("E" + left + right)
    return tuple(out)


def restricted_growth_strings(n: int):
    """Yield every set partition of ``range(n)`` as a restricted growth
    string: ``s[0] == 0`` and ``s[i] <= max(s[:i]) + 1``."""
    if n == 0:
        yield ()
        return
    s = [0] * n

    def extend(i, top):
        if i == n:
            yield tuple(s)
            return
        for v in range(top + 2):
            s[i] = v
            yield from extend(i + 1, max(top, v))

    yield from extend(1, 0)


def _exactly_twice(rgs: tuple[int, ...]) -> bool:
    counts: dict[int, int] = {}
    for v in rgs:
        counts[v] = counts.get(v, 0) + 1
    return all(c == 2 for c in counts.values())


@dataclass(frozen=True)
class ThesisSet:
    """Canonical theses of one symbol length, sorted by Polish text."""

    length: int
    members: tuple[Formula, ...]
    all_theses: bool
    shapes_visited: int
    partitions_per_shape: int

    @property
    def keys(self) -> frozenset[str]:
        return _keys(self)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, f: Formula) -> bool:
        return canonical_string(f) in self.keys

    def dump(self) -> str:
        return "".join(canonical_string(f) + "\n" for f in self.members)


@lru_cache(maxsize=None)
def _keys(ts: ThesisSet) -> frozenset[str]:
    return frozenset(canonical_string(f) for f in ts.members)


@lru_cache(maxsize=None)
def enumerate_theses(length: int, all_theses: bool = False) -> ThesisSet:
    """All theses of ``length`` symbols, one per alphabetical-variant class.

    By default only theses in which every variable occurs exactly twice are
    kept; this is the classical census (630 at length 11).  With
    ``all_theses`` every tautology of that length is returned.
    """
    if length < 1 or length % 2 == 0:
        raise InvalidLength(f"formula lengths are odd and positive, got {length}")
    n_leaves = (length + 1) // 2
    shapes = tree_shapes(n_leaves)
    patterns = list(restricted_growth_strings(n_leaves))
    found = set()
    for shape in shapes:
        pieces = shape.split(".")
        for rgs in patterns:
            if not all_theses and not _exactly_twice(rgs):
                continue
            text = pieces[0] + "".join(
                canonical_name(v) + rest for v, rest in zip(rgs, pieces[1:])
            )
            f = parse_polish(text)
            if is_tautology(f):
                found.add(text)
    members = tuple(parse_polish(t) for t in sorted(found))
    return ThesisSet(length, members, all_theses, len(shapes), len(patterns))


@dataclass(frozen=True)
class AxiomEntry:
    name: str
    source: str
    formula: Formula


_AXIOMS = [
    ("L1", "Lukasiewicz 1933", "EEpqEErqEpr"),
    ("L2", "Lukasiewicz 1933", "EEpqEEprErq"),
    ("L3", "Lukasiewicz 1933", "EEpqEErpEqr"),
    ("M1", "Meredith 1963", "EEEpqrEqErp"),
    ("M2", "Meredith 1963", "EpEEqEprErq"),
    ("M3", "Meredith 1963", "EEpEqrErEpq"),
    ("M4", "Meredith 1963", "EEpqErEEqrp"),
    ("M5", "Meredith 1963", "EEpqErEErqp"),
    ("M6", "Meredith 1963", "EEEpEqrrEqp"),
    ("M7", "Meredith 1963", "EEEpEqrqErp"),
    ("K", "Kalman 1978", "EpEEqErpErq"),
    ("W1", "Winker 1983", "EpEEqrEEprq"),
    ("W2", "Winker 1983", "EpEEqrEErpq"),
    ("XCB", "computer-assisted 2002", "EpEEEpqErqr"),
]


def known_axioms() -> list[AxiomEntry]:
    """The fourteen length-11 single axioms, in order of discovery."""
    return [AxiomEntry(n, s, parse_polish(f)) for n, s, f in _AXIOMS]


def thesis_membership(f: Formula, all_theses: bool = False) -> tuple[bool, str]:
    """Whether ``f`` is (a variant of) a census member of its length.

    Returns the flag and ``f``'s canonical text.
    """
    key = canonical_string(f)
    if not even_occurrence_predicate(f):
        return False, key
    return key in enumerate_theses(f.length, all_theses).keys, key
