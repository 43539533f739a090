"""Pure-equivalence formulas, Polish notation, and alphabetical variance.

A formula is either a :class:`Var` or an :class:`Equiv` of two formulas.
Both are immutable.  Every traversal here is iterative: derived instances
reach thousands of symbols and nest deeply enough to overflow the default
recursion limit.
"""

from __future__ import annotations

import re
import string
from collections import Counter
from typing import Callable, Iterator

__all__ = [
    "Formula",
    "Var",
    "Equiv",
    "ParseError",
    "UnexpectedEnd",
    "TrailingInput",
    "BadToken",
    "parse_polish",
    "print_polish",
    "print_folded",
    "canonical_form",
    "canonical_string",
    "canonical_name",
    "is_variant",
    "symbol_length",
    "occurrence_counts",
    "variables",
    "leaves",
    "map_variables",
    "XCB",
]

_VAR_RE = re.compile(r"[a-z][0-9]*\Z")
_TOKEN_RE = re.compile(r"E|[a-z][0-9]*|.", re.DOTALL)


class Formula:
    """Base class of the two formula node kinds."""

    __slots__ = ()

    length: int

    def __str__(self) -> str:
        return print_polish(self)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")


class Var(Formula):
    __slots__ = ("name",)

    length = 1

    def __init__(self, name: str):
        if not _VAR_RE.match(name):
            raise ValueError(f"bad variable name {name!r}")
        object.__setattr__(self, "name", name)

    def __eq__(self, other):
        if isinstance(other, Var):
            return self.name == other.name
        return NotImplemented

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"Var({self.name!r})"


class Equiv(Formula):
    """``E left right``.  Caches its symbol length and hash."""

    __slots__ = ("left", "right", "length", "_hash")

    def __init__(self, left: Formula, right: Formula):
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "length", left.length + right.length + 1)
        object.__setattr__(self, "_hash", hash((left, right)))

    def __eq__(self, other):
        if not isinstance(other, Equiv):
            return NotImplemented if not isinstance(other, Formula) else False
        if self is other:
            return True
        if self.length != other.length or self._hash != other._hash:
            return False
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if a is b:
                continue
            if isinstance(a, Equiv):
                if not isinstance(b, Equiv) or a.length != b.length:
                    return False
                stack.append((a.right, b.right))
                stack.append((a.left, b.left))
            elif a != b:
                return False
        return True

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Equiv({print_polish(self)})"


class ParseError(ValueError):
    """Malformed Polish input."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class UnexpectedEnd(ParseError):
    pass


class TrailingInput(ParseError):
    pass


class BadToken(ParseError):
    pass


def parse_polish(text: str) -> Formula:
    """Parse prefix notation such as ``EpEEEpqErqr``.

    ``E`` takes the next two subterms; a variable is one lowercase letter
    followed by any run of digits, so ``Ez1p`` is ``E z1 p``.
    """
    tokens: list[str] = []
    need = 1
    pos = 0
    for m in _TOKEN_RE.finditer(text):
        tok = m.group()
        if tok != "E" and not _VAR_RE.match(tok):
            raise BadToken(f"unexpected character {tok!r}", m.start())
        if need == 0:
            raise TrailingInput(f"trailing input {text[m.start():]!r}", m.start())
        need += 1 if tok == "E" else -1
        tokens.append(tok)
        pos = m.end()
    if need:
        raise UnexpectedEnd("input ended inside a formula", pos)

    stack: list[Formula] = []
    vars_seen: dict[str, Var] = {}
    for tok in reversed(tokens):
        if tok == "E":
            left = stack.pop()
            right = stack.pop()
            stack.append(Equiv(left, right))
        else:
            v = vars_seen.get(tok)
            if v is None:
                v = vars_seen[tok] = Var(tok)
            stack.append(v)
    return stack[0]


def _preorder(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Equiv):
            stack.append(node.right)
            stack.append(node.left)


def leaves(f: Formula) -> Iterator[str]:
    """Variable names in left-to-right order, with repetition."""
    for node in _preorder(f):
        if isinstance(node, Var):
            yield node.name


def print_polish(f: Formula) -> str:
    return "".join("E" if isinstance(n, Equiv) else n.name for n in _preorder(f))


def symbol_length(f: Formula) -> int:
    return f.length


def occurrence_counts(f: Formula) -> Counter:
    return Counter(leaves(f))


def variables(f: Formula) -> set[str]:
    return set(leaves(f))


def canonical_name(i: int) -> str:
    """Name of the ``i``-th variable (0-based) in canonical order."""
    if i < 26:
        return string.ascii_lowercase[i]
    return f"v{i + 1}"


def map_variables(f: Formula, fn: Callable[[Var], Formula]) -> Formula:
    """Rebuild ``f`` with every variable ``v`` replaced by ``fn(v)``.

    Untouched subtrees are shared with the input.
    """
    done: dict[int, Formula] = {}
    stack = [f]
    while stack:
        node = stack[-1]
        if id(node) in done:
            stack.pop()
            continue
        if isinstance(node, Var):
            done[id(node)] = fn(node)
            stack.pop()
            continue
        left = done.get(id(node.left))
        right = done.get(id(node.right))
        if left is None or right is None:
            if right is None:
                stack.append(node.right)
            if left is None:
                stack.append(node.left)
            continue
        if left is node.left and right is node.right:
            done[id(node)] = node
        else:
            done[id(node)] = Equiv(left, right)
        stack.pop()
    return done[id(f)]


def _canonical_map(f: Formula) -> dict[str, str]:
    names: dict[str, str] = {}
    for v in leaves(f):
        if v not in names:
            names[v] = canonical_name(len(names))
    return names


def canonical_form(f: Formula) -> Formula:
    """Rename variables to ``a, b, c, ...`` by first occurrence."""
    names = _canonical_map(f)
    if all(k == v for k, v in names.items()):
        return f
    fresh = {new: Var(new) for new in names.values()}
    return map_variables(f, lambda v: fresh[names[v.name]])


def canonical_string(f: Formula) -> str:
    """``print_polish(canonical_form(f))`` without building the tree."""
    names: dict[str, str] = {}
    out = []
    for node in _preorder(f):
        if isinstance(node, Equiv):
            out.append("E")
        else:
            name = names.get(node.name)
            if name is None:
                name = names[node.name] = canonical_name(len(names))
            out.append(name)
    return "".join(out)


def is_variant(f: Formula, g: Formula) -> bool:
    """True iff ``f`` and ``g`` differ only by a bijective renaming."""
    return f.length == g.length and canonical_string(f) == canonical_string(g)


# 'E' is the connective, so it never serves as a fold letter.
_FOLD_LETTERS = [c for c in string.ascii_uppercase if c != "E"]


def print_folded(f: Formula, pattern: Formula | None = None) -> str:
    """Polish text of ``f`` with variants of ``pattern`` shown as A, B, C, ...

    A subformula is folded only when it is an alphabetical variant of
    ``pattern`` whose variables occur nowhere else in ``f``.  The scan is
    left to right and folded subformulas are not searched further.
    """
    if pattern is None:
        pattern = XCB
    key = canonical_string(pattern)
    total = occurrence_counts(f)
    out = []
    n_folds = 0
    stack = [f]
    while stack:
        node = stack.pop()
        if node.length == pattern.length and canonical_string(node) == key:
            local = occurrence_counts(node)
            if all(total[v] == c for v, c in local.items()):
                if n_folds < len(_FOLD_LETTERS):
                    out.append(_FOLD_LETTERS[n_folds])
                else:
                    out.append(f"[{n_folds + 1}]")
                n_folds += 1
                continue
        if isinstance(node, Equiv):
            out.append("E")
            stack.append(node.right)
            stack.append(node.left)
        else:
            out.append(node.name)
    return "".join(out)


XCB = parse_polish("EpEEEpqErqr")
