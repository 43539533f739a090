"""Substitutions and most general unification with occurs check."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from typing import Iterator

from .formula import Formula, Var, leaves, map_variables

__all__ = [
    "Substitution",
    "NotUnifiable",
    "apply_substitution",
    "most_general_unifier",
    "rename_apart",
    "compose",
    "instance_length",
]


class NotUnifiable(Exception):
    """Structural clash or occurs-check failure."""


class Substitution(Mapping):
    """Finite map from variable names to formulas.

    Identity bindings (``v -> v``) are dropped on construction.
    """

    __slots__ = ("_bindings",)

    def __init__(self, bindings: Mapping[str, Formula] | Iterable = ()):
        self._bindings = {
            k: v
            for k, v in dict(bindings).items()
            if not (isinstance(v, Var) and v.name == k)
        }

    def __getitem__(self, name: str) -> Formula:
        return self._bindings[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._bindings)

    def __len__(self) -> int:
        return len(self._bindings)

    def __eq__(self, other):
        if isinstance(other, Substitution):
            return self._bindings == other._bindings
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._bindings.items()))

    def __repr__(self):
        inner = ", ".join(f"{k}->{v}" for k, v in sorted(self._bindings.items()))
        return f"Substitution({{{inner}}})"

    def __call__(self, f: Formula) -> Formula:
        return apply_substitution(self, f)


def apply_substitution(s: Mapping[str, Formula], f: Formula) -> Formula:
    """Replace every bound variable of ``f`` by its image, simultaneously."""
    if not s:
        return f
    return map_variables(f, lambda v: s.get(v.name, v))


def instance_length(s: Mapping[str, Formula], f: Formula) -> int:
    """``apply_substitution(s, f).length`` without building the instance."""
    total = f.length
    for name in leaves(f):
        image = s.get(name)
        if image is not None:
            total += image.length - 1
    return total


def compose(outer: Mapping[str, Formula], inner: Mapping[str, Formula]) -> Substitution:
    """Substitution equal to applying ``inner`` first, then ``outer``."""
    out = {k: apply_substitution(outer, v) for k, v in inner.items()}
    for k, v in outer.items():
        out.setdefault(k, v)
    return Substitution(out)


def _walk(f: Formula, bindings: dict[str, Formula]) -> Formula:
    while isinstance(f, Var):
        bound = bindings.get(f.name)
        if bound is None:
            return f
        f = bound
    return f


def _occurs(name: str, f: Formula, bindings: dict[str, Formula]) -> bool:
    seen: set[int] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        if isinstance(node, Var):
            if node.name == name:
                return True
            bound = bindings.get(node.name)
            if bound is not None:
                stack.append(bound)
        else:
            stack.append(node.right)
            stack.append(node.left)
    return False


def _resolve(bindings: dict[str, Formula]) -> dict[str, Formula]:
    """Turn triangular bindings into fully resolved (idempotent) ones."""
    resolved: dict[str, Formula] = {}

    def lookup(v: Var) -> Formula:
        return resolved.get(v.name, v)

    # Resolve in dependency order so each image is built exactly once.
    for root in bindings:
        if root in resolved:
            continue
        stack = [(root, False)]
        on_path: set[str] = set()
        while stack:
            name, expanded = stack.pop()
            if expanded:
                on_path.discard(name)
                resolved[name] = map_variables(bindings[name], lookup)
                continue
            if name in resolved or name in on_path:
                continue
            on_path.add(name)
            stack.append((name, True))
            for dep in dict.fromkeys(leaves(bindings[name])):
                if dep in bindings and dep not in resolved:
                    stack.append((dep, False))
    return resolved


def most_general_unifier(f: Formula, g: Formula) -> Substitution:
    """Robinson unification.

    Returns an idempotent substitution whose images are fully resolved.
    Raises :class:`NotUnifiable` on a clash or occurs-check failure.
    """
    bindings: dict[str, Formula] = {}
    stack = [(f, g)]
    while stack:
        a, b = stack.pop()
        a = _walk(a, bindings)
        b = _walk(b, bindings)
        if a is b:
            continue
        if isinstance(a, Var) or isinstance(b, Var):
            if not isinstance(a, Var):
                a, b = b, a
            if isinstance(b, Var) and b.name == a.name:
                continue
            if _occurs(a.name, b, bindings):
                raise NotUnifiable(f"{a.name} occurs in {b}")
            bindings[a.name] = b
        else:
            stack.append((a.right, b.right))
            stack.append((a.left, b.left))
    return Substitution(_resolve(bindings))


def _split_name(name: str) -> tuple[str, int]:
    digits = name[1:]
    return name[0], int(digits) if digits else 0


def rename_apart(f: Formula, forbidden: Iterable[str]) -> Formula:
    """Alphabetical variant of ``f`` sharing no variable with ``forbidden``.

    Clashing variables, in first-occurrence order, keep their letter and get
    the smallest numeric suffix not already taken.  Returns ``f`` itself when
    nothing clashes.
    """
    forbidden = set(forbidden)
    order = list(dict.fromkeys(leaves(f)))
    if forbidden.isdisjoint(order):
        return f
    taken = forbidden | set(order)
    renaming: dict[str, Var] = {}
    for name in order:
        if name not in forbidden:
            continue
        letter, n = _split_name(name)
        n = max(n, 0) + 1
        while f"{letter}{n}" in taken:
            n += 1
        new = f"{letter}{n}"
        taken.add(new)
        renaming[name] = Var(new)
    return map_variables(f, lambda v: renaming.get(v.name, v))

