"""Two-valued semantics of pure-E formulas.

Truth tables are evaluated column-wise: each variable's column over all
2**k assignments is packed into one Python int, so a whole table costs a
single pass over the formula.
"""

from __future__ import annotations

from collections.abc import Mapping

from .formula import Formula, Var, occurrence_counts, variables

__all__ = [
    "MissingVariable",
    "evaluate",
    "truth_table",
    "is_tautology",
    "even_occurrence_predicate",
]

# Assignments per chunk when k is large; 2**16 bits per column.
_CHUNK_BITS = 16


class MissingVariable(KeyError):
    pass


def _postorder(f: Formula):
    stack = [(f, False)]
    while stack:
        node, expanded = stack.pop()
        if isinstance(node, Var) or expanded:
            yield node
        else:
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))


def _fold(f: Formula, leaf, mask: int) -> int:
    values: list[int] = []
    for node in _postorder(f):
        if isinstance(node, Var):
            values.append(leaf(node.name))
        else:
            right = values.pop()
            left = values.pop()
            values.append(~(left ^ right) & mask)
    return values[0]


def evaluate(f: Formula, assignment: Mapping[str, bool]) -> bool:
    def leaf(name):
        try:
            return 1 if assignment[name] else 0
        except KeyError:
            raise MissingVariable(name) from None

    return bool(_fold(f, leaf, 1))


def _columns(names: list[str]) -> dict[str, int]:
    # Assignment number i (binary counting, first name most significant) gives
    # names[j] the value of bit k-1-j of i; bit i of a column is assignment i.
    k = len(names)
    total = 1 << k
    cols = {}
    for j, name in enumerate(names):
        run = 1 << (k - 1 - j)
        col = ((1 << run) - 1) << run
        size = 2 * run
        while size < total:
            col |= col << size
            size *= 2
        cols[name] = col
    return cols


def truth_table(f: Formula) -> list[bool]:
    """Value of ``f`` under each assignment, variables sorted by name,
    assignments in binary counting order (all-false first)."""
    names = sorted(variables(f))
    k = len(names)
    if k > 20:
        raise ValueError(f"refusing to list 2**{k} rows")
    cols = _columns(names)
    col = _fold(f, cols.__getitem__, (1 << (1 << k)) - 1)
    return [bool((col >> i) & 1) for i in range(1 << k)]


def is_tautology(f: Formula) -> bool:
    names = sorted(variables(f))
    k = len(names)
    width = min(k, _CHUNK_BITS)
    mask = (1 << (1 << width)) - 1
    # Low `width` variables vary inside a chunk; high ones are fixed per chunk.
    inner = _columns(names[k - width:])
    for high in range(1 << (k - width)):
        cols = dict(inner)
        for j, name in enumerate(names[: k - width]):
            bit = (high >> (k - width - 1 - j)) & 1
            cols[name] = mask if bit else 0
        if _fold(f, cols.__getitem__, mask) != mask:
            return False
    return True


def even_occurrence_predicate(f: Formula) -> bool:
    """Every variable occurs an even number of times.

    For pure equivalence this characterises the tautologies; it is kept as an
    independent cross-check on :func:`is_tautology`.
    """
    return all(c % 2 == 0 for c in occurrence_counts(f).values())
