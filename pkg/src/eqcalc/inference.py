"""Condensed detachment (D) and reverse condensed detachment (R)."""

from __future__ import annotations

from dataclasses import dataclass

from .formula import Equiv, Formula, canonical_form, variables
from .unify import NotUnifiable, instance_length, most_general_unifier, rename_apart

__all__ = [
    "DetachmentOutcome",
    "Inapplicable",
    "condensed_detach",
    "reverse_condensed_detach",
    "self_detach_chain",
    "ChainFailed",
]


class Inapplicable(Exception):
    """The requested detachment does not exist."""


class ChainFailed(Inapplicable):
    def __init__(self, step: int, results: list[Formula], cause: Exception):
        super().__init__(f"self-detachment failed at step {step}: {cause}")
        self.step = step
        self.results = results


@dataclass(frozen=True)
class DetachmentOutcome:
    """Canonical result plus the sizes of the two unified premiss instances."""

    result: Formula
    major_instance_length: int
    minor_instance_length: int


def _detach(major: Formula, minor: Formula, *, reverse: bool) -> DetachmentOutcome:
    if not isinstance(major, Equiv):
        raise Inapplicable(f"major premiss {major} has no antecedent")
    minor = rename_apart(minor, variables(major))
    matched, kept = (major.right, major.left) if reverse else (major.left, major.right)
    try:
        sigma = most_general_unifier(matched, minor)
    except NotUnifiable as exc:
        raise Inapplicable(str(exc)) from exc
    result = canonical_form(sigma(kept))
    return DetachmentOutcome(
        result, instance_length(sigma, major), instance_length(sigma, minor)
    )


def condensed_detach(major: Formula, minor: Formula) -> DetachmentOutcome:
    """Most general result of detaching ``minor`` from ``major``.

    The minor premiss is renamed apart from the major, unified with the
    major's antecedent, and the matching instance of the consequent is
    returned in canonical form.
    """
    return _detach(major, minor, reverse=False)


def reverse_condensed_detach(major: Formula, minor: Formula) -> DetachmentOutcome:
    """From ``E alpha beta`` and (an instance of) ``beta``, infer ``alpha``."""
    return _detach(major, minor, reverse=True)


def self_detach_chain(f: Formula, n: int) -> list[Formula]:
    """``[D f.f, D (Df.f).f, ...]``, ``n`` results long.

    Raises :class:`ChainFailed` carrying the 1-based failing step and the
    results obtained before it.
    """
    if n < 1:
        raise ValueError("n must be positive")
    out: list[Formula] = []
    current = f
    for step in range(1, n + 1):
        try:
            current = condensed_detach(current, f).result
        except Inapplicable as exc:
            raise ChainFailed(step, out, exc) from exc
        out.append(current)
    return out
