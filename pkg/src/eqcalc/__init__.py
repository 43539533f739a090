"""Condensed detachment toolkit for the classical equivalential calculus."""

from .catalog import enumerate_theses, known_axioms, thesis_membership
from .formula import (
    XCB,
    Equiv,
    Formula,
    Var,
    canonical_form,
    canonical_string,
    is_variant,
    occurrence_counts,
    parse_polish,
    print_folded,
    print_polish,
    symbol_length,
    variables,
)
from .inference import (
    DetachmentOutcome,
    Inapplicable,
    condensed_detach,
    reverse_condensed_detach,
    self_detach_chain,
)
from .proofs import (
    ProofTrace,
    ReplayReport,
    epp_fixture,
    format_trace,
    paper_fixture,
    parse_trace,
    reconstruct_reverse_detachment,
    replay,
)
from .search import (
    SearchLimits,
    SearchStatus,
    check_single_axiom_candidate,
    extract_trace,
    saturate,
)
from .semantics import even_occurrence_predicate, evaluate, is_tautology
from .unify import (
    NotUnifiable,
    Substitution,
    apply_substitution,
    compose,
    most_general_unifier,
    rename_apart,
)

__version__ = "0.1.0"
