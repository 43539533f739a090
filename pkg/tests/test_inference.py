import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from eqcalc.catalog import enumerate_theses
from eqcalc.formula import (
    XCB,
    Var,
    canonical_string,
    parse_polish,
    print_folded,
    print_polish,
    variables,
)
from eqcalc.inference import (
    ChainFailed,
    Inapplicable,
    condensed_detach,
    reverse_condensed_detach,
    self_detach_chain,
)
from eqcalc.semantics import is_tautology
from eqcalc.unify import Substitution, apply_substitution, most_general_unifier, rename_apart

P = parse_polish
LINE2 = "EEEEaEEEabEcbcdEede"
LINE3 = "EEEEaEEEabEcbcdeEde"


def test_d_xcb_xcb():
    out = condensed_detach(XCB, XCB)
    assert print_polish(out.result) == LINE2
    assert print_folded(out.result) == "EEEAdEede"
    assert out.result.length == 19
    # the major instance has p replaced by an 11-symbol XCB copy, twice
    assert (out.major_instance_length, out.minor_instance_length) == (31, 11)


def test_d_line2_xcb_gives_line3():
    out = condensed_detach(P(LINE2), XCB)
    assert print_polish(out.result) == LINE3
    assert print_folded(out.result) == "EEEAdeEde"


def test_plain_detachment():
    out = condensed_detach(P("Epq"), P("p"))
    assert print_polish(out.result) == "a"


def test_reverse_examples():
    assert print_polish(reverse_condensed_detach(P("Epq"), P("q")).result) == "a"
    out = reverse_condensed_detach(P("EEpqEqp"), P("Eab"))
    assert print_polish(out.result) == "Eab"
    with pytest.raises(Inapplicable):
        reverse_condensed_detach(P("p"), XCB)


def test_bare_variable_major():
    with pytest.raises(Inapplicable):
        condensed_detach(P("p"), P("p"))


def test_self_detach_chain():
    assert [print_polish(f) for f in self_detach_chain(XCB, 2)] == [LINE2, LINE3]
    assert [print_polish(f) for f in self_detach_chain(P("Epp"), 1)] == ["Eaa"]
    with pytest.raises(ChainFailed) as info:
        self_detach_chain(P("p"), 1)
    assert info.value.step == 1


def test_self_detach_chain_stops_midway():
    # D(Epq, Epq) = q, a variable, which cannot serve as the next major
    with pytest.raises(ChainFailed) as info:
        self_detach_chain(P("Epq"), 3)
    assert info.value.step == 2
    assert [print_polish(f) for f in info.value.results] == ["a"]


def test_determinism():
    a = condensed_detach(P(LINE3), P(LINE2))
    b = condensed_detach(P(LINE3), P(LINE2))
    assert a == b
    assert print_polish(a.result) == print_polish(b.result)


SMALL_THESES = [
    f for n in (3, 7, 11) for f in enumerate_theses(n, all_theses=True)
]


@pytest.mark.parametrize("rule", [condensed_detach, reverse_condensed_detach])
def test_soundness_over_catalog_pairs(rule):
    rng = random.Random(7)
    small = [f for f in SMALL_THESES if f.length <= 7]
    pairs = list(itertools.product(small, repeat=2))
    pairs += [tuple(rng.sample(SMALL_THESES, 2)) for _ in range(1500)]
    derived = 0
    for major, minor in pairs:
        try:
            out = rule(major, minor)
        except Inapplicable:
            continue
        derived += 1
        assert is_tautology(out.result), (major, minor)
    assert derived > 300


@pytest.mark.parametrize("reverse", [False, True])
def test_agrees_with_naive_oracle(reverse):
    rule = reverse_condensed_detach if reverse else condensed_detach
    rng = random.Random(11)
    for _ in range(800):
        major, minor = rng.sample(SMALL_THESES, 2)
        want = oracles.detach(
            oracles.parse(print_polish(major)), oracles.parse(print_polish(minor)), reverse
        )
        try:
            got = canonical_string(rule(major, minor).result)
        except Inapplicable:
            assert want is None
            continue
        assert want is not None
        assert canonical_string(P(want.replace("x", "v"))) == got


def random_renaming(f, rng, pool):
    names = sorted(variables(f))
    fresh = rng.sample(pool, len(names))
    return apply_substitution(Substitution({n: Var(m) for n, m in zip(names, fresh)}), f)


@settings(max_examples=80)
@given(st.sampled_from(SMALL_THESES), st.sampled_from(SMALL_THESES), st.integers(0, 2**32))
def test_renaming_invariance(major, minor, seed):
    rng = random.Random(seed)
    pool = ["p", "q", "a", "b", "c", "z1", "a1", "x", "y", "w", "t", "s"]
    major2 = random_renaming(major, rng, pool)
    minor2 = random_renaming(minor, rng, pool)
    for rule in (condensed_detach, reverse_condensed_detach):
        try:
            base = rule(major, minor)
        except Inapplicable:
            with pytest.raises(Inapplicable):
                rule(major2, minor2)
            continue
        assert rule(major2, minor2) == base


def test_instance_length_consistency():
    rng = random.Random(5)
    pairs = [tuple(rng.sample(SMALL_THESES, 2)) for _ in range(600)]
    # a minor that is just the major's antecedent binds only to variables
    pairs += [(f, f.left) for f in SMALL_THESES[:80]]
    seen_equal = 0
    for major, minor in pairs:
        try:
            out = condensed_detach(major, minor)
        except Inapplicable:
            continue
        assert out.major_instance_length >= major.length
        assert out.minor_instance_length >= minor.length
        sigma = most_general_unifier(major.left, rename_apart(minor, variables(major)))
        only_variables = all(
            isinstance(sigma(Var(v)), Var) for v in variables(major)
        )
        assert (out.major_instance_length == major.length) == only_variables
        seen_equal += only_variables
    assert seen_equal > 0
