"""Acceptance criteria, one test each.

Every test records a PASS or FAIL line; the lines are repeated in the
terminal summary.
"""

import io
import itertools
import random
import time
from contextlib import redirect_stdout
from pathlib import Path

import oracles
from eqcalc.catalog import _keys, enumerate_theses, known_axioms, restricted_growth_strings, tree_shapes
from eqcalc.cli import main
from eqcalc.formula import (
    XCB,
    canonical_name,
    canonical_string,
    is_variant,
    parse_polish,
    print_polish,
    variables,
)
from eqcalc.proofs import (
    paper_fixture,
    parse_trace,
    reconstruct_reverse_detachment,
    replay,
)
from eqcalc.search import (
    CandidateStatus,
    SearchLimits,
    check_single_axiom_candidate,
    saturate,
)
from eqcalc.semantics import even_occurrence_predicate, is_tautology
from eqcalc.unify import NotUnifiable, most_general_unifier

P = parse_polish
DATA = Path(__file__).parent / "data"


def test_01_paper_replay(criterion):
    with criterion(1, "replay --paper reaches EEpqEEqrEpr at 23 and EEpqEqp at 26"):
        start = time.perf_counter()
        buf = io.StringIO()
        with redirect_stdout(buf):
            code = main(["replay", "--paper"])
        took = time.perf_counter() - start
        assert code == 0
        rows = [line.split("\t") for line in buf.getvalue().splitlines()]
        assert len(rows) == 26
        assert rows[22][3] == canonical_string(P("EEpqEEqrEpr"))
        assert rows[25][3] == canonical_string(P("EEpqEqp"))
        assert took < 1.0


def test_02_instance_lengths(criterion):
    with criterion(2, "step 17 (D12.16) instances are 2939 and 2919 symbols"):
        rec = replay(paper_fixture())[17]
        assert (rec.major, rec.minor) == (12, 16)
        assert rec.major_instance_length == 2939
        assert rec.minor_instance_length == 2919


def test_03_census(criterion):
    with criterion(3, "630 theses of length 11 from 42 shapes x 203 partitions"):
        enumerate_theses.cache_clear()
        _keys.cache_clear()
        start = time.perf_counter()
        ts = enumerate_theses(11)
        took = time.perf_counter() - start
        assert len(ts) == 630
        assert ts.shapes_visited == 42
        assert ts.partitions_per_shape == 203
        assert len({canonical_string(f) for f in ts}) == 630
        assert took < 5.0


def test_04_axiom_registry(criterion):
    with criterion(4, "14 shortest single axioms, all theses in the census"):
        entries = known_axioms()
        assert len(entries) == 14
        census = enumerate_theses(11)
        for e in entries:
            assert e.formula.length == 11
            assert is_tautology(e.formula)
            assert e.formula in census
        for a, b in itertools.combinations(entries, 2):
            assert not is_variant(a.formula, b.formula), (a.name, b.name)
        assert any(is_variant(e.formula, XCB) for e in entries)
        assert print_polish(entries[-1].formula) == "EpEEEpqErqr"


def test_05_cxm(criterion):
    with criterion(5, "step 19 has 11 symbols and is in the census"):
        line19 = replay(paper_fixture())[19].formula
        assert line19.length == 11
        assert line19 in enumerate_theses(11)


def test_06_soundness(criterion):
    with criterion(6, "replay and search results are tautologies; parity agrees to 13 symbols"):
        start = time.perf_counter()
        assert replay(paper_fixture()).all_tautologies
        run = saturate([XCB], SearchLimits(max_symbol_length=31, max_steps=60))
        assert len(run.kb) > 100
        assert all(is_tautology(e.formula) for e in run.kb)
        checked = 0
        for n_leaves in range(1, 8):
            for shape in tree_shapes(n_leaves):
                pieces = shape.split(".")
                for rgs in restricted_growth_strings(n_leaves):
                    text = pieces[0] + "".join(
                        canonical_name(v) + rest for v, rest in zip(rgs, pieces[1:])
                    )
                    f = P(text)
                    assert is_tautology(f) == even_occurrence_predicate(f), text
                    checked += 1
        # sum of Catalan(n - 1) * Bell(n) for n = 1..7
        assert checked == 125_106
        assert time.perf_counter() - start < 30.0


def random_formula(rng, leaves, names):
    if leaves == 1:
        return rng.choice(names)
    k = rng.randint(1, leaves - 1)
    return "E" + random_formula(rng, k, names) + random_formula(rng, leaves - k, names)


def subterms(t, acc):
    acc.add(oracles.show(t))
    if not isinstance(t, str):
        subterms(t[1], acc)
        subterms(t[2], acc)
    return acc


def brute_force_unifiers(a, b, extra):
    """Every map from the variables to a finite pool of terms that unifies a and b."""
    vs = oracles.term_vars(a)
    vs += [v for v in oracles.term_vars(b) if v not in vs]
    pool = set()
    for t in (a, b, *extra):
        subterms(t, pool)
    pool = [oracles.parse(x) for x in sorted(pool)]
    for images in itertools.product(pool, repeat=len(vs)):
        tau = dict(zip(vs, images))
        if oracles.subst(tau, a) == oracles.subst(tau, b):
            yield tau


def test_07_unification_laws(criterion):
    with criterion(7, "mgu idempotent, unifying and most general on 1000 random pairs"):
        rng = random.Random(2024)
        unified = general_checked = 0
        for _ in range(1000):
            a = random_formula(rng, rng.randint(1, 8), ["p", "q", "r", "s"])
            b = random_formula(rng, rng.randint(1, 8), ["p", "q", "r", "s"])
            f, g = P(a), P(b)
            assert f.length <= 15 and g.length <= 15
            want = oracles.unify(oracles.parse(a), oracles.parse(b))
            try:
                s = most_general_unifier(f, g)
            except NotUnifiable:
                assert want is None, (a, b)
                continue
            assert want is not None, (a, b)
            unified += 1
            common = s(f)
            assert common == s(g)
            assert s(common) == common
            for img in s.values():
                assert variables(img).isdisjoint(s)
            if f.length <= 9 and g.length <= 9:
                general = oracles.parse(print_polish(common))
                # the pool holds the unified term's subterms, so the mgu's own
                # image is among the enumerated unifiers
                for tau in brute_force_unifiers(
                    oracles.parse(a), oracles.parse(b), [general, ("E", "p", "p")]
                ):
                    inst = oracles.subst(tau, oracles.parse(a))
                    assert oracles.match(general, inst) is not None, (a, b, tau)
                    general_checked += 1
        assert unified > 150
        assert general_checked > 1000


def load_pairs():
    text = (DATA / "rd_pairs.txt").read_text()
    for block in text.split("## pair ")[1:]:
        name, rest = block.split("\n", 1)
        imp, con = rest.split("## consequent\n")
        yield P(name.strip()), parse_trace(imp), parse_trace(con)


def test_08_reverse_detachment(criterion):
    with criterion(8, "reverse detachment rebuilt from D alone on 8 pairs"):
        done = 0
        for f, imp, con in load_pairs():
            rec = reconstruct_reverse_detachment(imp, con)
            assert rec.trace.rules_used() == {"axiom", "D"}
            report = replay(rec.trace)
            assert report.final.canonical == canonical_string(f.left)
            done += 1
        assert done >= 3


def test_09_hinted_search(criterion):
    with criterion(9, "hinted search confirms XCB and its traces replay to the basis"):
        start = time.perf_counter()
        hints = tuple(r.formula for r in replay(paper_fixture()))
        assert len(hints) == 26
        report = check_single_axiom_candidate(XCB, SearchLimits(hints=hints))
        assert report.status is CandidateStatus.CONFIRMED
        finals = sorted(replay(t).final.canonical for t in report.traces.values())
        assert finals == sorted(
            canonical_string(P(g)) for g in ("EEpqEEqrEpr", "EEpqEqp")
        )
        assert time.perf_counter() - start < 60.0


def test_10_degenerate_candidates(criterion):
    with criterion(10, "Epp and EEpqEqp stay Inconclusive; closure of Epp is itself"):
        for text in ("Epp", "EEpqEqp"):
            report = check_single_axiom_candidate(P(text))
            assert report.status is CandidateStatus.INCONCLUSIVE
        closure = saturate([P("Epp")], SearchLimits())
        assert closure.closure_complete
        assert [e.key for e in closure.kb] == ["Eaa"]
