"""
Saturation search with and without hints
========================================

The given-clause loop keeps one copy of each formula up to renaming and
combines every selected formula with everything processed so far. Hints
push known proof lines to the front of the queue.

"""

import time

from eqcalc import (
    XCB,
    SearchLimits,
    check_single_axiom_candidate,
    extract_trace,
    format_trace,
    paper_fixture,
    parse_polish,
    replay,
    saturate,
)

# From the basis pair, Epp turns up after a handful of steps.
basis = [parse_polish("EEpqEEqrEpr"), parse_polish("EEpqEqp")]
out = saturate(basis, SearchLimits(max_symbol_length=11), [parse_polish("Epp")])
print(out.status.value, out.stats.as_dict())
print(format_trace(extract_trace(out.kb, parse_polish("Epp"))))

###############################################################################
# Unhinted, the default 23-symbol cap strangles XCB: its closure under the
# cap is six formulas, since every later proof line needs a longer parent.
out = saturate([XCB], SearchLimits(), basis)
print(out.status.value, out.limit, out.stats.as_dict())

# With the 26 proof lines as hints the same search confirms XCB.
hints = tuple(r.formula for r in replay(paper_fixture()))
t0 = time.perf_counter()
report = check_single_axiom_candidate(XCB, SearchLimits(hints=hints))
print(report.status.value, f"{time.perf_counter() - t0:.2f} s")
for goal, trace in report.traces.items():
    print(goal, len(trace), "steps, replays to", replay(trace).final.canonical)

# Epp derives only itself, so no bound can confirm it.
print(check_single_axiom_candidate(parse_polish("Epp")).status.value)
