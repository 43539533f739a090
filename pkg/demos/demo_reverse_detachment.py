"""
Reverse detachment without the R rule
=====================================

From ``Eab`` and ``b`` reverse detachment infers ``a``. When both
premisses come with D-only proofs from XCB, a short D-only bridge through
Epp reaches ``a`` as well, so the extra rule adds nothing.

"""

from pathlib import Path

from eqcalc import parse_trace, reconstruct_reverse_detachment, replay

# Frozen proofs of an implication and its consequent, from the test data.
data = Path(__file__).resolve().parent.parent / "tests" / "data" / "rd_pairs.txt"
block = data.read_text().split("## pair ")[1]
name, rest = block.split("\n", 1)
imp, con = (parse_trace(t) for t in rest.split("## consequent\n"))
print("implication", name.strip())
print("consequent ", replay(con).final.canonical)

rec = reconstruct_reverse_detachment(imp, con)
report = replay(rec.trace)
print("middle step uses", rec.middle)
for stage, step in rec.stages.items():
    print(f"  {stage:20} step {step:3}  {report[step].canonical}")
print("ends at", report.final.canonical, "using rules", sorted(rec.trace.rules_used()))
