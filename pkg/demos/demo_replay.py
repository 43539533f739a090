"""
Replaying the 26-step XCB proof
===============================

The embedded trace starts from XCB and reaches the transitivity and
symmetry laws, which together axiomatize equivalence. Every step is
recomputed; nothing is taken on trust.

"""

from eqcalc import paper_fixture, replay

report = replay(paper_fixture())

for rec in report:
    parents = "" if rec.rule == "axiom" else f"{rec.rule}{rec.major}.{rec.minor}"
    print(f"{rec.id:3} {parents:7} {rec.length:4}  {rec.folded}")

###############################################################################
# Step 17 is where the unifier gets large: both premisses blow up to
# thousands of symbols before detachment trims the result.
r17 = report[17]
print("step 17 instances:", r17.major_instance_length, r17.minor_instance_length)

# Line 19 is an eleven-symbol thesis in its own right.
print("step 19:", report[19].canonical, report[19].length)
print("all tautologies:", report.all_tautologies)
