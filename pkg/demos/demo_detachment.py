"""
Condensed detachment by hand
============================

Condensed detachment fuses substitution with modus ponens. Given a major
premiss ``Eab`` and a minor premiss ``c``, rename the minor apart, find the
most general unifier of ``a`` and ``c``, and conclude the matching instance
of ``b``.

"""

from eqcalc import (
    XCB,
    condensed_detach,
    most_general_unifier,
    parse_polish,
    print_folded,
    print_polish,
    rename_apart,
    variables,
)

# XCB against itself. The antecedent is the single variable p.
minor = rename_apart(XCB, variables(XCB))
print("major      ", print_polish(XCB))
print("minor      ", print_polish(minor))

sigma = most_general_unifier(XCB.left, minor)
for name, image in sorted(sigma.items()):
    print(f"  {name} := {print_polish(image)}")

# The packaged rule does the same and reports how big the unified
# premisses were before the antecedent was cut away.
out = condensed_detach(XCB, XCB)
print("D1.1       ", print_polish(out.result))
print("folded     ", print_folded(out.result))
print("instances  ", out.major_instance_length, out.minor_instance_length)

###############################################################################
# Detaching again gives the next self-detachment. Folding replaces private
# XCB copies by capital letters so the shape stays readable.
line3 = condensed_detach(out.result, XCB).result
print("D2.1       ", print_folded(line3))

# Not every pair detaches: a variable major has no antecedent at all.
try:
    condensed_detach(parse_polish("p"), XCB)
except Exception as exc:
    print("inapplicable:", exc)
