#!/usr/bin/env python3
"""Walk one duality instance end to end and print every certificate.

The pair f(x) = |x| and g(x) = -|x - 1| meets all qualification conditions,
so the verifier must close the gap exactly: inf(f - g) = sup(g_* - f*) = 1,
with the dual optimum at y = 1.
"""

from relintlab import (
    HPolyhedron,
    PLConcaveFunction,
    PLConvexFunction,
    conjugate,
    concave_conjugate,
    evaluate,
    extract_dual_certificate,
    rat,
    vec,
    verify_fenchel_rockafellar,
)
from relintlab.jsonio import canonical_dumps, duality_report_to_json

line = HPolyhedron(dim=1)
f = PLConvexFunction(dim=1, pieces=((vec(["1"]), rat(0)),
                                    (vec(["-1"]), rat(0))), domain=line)
g = PLConcaveFunction(dim=1, pieces=((vec(["1"]), rat(-1)),
                                     (vec(["-1"]), rat(1))), domain=line)

report = verify_fenchel_rockafellar(f, g)
print(canonical_dumps(duality_report_to_json(report)))

ystar = extract_dual_certificate(f, g)
fstar = conjugate(f)
gstar = concave_conjugate(g)
margin = evaluate(gstar, ystar) - evaluate(fstar, ystar)
print(f"dual certificate y* = {ystar[0]}")
print(f"g_*(y*) - f*(y*) = {margin}")
assert margin == report.primal_value == report.dual_value
