"""The characteristic function of euclidean-demo does not depend on the choice of half densities."""

import itertools

from protodirac import builtin, rescale_invariance
from protodirac.ring import parse_poly

P = builtin("euclidean-demo")
print(f"{P.name}: rank {P.n} over a {P.m}-dimensional base")
print(f"X0 = {P.modular.X0}, xi0 = {P.modular.xi0}")
choices = ["0", "q1", "2*q2", "q1*q2", "q1^2 - 3*q2"]
for u, w in itertools.product(choices, repeat=2):
    res = rescale_invariance(P, parse_poly(u, P.m), parse_poly(w, P.m))
    print(f"  u = {u:<12} w = {w:<12} f = {res.f}   rescaled = {res.f_rescaled}   difference = {res.difference}")
