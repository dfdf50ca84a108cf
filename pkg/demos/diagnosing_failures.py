"""Break the sl(2) structure one constant at a time and see which checks notice."""

import random

from protodirac import builtin, check_axioms, is_generating, square_decomposition
from protodirac.catalog import perturb, sl2_proto
from protodirac.exterior import MultiVec

P = sl2_proto(tau_bar=2)
print("tau scaled by 2:")
print(check_axioms(P).render_text())
print(is_generating(P).render_text())
dec = square_decomposition(P, MultiVec.basis(3, 0, 1))
for label, piece in dec.pieces.items():
    print(f"  square piece {label:<14} on e1: {piece}")
print()

rng = random.Random(1)
base = builtin("sl2-proto")
for _ in range(6):
    Q, desc = perturb(base, rng)
    axioms, gen = check_axioms(Q), is_generating(Q)
    print(f"{desc:<40} axioms fail: {','.join(axioms.failing()) or '-':<24} generating: {gen.passed}")
