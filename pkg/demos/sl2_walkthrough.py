"""Build the sl(2) structure with tau = phi = e123, apply the Dirac operator and square it."""

from protodirac import build_dirac, builtin, characteristic, check_axioms, is_generating
from protodirac.exterior import MultiVec, basis_elements

P = builtin("sl2-proto")
print(check_axioms(P).render_text())
print()

D = build_dirac(P)
print("Dirac operator on the basis of the spin module:")
for v in basis_elements(MultiVec, P.n):
    print(f"  D({v}) = {D(v)}")
print()

f = characteristic(P)
print(f"modular elements: X0 = {P.modular.X0}, xi0 = {P.modular.xi0}")
print(f"characteristic function: {f}")
for v in basis_elements(MultiVec, P.n):
    assert D(D(v)) == v * f
print("D(D(v)) = f v on every basis element")
print()
print(is_generating(P).render_text())
