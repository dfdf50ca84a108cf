"""Random rank-3 solutions read off from twisted splittings of known doubles.

For each sample the characteristic function is computed three ways: from the
modular elements, from the Lie derivative of the top form, and from the
bialgebra closed form.  The Jacobiator of the first bracket is also printed:
it need not vanish, and equals phibar times X0.
"""

import random
import sys

from protodirac.catalog import bialgebra_closed_form, rank3_constraints, random_3d_solution
from protodirac.dirac import characteristic, characteristic_via_omega, is_generating
from protodirac.exterior import MultiVec
from protodirac.proto import check_axioms

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
rng = random.Random(seed)
e = [MultiVec.basis(3, 0, i) for i in (1, 2, 3)]

for trial in range(8):
    P = random_3d_solution(rng)
    b = P.S_A.bracket_sections
    jac = b(b(e[0], e[1]), e[2]) + b(b(e[1], e[2]), e[0]) + b(b(e[2], e[0]), e[1])
    f = characteristic(P)
    print(f"[{trial}] {P.name}")
    print(f"    constraints zero: {all(c == 0 for c in rank3_constraints(P))}"
          f"   axioms: {check_axioms(P).passed}   generating: {is_generating(P).passed}")
    print(f"    f = {f}   via top form = {characteristic_via_omega(P)}   closed form = {bialgebra_closed_form(P)}")
    print(f"    X0 = {P.modular.X0}   Jacobiator = {jac}")
