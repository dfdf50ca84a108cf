"""Top-degree dualities, the BV operators and their Laplacians."""

from __future__ import annotations

from dataclasses import dataclass

from .dull import DullStructure
from .exterior import Exterior, Form, MultiVec, contract, pairing


@dataclass(frozen=True)
class TopDuality:
    """A top form Omega and top multivector V with <Omega|V> = 1."""

    n: int
    m: int = 0
    Omega: Form | None = None
    V: MultiVec | None = None

    def __post_init__(self):
        if self.Omega is None:
            object.__setattr__(self, "Omega", Form.top(self.n, self.m))
        if self.V is None:
            object.__setattr__(self, "V", MultiVec.top(self.n, self.m))
        if self.Omega.degrees() != [self.n] or self.V.degrees() != [self.n]:
            raise ValueError("Omega and V must be of top degree")
        if pairing(self.Omega, self.V) != 1:
            raise ValueError("<Omega|V> must equal 1")


def default_duality(n: int, m: int = 0) -> TopDuality:
    return TopDuality(n, m)


def omega_sharp(T: TopDuality, r: MultiVec) -> Form:
    """r -> i_r Omega."""
    return contract(r, T.Omega)


def v_sharp(T: TopDuality, w: Form) -> MultiVec:
    """w -> i_w V."""
    return contract(w, T.V)


def _sign(e: int) -> int:
    return -1 if e & 1 else 1


def bv_partial(S_A: DullStructure, T: TopDuality, r: MultiVec) -> MultiVec:
    """The BV operator on multivectors, applied degree by degree.

    On degree k it is -(-1)^(n(k+1)) times V-sharp . d_A . Omega-sharp.
    """
    if S_A.side != "A":
        raise ValueError("bv_partial needs the structure on A")
    n = T.n
    out = MultiVec.zero(n, r.m)
    for k in r.degrees():
        if k == 0:
            continue
        piece = v_sharp(T, S_A.differential(omega_sharp(T, r.part(k))))
        out = out + piece * (-_sign(n * (k + 1)))
    return out


def bv_partial_star(S_star: DullStructure, T: TopDuality, w: Form) -> Form:
    """The BV operator on forms, defined by d_* V-sharp w = (-1)^k V-sharp dstar-partial w.

    V-sharp is inverted on the image of degree k-1 via
    Omega-sharp . V-sharp = (-1)^((k-1)(n-1)).
    """
    if S_star.side != "A*":
        raise ValueError("bv_partial_star needs the structure on A*")
    n = T.n
    out = Form.zero(n, w.m)
    for k in w.degrees():
        if k == 0:
            continue
        image = S_star.differential(v_sharp(T, w.part(k)))
        piece = omega_sharp(T, image)
        out = out + piece * (_sign(k) * _sign((k - 1) * (n - 1)))
    return out


def laplacian(S_A: DullStructure, S_star: DullStructure, T: TopDuality, r: MultiVec) -> MultiVec:
    """d_* . partial + partial . d_* on multivectors."""
    return S_star.differential(bv_partial(S_A, T, r)) + bv_partial(S_A, T, S_star.differential(r))


def laplacian_star(S_A: DullStructure, S_star: DullStructure, T: TopDuality, w: Form) -> Form:
    """d_A . dstar-partial + dstar-partial . d_A on forms."""
    return S_A.differential(bv_partial_star(S_star, T, w)) + bv_partial_star(S_star, T, S_A.differential(w))
