"""The Dirac generating operator on the spin module, its square and the characteristic function."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .courant import SplitSection, clifford, dmap, dorfman
from .exterior import MultiVec, contract, pairing, wedge
from .proto import (
    AxiomReport,
    InternalConsistencyError,
    ProtoData,
    probe_polys,
    probes,
    q_operators,
)
from .ring import Poly
from .spinor import SpinorMatrix, clifford_from_coeffs, dirac_matrix, operator_matrix

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class DiracComponent:
    label: str
    shift: int
    apply: Callable[[MultiVec], MultiVec]


@dataclass(frozen=True)
class DiracOperator:
    """Sum of six components, each raising or lowering the multivector degree by a fixed amount."""

    data: ProtoData
    components: tuple

    def __call__(self, v: MultiVec) -> MultiVec:
        out = MultiVec.zero(v.n, v.m)
        for c in self.components:
            out = out + c.apply(v)
        return out

    def component(self, label: str) -> DiracComponent:
        for c in self.components:
            if c.label == label:
                return c
        raise KeyError(label)


def build_dirac(P: ProtoData) -> DiracOperator:
    X0, xi0 = P.modular.X0, P.modular.xi0
    comps = (
        DiracComponent("d_*", 1, P.d_star),
        DiracComponent("-partial", -1, lambda v: -P.partial(v)),
        DiracComponent("X0/2", 1, lambda v: wedge(X0, v) * HALF),
        DiracComponent("i_xi0/2", -1, lambda v: contract(xi0, v) * HALF),
        DiracComponent("tau", 3, lambda v: wedge(P.tau, v)),
        DiracComponent("-i_phi", -3, lambda v: -contract(P.phi, v)),
    )
    return DiracOperator(P, comps)


def apply_dirac(D: DiracOperator, v: MultiVec) -> MultiVec:
    return D(v)


# characteristic function


def characteristic(P: ProtoData) -> Poly:
    """1/4 <xi0|X0> - 1/2 partial(X0) - <tau|phi>."""
    X0, xi0 = P.modular.X0, P.modular.xi0
    return (
        pairing(xi0, X0) * QUARTER
        - P.partial(X0).scalar_part() * HALF
        - P.tau_phi()
    )


def _top_coefficient(t, top: int) -> Poly:
    if any(k != top for k, _ in t.items()):
        raise InternalConsistencyError("Lie derivative of a top element left top degree")
    return t.coeff(top)


def characteristic_via_omega(P: ProtoData) -> Poly:
    """f from L_{X0}(Omega (x) s) = 4 (f + <tau|phi>) Omega (x) s."""
    X0 = P.modular.X0
    top = (1 << P.n) - 1
    coeff = _top_coefficient(P.S_A.lie_derivative(X0, P.T.Omega), top) + P.S_A.lie_volume(X0)
    return coeff * QUARTER - P.tau_phi()


def characteristic_via_v(P: ProtoData) -> Poly:
    """f from L_{xi0}(s (x) V) = 4 (f + <tau|phi>) s (x) V."""
    xi0 = P.modular.xi0
    top = (1 << P.n) - 1
    coeff = _top_coefficient(P.S_star.lie_derivative(xi0, P.T.V), top) + P.S_star.lie_volume(xi0)
    return coeff * QUARTER - P.tau_phi()


@dataclass
class CharacteristicReport:
    closed_form: Poly
    via_omega: Poly
    via_v: Poly
    matrix: Fraction | None = None

    @property
    def consistent(self) -> bool:
        ok = self.closed_form == self.via_omega == self.via_v
        if self.matrix is not None:
            ok = ok and self.closed_form == self.matrix
        return ok

    def to_dict(self) -> dict:
        return {
            "f": str(self.closed_form),
            "f_terms": self.closed_form.to_json(),
            "via_omega": str(self.via_omega),
            "via_v": str(self.via_v),
            "spinor_matrix": None if self.matrix is None else str(self.matrix),
            "consistent": self.consistent,
        }


def characteristic_report(P: ProtoData, with_matrix: bool = True) -> CharacteristicReport:
    rep = CharacteristicReport(characteristic(P), characteristic_via_omega(P), characteristic_via_v(P))
    if with_matrix and P.m == 0:
        sq = dirac_matrix(P) @ dirac_matrix(P)
        rep.matrix = sq.is_scalar()
    return rep


# the square


PIECE_AXIOM = {
    "deg+2": "axiom-2",
    "deg-2": "axiom-1",
    "deg+4": "axiom-5",
    "deg-4": "axiom-4",
    "deg0-operator": "axiom-3",
}


@dataclass
class SquareDecomposition:
    probe: MultiVec
    pieces: dict = field(default_factory=dict)

    def total(self) -> MultiVec:
        out = MultiVec.zero(self.probe.n, self.probe.m)
        for v in self.pieces.values():
            out = out + v
        return out

    def nonzero_operator_pieces(self) -> list:
        return [k for k, v in self.pieces.items() if k != "deg0-scalar" and not v.is_zero()]


def square_decomposition(P: ProtoData, v: MultiVec, D: DiracOperator | None = None) -> SquareDecomposition:
    D = D or build_dirac(P)
    X0, xi0 = P.modular.X0, P.modular.xi0
    S = P.S_A
    dec = SquareDecomposition(v)
    dec.pieces["deg+2"] = (
        P.d_star(P.d_star(v))
        + S.schouten(P.tau, v)
        + wedge(P.d_star(X0), v) * HALF
        + wedge(contract(xi0, P.tau), v) * HALF
        - wedge(P.partial(P.tau), v)
    )
    dec.pieces["deg-2"] = (
        -P.d_star(contract(P.phi, v))
        - contract(P.phi, P.d_star(v))
        + P.partial(P.partial(v))
        - contract(contract(X0, P.phi), v) * HALF
        - contract(P.d_A(xi0), v) * HALF
    )
    dec.pieces["deg+4"] = wedge(P.d_star(P.tau), v)
    dec.pieces["deg-4"] = contract(P.d_A(P.phi), v)
    dec.pieces["deg0-operator"] = (
        P.lie(X0, v) * HALF
        + P.lie(xi0, v) * HALF
        - P.laplacian(v)
        + q_operators(P, "Q1", v)
        + q_operators(P, "Q2", v)
    )
    dec.pieces["deg0-scalar"] = v * characteristic(P)
    if dec.total() != D(D(v)):
        raise InternalConsistencyError(f"graded pieces of the square do not add up on {v}")
    return dec


# generating conditions


def is_generating(P: ProtoData, probe_degree: int = 2) -> AxiomReport:
    """Conditions (a), (b), (c) for the Dirac operator, checked on finite probe sets."""
    if probe_degree not in (0, 1, 2):
        raise ValueError("probe_degree must be 0, 1 or 2")
    report = AxiomReport("Dirac generating operator")
    D = build_dirac(P)
    f = characteristic(P)
    low = probes(P, "A", min(probe_degree, 1))

    ra = report.add("condition-a", "[D, f] is the Clifford action of d_A f + d_* f")
    for a in range(1, P.m + 1):
        q = P.coord(a)
        target = dmap(P, q)
        for v in low:
            got = D(v * q) - D(v) * q
            ra.record((q, v), got - clifford(target, v))

    rb = report.add("condition-b", "[[D, c(e1)], c(e2)] is the Clifford action of e1 o e2")
    secs = [SplitSection.of(P.vec(i)) for i in range(1, P.n + 1)]
    secs += [SplitSection.of(P.form(i)) for i in range(1, P.n + 1)]
    for e1, e2 in itertools.product(secs, repeat=2):
        target = dorfman(P, e1, e2)

        def inner(w, e1=e1):
            return D(clifford(e1, w)) + clifford(e1, D(w))

        for v in low:
            got = inner(clifford(e2, v)) - clifford(e2, inner(v))
            rb.record((e1, e2, v), got - clifford(target, v))

    rc = report.add("condition-c", "D^2 is multiplication by the characteristic function")
    suspects = rc.description
    blamed = set()
    for v in probes(P, "A", probe_degree):
        residual = D(D(v)) - v * f
        rc.record((v,), residual)
        if not residual.is_zero() and len(blamed) < len(PIECE_AXIOM):
            dec = square_decomposition(P, v, D)
            blamed.update(PIECE_AXIOM[k] for k in dec.nonzero_operator_pieces())
    if blamed:
        rc.description = suspects + "; likely failing: " + ", ".join(sorted(blamed))
    return report


# rescaling


@dataclass
class RescaleResult:
    f: Poly
    f_rescaled: Poly

    @property
    def difference(self) -> Poly:
        return self.f_rescaled - self.f

    def to_dict(self) -> dict:
        return {"f": str(self.f), "f_rescaled": str(self.f_rescaled), "difference": str(self.difference)}


def rescale_invariance(P: ProtoData, u: Poly, w: Poly) -> RescaleResult:
    """Recompute f after rescaling the half-density data by g = exp(u), h = exp(w)."""
    X0, xi0 = P.modular.X0, P.modular.xi0
    X1 = X0 + P.S_star.d_function(u + w)
    xi1 = xi0 + P.S_A.d_function(u - w)
    dw = P.S_A.d_function(w)
    partial_X1 = P.partial(X1) - contract(dw, X1)
    f1 = pairing(xi1, X1) * QUARTER - partial_X1.scalar_part() * HALF - P.tau_phi()
    return RescaleResult(characteristic(P), f1)


# spinor matrices


def spinor_matrix(P: ProtoData, operator="dirac") -> SpinorMatrix:
    """Exact matrix of D, of a Clifford action (pass a SplitSection), or of any callable on multivectors."""
    if P.m:
        raise ValueError("spinor matrices need a point base (m = 0)")
    if isinstance(operator, str):
        if operator == "dirac":
            return operator_matrix(P.n, build_dirac(P))
        if operator == "dirac-oracle":
            return dirac_matrix(P)
        raise ValueError(f"unknown operator {operator!r}")
    if isinstance(operator, SplitSection):
        vec = {i: operator.vec.coeff((i,)).constant_value() for i in range(1, P.n + 1)}
        form = {i: operator.form.coeff((i,)).constant_value() for i in range(1, P.n + 1)}
        return clifford_from_coeffs(P.n, vec, form)
    return operator_matrix(P.n, operator)


def function_probes(P: ProtoData, degree: int = 2) -> list:
    return probe_polys(P.m, degree) if P.m else [Poly.one(0)]
