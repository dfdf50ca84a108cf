"""Split Courant algebroid on A + A*: metric, Dorfman bracket, anchor and axioms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exterior import Exterior, Form, MultiVec, contract, wedge
from .proto import AxiomReport, ProtoData, probes
from .ring import Poly, pdiff

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class SplitSection:
    """x + xi with x a degree-1 multivector and xi a degree-1 form (either may be zero)."""

    vec: MultiVec
    form: Form

    def __post_init__(self):
        if not isinstance(self.vec, MultiVec) or not isinstance(self.form, Form):
            raise TypeError("SplitSection needs a MultiVec and a Form")
        if (self.vec.n, self.vec.m) != (self.form.n, self.form.m):
            raise ValueError("vector and form parts have different shapes")
        for part in (self.vec, self.form):
            if any(d != 1 for d in part.degrees()):
                raise ValueError("split sections have degree-1 parts only")

    @classmethod
    def zero(cls, n: int, m: int = 0) -> "SplitSection":
        return cls(MultiVec.zero(n, m), Form.zero(n, m))

    @classmethod
    def of(cls, part: Exterior) -> "SplitSection":
        if isinstance(part, MultiVec):
            return cls(part, Form.zero(part.n, part.m))
        return cls(MultiVec.zero(part.n, part.m), part)

    @property
    def n(self) -> int:
        return self.vec.n

    @property
    def m(self) -> int:
        return self.vec.m

    def __add__(self, other: "SplitSection") -> "SplitSection":
        return SplitSection(self.vec + other.vec, self.form + other.form)

    def __neg__(self) -> "SplitSection":
        return SplitSection(-self.vec, -self.form)

    def __sub__(self, other: "SplitSection") -> "SplitSection":
        return self + (-other)

    def __mul__(self, f) -> "SplitSection":
        return SplitSection(self.vec * f, self.form * f)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.vec.is_zero() and self.form.is_zero()

    def __str__(self):
        if self.vec.is_zero():
            return str(self.form)
        if self.form.is_zero():
            return str(self.vec)
        return f"{self.vec} + {self.form}".replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"vec": self.vec.to_json(), "form": self.form.to_json()}


def _section(P: ProtoData, s) -> SplitSection:
    return s if isinstance(s, SplitSection) else SplitSection.of(s)


def metric(s1: SplitSection, s2: SplitSection) -> Poly:
    """The standard pseudo-metric: half of xi(y) + eta(x)."""
    return (contract(s1.form, s2.vec).scalar_part() + contract(s2.form, s1.vec).scalar_part()) * HALF


def clifford(s: SplitSection, v: MultiVec) -> MultiVec:
    """Clifford action on the spin module: v -> x ^ v + i_xi v."""
    return wedge(s.vec, v) + contract(s.form, v)


def dorfman(P: ProtoData, s1, s2) -> SplitSection:
    s1, s2 = _section(P, s1), _section(P, s2)
    x, xi, y, eta = s1.vec, s1.form, s2.vec, s2.form
    vec = (
        P.S_A.bracket_sections(x, y)
        + P.lie(xi, y)
        - contract(eta, P.d_star(x))
        - contract(eta, contract(xi, P.tau))
    )
    form = (
        P.S_star.bracket_sections(xi, eta)
        + P.lie(x, eta)
        - contract(y, P.d_A(xi))
        - contract(y, contract(x, P.phi))
    )
    return SplitSection(vec, form)


def anchor_field(P: ProtoData, s: SplitSection) -> list:
    """Components of rho(s) as a vector field on the base."""
    a = P.S_A.vector_field(s.vec)
    b = P.S_star.vector_field(s.form)
    return [p + q for p, q in zip(a, b)]


def anchor_rho(P: ProtoData, s, f: Poly) -> Poly:
    s = _section(P, s)
    return P.S_A.anchor_apply(s.vec, f) + P.S_star.anchor_apply(s.form, f)


def _apply_field(field: list, f: Poly) -> Poly:
    total = Poly.zero(f.num_vars)
    for a, comp in enumerate(field, start=1):
        if comp:
            total = total + comp * pdiff(f, a)
    return total


def field_bracket(X: list, Y: list) -> list:
    return [_apply_field(X, y) - _apply_field(Y, x) for x, y in zip(X, Y)]


def dmap(P: ProtoData, f: Poly) -> SplitSection:
    """D f = d_* f + d_A f, so that <D f, e> = rho(e)(f) / 2."""
    return SplitSection(P.S_star.d_function(f), P.S_A.d_function(f))


def basis_sections(P: ProtoData, with_multiples: bool = True) -> list:
    base = [SplitSection.of(P.vec(i)) for i in range(1, P.n + 1)]
    base += [SplitSection.of(P.form(i)) for i in range(1, P.n + 1)]
    if with_multiples and P.m:
        base += [s * P.coord(a) for a in range(1, P.m + 1) for s in base[: 2 * P.n]]
    return base


def check_courant(P: ProtoData) -> AxiomReport:
    report = AxiomReport("Courant algebroid axioms")
    secs = basis_sections(P)
    bracket = {}

    def circ(a, b):
        key = (id(a), id(b))
        if key not in bracket:
            bracket[key] = dorfman(P, a, b)
        return bracket[key]

    r1 = report.add("courant-1", "e1 o (e2 o e3) = (e1 o e2) o e3 + e2 o (e1 o e3)")
    for e1, e2, e3 in itertools.product(secs, repeat=3):
        lhs = dorfman(P, e1, circ(e2, e3))
        rhs = dorfman(P, circ(e1, e2), e3) + dorfman(P, e2, circ(e1, e3))
        r1.record((e1, e2, e3), _pair(lhs - rhs))

    r2 = report.add("courant-2", "rho(e1 o e2) = [rho(e1), rho(e2)]")
    for e1, e2 in itertools.product(secs, repeat=2):
        lhs = anchor_field(P, circ(e1, e2))
        rhs = field_bracket(anchor_field(P, e1), anchor_field(P, e2))
        r2.record((e1, e2), tuple(l - r for l, r in zip(lhs, rhs)))

    r3 = report.add("courant-3", "e1 o (f e2) = f (e1 o e2) + rho(e1)(f) e2")
    for e1, e2 in itertools.product(secs, repeat=2):
        for a in range(1, P.m + 1):
            f = P.coord(a)
            lhs = dorfman(P, e1, e2 * f)
            rhs = circ(e1, e2) * f + e2 * anchor_rho(P, e1, f)
            r3.record((e1, e2, f), _pair(lhs - rhs))

    r4 = report.add("courant-4", "e1 o e2 + e2 o e1 = 2 D<e1, e2> (polarized e o e = D<e, e>)")
    for e1, e2 in itertools.combinations_with_replacement(secs, 2):
        lhs = circ(e1, e2) + circ(e2, e1)
        r4.record((e1, e2), _pair(lhs - dmap(P, metric(e1, e2)) * 2))

    r5 = report.add("courant-5", "rho(e)<h1, h2> = <e o h1, h2> + <h1, e o h2>")
    for e, h1, h2 in itertools.product(secs, repeat=3):
        lhs = anchor_rho(P, e, metric(h1, h2))
        rhs = metric(circ(e, h1), h2) + metric(h1, circ(e, h2))
        r5.record((e, h1, h2), lhs - rhs)
    return report


def _pair(s: SplitSection) -> tuple:
    return (s.vec, s.form)


def derived_bracket_check(P: ProtoData, probe_degree: int = 2) -> AxiomReport:
    """Compare [[D, c(e1)], c(e2)] with c(e1 o e2), and [[D, f], c(e)] with rho(e)(f)."""
    from .dirac import build_dirac
    from .spinor import graded_commutator, operator_matrix

    report = AxiomReport("derived brackets")
    D = build_dirac(P)
    secs = basis_sections(P)
    r = report.add("dorfman", "[[D, c(e1)], c(e2)] = c(e1 o e2)")
    if P.m == 0:
        n = P.n
        Dm = operator_matrix(n, D)
        cl = {id(s): operator_matrix(n, lambda v, s=s: clifford(s, v)) for s in secs}
        for e1, e2 in itertools.product(secs, repeat=2):
            inner = graded_commutator(Dm, cl[id(e1)], both_odd=True)
            outer = graded_commutator(inner, cl[id(e2)], both_odd=False)
            target = operator_matrix(n, lambda v: clifford(dorfman(P, e1, e2), v))
            r.record((e1, e2), (outer - target).nonzero_entries())
        return report

    vs = probes(P, "A", probe_degree)
    for e1, e2 in itertools.product(secs, repeat=2):
        target = dorfman(P, e1, e2)
        for v in vs:
            # [D, c1] = D c1 + c1 D, then [X, c2] = X c2 - c2 X
            def inner(w):
                return D(clifford(e1, w)) + clifford(e1, D(w))
            got = inner(clifford(e2, v)) - clifford(e2, inner(v))
            r.record((e1, e2, v), got - clifford(target, v))

    r = report.add("anchor", "[[D, f], c(e)] = rho(e)(f)")
    for a in range(1, P.m + 1):
        f = P.coord(a)
        for e in secs:
            for v in vs:
                def inner(w):
                    return D(w * f) - D(w) * f
                got = inner(clifford(e, v)) + clifford(e, inner(v))
                r.record((f, e, v), got - v * anchor_rho(P, e, f))
    return report
