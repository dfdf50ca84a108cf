"""Proto-bialgebroid data, modular elements, axiom checks and structural identities."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable

from .duality import TopDuality, bv_partial, bv_partial_star, laplacian, laplacian_star
from .dull import DullStructure
from .exterior import Exterior, Form, MultiVec, basis_elements, contract, indices_of, pairing, wedge
from .ring import Poly, pdiff

HALF = Fraction(1, 2)
MAX_STORED_FAILURES = 20


class InternalConsistencyError(RuntimeError):
    """Two computations that must agree by construction disagree: a bug, not bad input."""


@dataclass(frozen=True)
class ProtoData:
    """Two dull algebroids in duality together with tau in degree 3 of A and phi in degree 3 of A*."""

    S_A: DullStructure
    S_star: DullStructure
    tau: MultiVec
    phi: Form
    name: str = ""

    def __post_init__(self):
        if self.S_A.side != "A" or self.S_star.side != "A*":
            raise ValueError("S_A must live on A and S_star on A*")
        n, m = self.S_A.n, self.S_A.m
        if (self.S_star.n, self.S_star.m) != (n, m):
            raise ValueError("both structures need the same rank and base dimension")
        if not isinstance(self.tau, MultiVec) or not isinstance(self.phi, Form):
            raise TypeError("tau must be a MultiVec and phi a Form")
        for label, t in (("tau", self.tau), ("phi", self.phi)):
            if (t.n, t.m) != (n, m):
                raise ValueError(f"{label} has the wrong shape")
            if any(d != 3 for d in t.degrees()):
                raise ValueError(f"{label} must be homogeneous of degree 3")

    @property
    def n(self) -> int:
        return self.S_A.n

    @property
    def m(self) -> int:
        return self.S_A.m

    @cached_property
    def T(self) -> TopDuality:
        return TopDuality(self.n, self.m)

    # basic operators, named by what they act on

    def d_star(self, r: MultiVec) -> MultiVec:
        return self.S_star.differential(r)

    def d_A(self, w: Form) -> Form:
        return self.S_A.differential(w)

    def partial(self, r: MultiVec) -> MultiVec:
        return bv_partial(self.S_A, self.T, r)

    def partial_star(self, w: Form) -> Form:
        return bv_partial_star(self.S_star, self.T, w)

    def laplacian(self, r: MultiVec) -> MultiVec:
        return laplacian(self.S_A, self.S_star, self.T, r)

    def laplacian_star(self, w: Form) -> Form:
        return laplacian_star(self.S_A, self.S_star, self.T, w)

    def lie(self, s: Exterior, t: Exterior) -> Exterior:
        """Lie derivative along a degree-1 section of either side."""
        S = self.S_A if isinstance(s, MultiVec) else self.S_star
        return S.lie_derivative(s, t)

    def vec(self, *indices: int) -> MultiVec:
        return MultiVec.basis(self.n, self.m, *indices)

    def form(self, *indices: int) -> Form:
        return Form.basis(self.n, self.m, *indices)

    def coord(self, alpha: int) -> Poly:
        return Poly.var(alpha, self.m)

    @cached_property
    def modular(self) -> "ModularData":
        return modular_closed_form(self)

    def tau_phi(self) -> Poly:
        """<tau|phi> through the standard pairing."""
        return pairing(self.phi, self.tau)

    def replace(self, **changes) -> "ProtoData":
        data = dict(S_A=self.S_A, S_star=self.S_star, tau=self.tau, phi=self.phi, name=self.name)
        data.update(changes)
        return ProtoData(**data)


@dataclass(frozen=True)
class ModularData:
    X0: MultiVec
    xi0: Form


# reports


@dataclass
class Residual:
    args: tuple
    value: object

    def to_dict(self) -> dict:
        v = self.value
        return {"args": list(self.args), "residual": str(v), "residual_terms": _jsonable(v)}


@dataclass
class AxiomResult:
    name: str
    description: str = ""
    checked: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def record(self, args: tuple, residual) -> None:
        self.checked += 1
        if _nonzero(residual):
            self.failed += 1
            if len(self.failures) < MAX_STORED_FAILURES:
                self.failures.append(Residual(tuple(str(a) for a in args), residual))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "passed": self.passed,
            "checked": self.checked,
            "failed": self.failed,
            "failures": [f.to_dict() for f in self.failures],
        }


@dataclass
class AxiomReport:
    title: str
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def result(self, name: str) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def add(self, name: str, description: str = "") -> AxiomResult:
        r = AxiomResult(name, description)
        self.results.append(r)
        return r

    def failing(self) -> list:
        return [r.name for r in self.results if not r.passed]

    def to_dict(self) -> dict:
        return {"title": self.title, "passed": self.passed, "results": [r.to_dict() for r in self.results]}

    def render_text(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for r in self.results:
            status = "pass" if r.passed else f"FAIL ({r.failed} of {r.checked})"
            lines.append(f"  {r.name:<24} {status:<18} {r.description}")
            for f in r.failures[:5]:
                lines.append(f"      at ({', '.join(f.args)}): residual {f.value}")
        return "\n".join(lines)


def _nonzero(value) -> bool:
    if isinstance(value, (Exterior, Poly)):
        return not value.is_zero()
    if isinstance(value, (tuple, list)):
        return any(_nonzero(v) for v in value)
    return bool(value)


def _jsonable(value):
    if isinstance(value, Exterior):
        return {"side": value.side, "terms": value.to_json()}
    if isinstance(value, Poly):
        return value.to_json()
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    return str(value)


# modular elements


def modular_closed_form(P: ProtoData) -> ModularData:
    n, m = P.n, P.m
    x_comps, xi_comps = {}, {}
    for i in range(1, n + 1):
        cx = Poly.zero(m)
        cxi = Poly.zero(m)
        for j in range(1, n + 1):
            cx = cx + P.S_star.constant(i, j, j)
            cxi = cxi + P.S_A.constant(i, j, j)
        for a in range(1, m + 1):
            cx = cx + pdiff(P.S_star.anchor_entry(i, a), a)
            cxi = cxi + pdiff(P.S_A.anchor_entry(i, a), a)
        x_comps[(i,)] = cx
        xi_comps[(i,)] = cxi
    return ModularData(MultiVec(n, m, x_comps), Form(n, m, xi_comps))


def modular_definitional(P: ProtoData) -> ModularData:
    """Read the modular elements off the Lie derivatives of the top elements."""
    n, m = P.n, P.m
    top = (1 << n) - 1
    x_comps, xi_comps = {}, {}
    for i in range(1, n + 1):
        ei, eI = P.vec(i), P.form(i)
        on_omega = P.S_star.lie_derivative(eI, P.T.Omega)
        on_v = P.S_A.lie_derivative(ei, P.T.V)
        for got in (on_omega, on_v):
            if any(k != top for k, _ in got.items()):
                raise InternalConsistencyError("Lie derivative of a top element left top degree")
        x_comps[(i,)] = on_omega.coeff(top) + P.S_star.lie_volume(eI)
        xi_comps[(i,)] = on_v.coeff(top) + P.S_A.lie_volume(ei)
    return ModularData(MultiVec(n, m, x_comps), Form(n, m, xi_comps))


# argument sets


def probe_polys(m: int, degree: int) -> list:
    """Monomials of total degree <= degree in m variables, constants first."""
    out = [Poly.one(m)]
    for d in range(1, degree + 1):
        for combo in itertools.combinations_with_replacement(range(1, m + 1), d):
            p = Poly.one(m)
            for a in combo:
                p = p * Poly.var(a, m)
            out.append(p)
    return out


def sections(P: ProtoData, side: str, test_function_degree: int = 1) -> list:
    """Basis sections of one side, plus q^alpha multiples when requested."""
    cls = MultiVec if side == "A" else Form
    base = [cls.basis(P.n, P.m, i) for i in range(1, P.n + 1)]
    if test_function_degree and P.m:
        base += [b * Poly.var(a, P.m) for a in range(1, P.m + 1) for b in base[: P.n]]
    return base


def probes(P: ProtoData, side: str = "A", degree: int = 2) -> list:
    """p * e_I for every basis monomial e_I and monomial p with deg p <= degree."""
    cls = MultiVec if side == "A" else Form
    polys = probe_polys(P.m, degree) if P.m else [Poly.one(0)]
    return [b * p for p in polys for b in basis_elements(cls, P.n, P.m)]


# axioms


def _jacobiator(S: DullStructure, x, y, z):
    b = S.bracket_sections
    return b(b(x, y), z) + b(b(y, z), x) + b(b(z, x), y)


def _eval3(t3: Exterior, a, b, c) -> Poly:
    return contract(c, contract(b, contract(a, t3))).scalar_part()


def _cyclic_control(t3: Exterior, d, x, y, z) -> Exterior:
    """Sum over cyclic (x, y, z) of i_(t3(y, z, .)) d(x)."""
    out = type(x).zero(x.n, x.m)
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        out = out + contract(contract(c, contract(b, t3)), d(a))
    return out


def literal_jacobi_term(t3: Exterior, d, x, y, z) -> Exterior:
    """i_(t3) d(x ^ y ^ z): full contraction into a 4-vector, zero in rank 3."""
    return contract(t3, d(wedge(wedge(x, y), z)))


def check_axioms(P: ProtoData, test_function_degree: int = 1) -> AxiomReport:
    if test_function_degree not in (0, 1):
        raise ValueError("test_function_degree must be 0 or 1")
    report = AxiomReport("proto-bialgebroid axioms")
    xs = sections(P, "A", test_function_degree)
    xis = sections(P, "A*", test_function_degree)

    r1 = report.add("axiom-1", "Jacobiator of [,]_A = d_*(phi(x,y,z)) + cyclic i_(phi(y,z,.)) d_*x")
    for x, y, z in itertools.combinations(xs, 3):
        lhs = _jacobiator(P.S_A, x, y, z)
        rhs = P.S_star.d_function(_eval3(P.phi, x, y, z)) + _cyclic_control(P.phi, P.d_star, x, y, z)
        r1.record((x, y, z), lhs - rhs)

    r2 = report.add("axiom-2", "Jacobiator of [,]_* = d_A(tau(a,b,c)) + cyclic i_(tau(b,c,.)) d_A a")
    for a, b, c in itertools.combinations(xis, 3):
        lhs = _jacobiator(P.S_star, a, b, c)
        rhs = P.S_A.d_function(_eval3(P.tau, a, b, c)) + _cyclic_control(P.tau, P.d_A, a, b, c)
        r2.record((a, b, c), lhs - rhs)

    r3 = report.add("axiom-3", "d_*[x,y] = [d_*x,y] + [x,d_*y] + i_(phi(x,y,.)) tau")
    S = P.S_A
    for x, y in itertools.combinations(xs, 2):
        lhs = P.d_star(S.bracket_sections(x, y))
        rhs = (
            S.schouten(P.d_star(x), y)
            + S.schouten(x, P.d_star(y))
            + contract(contract(y, contract(x, P.phi)), P.tau)
        )
        r3.record((x, y), lhs - rhs)

    report.add("axiom-4", "d_A phi = 0").record(("phi",), P.d_A(P.phi))
    report.add("axiom-5", "d_* tau = 0").record(("tau",), P.d_star(P.tau))
    return report


# auxiliary operators


def _decomposables(t3: Exterior):
    """Yield (c*b1, b2, b3) for each stored term c*b1^b2^b3 with increasing indices."""
    cls = type(t3)
    for mask, c in t3.items():
        i, j, k = indices_of(mask)
        yield (cls.basis(t3.n, t3.m, i) * c, cls.basis(t3.n, t3.m, j), cls.basis(t3.n, t3.m, k))


def _two_slot(t3: Exterior, a: Exterior, b: Exterior) -> Exterior:
    """t3(a, b, .) = i_b i_a t3."""
    return contract(b, contract(a, t3))


def _q_first(t3_main: Exterior, t3_split: Exterior, v: Exterior) -> Exterior:
    out = type(v).zero(v.n, v.m)
    for p1, p2, p3 in _decomposables(t3_split):
        out = out + wedge(_two_slot(t3_main, p2, p3), contract(p1, v))
        out = out - wedge(_two_slot(t3_main, p1, p3), contract(p2, v))
        out = out + wedge(_two_slot(t3_main, p1, p2), contract(p3, v))
    return out


def _q_second(t3_main: Exterior, t3_split: Exterior, v: Exterior) -> Exterior:
    out = type(v).zero(v.n, v.m)
    for p1, p2, p3 in _decomposables(t3_split):
        out = out - wedge(contract(p3, t3_main), contract(p2, contract(p1, v)))
        out = out + wedge(contract(p2, t3_main), contract(p3, contract(p1, v)))
        out = out - wedge(contract(p1, t3_main), contract(p3, contract(p2, v)))
    return out


def q_operators(P: ProtoData, which: str, t: Exterior) -> Exterior:
    """Q1, Q2 act on multivectors (splitting phi); Q3, Q4 on forms (splitting tau)."""
    if which in ("Q1", "Q2"):
        if not isinstance(t, MultiVec):
            raise TypeError(f"{which} acts on multivectors")
        fn = _q_first if which == "Q1" else _q_second
        return fn(P.tau, P.phi, t)
    if which in ("Q3", "Q4"):
        if not isinstance(t, Form):
            raise TypeError(f"{which} acts on forms")
        fn = _q_first if which == "Q3" else _q_second
        return fn(P.phi, P.tau, t)
    raise ValueError(f"unknown operator {which!r}")


def k_operator(P: ProtoData, x: MultiVec, y: MultiVec, z: MultiVec) -> MultiVec:
    """K(x, y)(z) = i_(phi(y,z,.)) d_*x + i_(phi(z,x,.)) d_*y.

    phi takes the two plain vectors and one leg of d_*x (resp. d_*y); this is
    the reading under which the trace formula holds in every rank.
    """
    return (contract(contract(z, contract(y, P.phi)), P.d_star(x))
            + contract(contract(x, contract(z, P.phi)), P.d_star(y)))


def l_operator(P: ProtoData, a: Form, b: Form, c: Form) -> Form:
    return contract(_two_slot(P.tau, b, c), P.d_A(a)) + contract(_two_slot(P.tau, c, a), P.d_A(b))


def kl_trace(P: ProtoData, pair: tuple) -> Poly:
    """Trace of K(x, y) for two vectors, or of L(a, b) for two covectors."""
    s1, s2 = pair
    if type(s1) is not type(s2) or any(d != 1 for d in s1.degrees() + s2.degrees()):
        raise ValueError("kl_trace needs two degree-1 sections of the same side")
    total = Poly.zero(P.m)
    for a in range(1, P.n + 1):
        if isinstance(s1, MultiVec):
            total = total + pairing(P.form(a), k_operator(P, s1, s2, P.vec(a)))
        else:
            total = total + pairing(l_operator(P, s1, s2, P.form(a)), P.vec(a))
    return total


def kl_trace_formula(P: ProtoData, pair: tuple) -> Poly:
    s1, s2 = pair
    if isinstance(s1, MultiVec):
        return (pairing(contract(s2, P.phi), P.d_star(s1)) * -2
                + pairing(contract(s1, P.phi), P.d_star(s2)) * 2)
    return (pairing(P.d_A(s1), contract(s2, P.tau)) * -2
            + pairing(P.d_A(s2), contract(s1, P.tau)) * 2)


def mixed_commutator_map(P: ProtoData, x: MultiVec, xi: Form) -> Callable:
    """eta -> (L_{x o xi} - [L_x, L_xi]) eta on covectors."""
    vec_part = -contract(xi, P.d_star(x))
    form_part = P.lie(x, xi)

    def apply(eta: Form) -> Form:
        moved = P.lie(vec_part, eta) + P.lie(form_part, eta)
        return moved - P.lie(x, P.lie(xi, eta)) + P.lie(xi, P.lie(x, eta))

    return apply


def mixed_commutator_map_dual(P: ProtoData, xi: Form, x: MultiVec) -> Callable:
    """y -> (L_{xi o x} - [L_xi, L_x]) y on vectors."""
    vec_part = P.lie(xi, x)
    form_part = -contract(x, P.d_A(xi))

    def apply(y: MultiVec) -> MultiVec:
        moved = P.lie(vec_part, y) + P.lie(form_part, y)
        return moved - P.lie(xi, P.lie(x, y)) + P.lie(x, P.lie(xi, y))

    return apply


def _cross_term(P: ProtoData, x: MultiVec, xi: Form) -> Poly:
    return pairing(contract(x, P.phi), contract(xi, P.tau))


# identity suite


def identity_suite(P: ProtoData, probe_degree: int = 2) -> AxiomReport:
    report = AxiomReport("structural identities")
    md = P.modular
    X0, xi0 = md.X0, md.xi0
    half = HALF
    vprobes = probes(P, "A", probe_degree)
    fprobes = probes(P, "A*", probe_degree)
    funcs = probe_polys(P.m, probe_degree) if P.m else [Poly.one(0)]
    xs = sections(P, "A", 1)
    xis = sections(P, "A*", 1)

    r = report.add("partial-of-tau-phi", "partial(tau) and dstar-partial(phi) through the modular elements")
    r.record(("tau",), P.partial(P.tau) - contract(xi0, P.tau) * half - P.d_star(X0) * half)
    r.record(("phi",), P.partial_star(P.phi) - contract(X0, P.phi) * half - P.d_A(xi0) * half)

    r = report.add("partial-squared", "partial squared = d_* i_phi + i_phi d_* + half contractions")
    iX0phi = contract(X0, P.phi)
    dxi0 = P.d_A(xi0)
    for v in vprobes:
        lhs = P.partial(P.partial(v))
        rhs = (
            P.d_star(contract(P.phi, v))
            + contract(P.phi, P.d_star(v))
            + contract(iX0phi, v) * half
            + contract(dxi0, v) * half
        )
        r.record((v,), lhs - rhs)

    lap_x = {x: P.laplacian(x) for x in xs}
    lap_xi = {a: P.laplacian_star(a) for a in xis}
    r1 = report.add("laplacian-star-pairing", "Laplacian on forms of <xi|x> splits with the phi-tau correction")
    r2 = report.add("laplacian-pairing", "Laplacian on multivectors of <xi|x> splits the same way")
    for x in xs:
        for a in xis:
            f = pairing(a, x)
            rhs = pairing(lap_xi[a], x) + pairing(a, lap_x[x]) - _cross_term(P, x, a) * 2
            r1.record((x, a), P.laplacian_star(Form.scalar(f, P.n, P.m)).scalar_part() - rhs)
            r2.record((x, a), P.laplacian(MultiVec.scalar(f, P.n, P.m)).scalar_part() - rhs)

    r = report.add("mixed-commutators", "mixed Lie-derivative commutators: linear, with the expected trace")
    for x in xs:
        for a in xis:
            expected = pairing(P.d_A(a), P.d_star(x)) * 2 - _cross_term(P, x, a) * 2
            on_forms = mixed_commutator_map(P, x, a)
            on_vecs = mixed_commutator_map_dual(P, a, x)
            tr1 = Poly.zero(P.m)
            tr2 = Poly.zero(P.m)
            for i in range(1, P.n + 1):
                tr1 = tr1 + pairing(on_forms(P.form(i)), P.vec(i))
                tr2 = tr2 + pairing(P.form(i), on_vecs(P.vec(i)))
                for al in range(1, P.m + 1):
                    q = P.coord(al)
                    lin1 = on_forms(P.form(i) * q) - on_forms(P.form(i)) * q
                    lin2 = on_vecs(P.vec(i) * q) - on_vecs(P.vec(i)) * q
                    r.record((x, a, f"q{al}*e^{i}", "linearity"), lin1)
                    r.record((a, x, f"q{al}*e{i}", "linearity"), lin2)
            r.record((x, a, "trace on forms"), tr1 - expected)
            r.record((a, x, "trace on vectors"), tr2 - expected)

    r = report.add("laplacian-low-degree", "Laplacians on functions and degree 1 via modular elements and Q1, Q3")
    for f in funcs:
        lf = P.laplacian(MultiVec.scalar(f, P.n, P.m)).scalar_part()
        lsf = P.laplacian_star(Form.scalar(f, P.n, P.m)).scalar_part()
        mod = (P.S_A.anchor_apply(X0, f) + P.S_star.anchor_apply(xi0, f)) * half
        r.record((f, "both Laplacians"), lf - lsf)
        r.record((f, "modular"), lf - mod)
    for v in vprobes:
        if v.degrees() != [1]:
            continue
        rhs = (P.lie(X0, v) + P.lie(xi0, v)) * half + q_operators(P, "Q1", v)
        r.record((v,), P.laplacian(v) - rhs)
    for w in fprobes:
        if w.degrees() != [1]:
            continue
        rhs = (P.lie(X0, w) + P.lie(xi0, w)) * half + q_operators(P, "Q3", w)
        r.record((w,), P.laplacian_star(w) - rhs)

    r = report.add("laplacian-multivectors", "Laplacian on multivectors = modular Lie derivatives + Q1 + Q2")
    for v in vprobes:
        rhs = (P.lie(X0, v) + P.lie(xi0, v)) * half + q_operators(P, "Q1", v) + q_operators(P, "Q2", v)
        r.record((v,), P.laplacian(v) - rhs)

    r = report.add("laplacian-forms", "Laplacian on forms = modular Lie derivatives + Q3 + Q4")
    for w in fprobes:
        rhs = (P.lie(X0, w) + P.lie(xi0, w)) * half + q_operators(P, "Q3", w) + q_operators(P, "Q4", w)
        r.record((w,), P.laplacian_star(w) - rhs)

    r = report.add("kl-traces", "traces of K and L")
    for pair in itertools.product(xs, repeat=2):
        r.record(pair, kl_trace(P, pair) - kl_trace_formula(P, pair))
    for pair in itertools.product(xis, repeat=2):
        r.record(pair, kl_trace(P, pair) - kl_trace_formula(P, pair))

    r = report.add("q-adjoint", "<Q1 x|xi> + <x|Q3 xi> = 2 <i_x phi|i_xi tau>")
    for x in xs:
        for a in xis:
            lhs = pairing(a, q_operators(P, "Q1", x)) + pairing(q_operators(P, "Q3", a), x)
            r.record((x, a), lhs - _cross_term(P, x, a) * 2)

    r = report.add("mixed-commutator-pairing", "<y|(L_{x o xi} - [L_x, L_xi]) eta> on basis 4-tuples")
    basis_x = [P.vec(i) for i in range(1, P.n + 1)]
    basis_xi = [P.form(i) for i in range(1, P.n + 1)]
    for x in basis_x:
        dsx = P.d_star(x)
        for a in basis_xi:
            apply = mixed_commutator_map(P, x, a)
            dA_a = P.d_A(a)
            for eta in basis_xi:
                moved = apply(eta)
                z = _two_slot(P.tau, a, eta)
                left_vec = contract(eta, dsx)
                for y in basis_x:
                    lhs = pairing(moved, y)
                    rhs = pairing(contract(y, dA_a), left_vec) + _eval3(P.phi, x, z, y)
                    r.record((x, y, a, eta), lhs - rhs)
    return report


def probe_sections(P: ProtoData) -> Iterable:
    return sections(P, "A", 1) + sections(P, "A*", 1)
