"""Built-in examples, random 3D solutions and perturbations."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .dull import DullStructure
from .exterior import Form, MultiVec
from .proto import ProtoData
from .ring import Poly, as_rational


def make_proto(n: int, m: int = 0, a=None, b=None, anchor_A=None, anchor_dual=None,
               tau=None, phi=None, name: str = "") -> ProtoData:
    """Assemble data from sparse tables.

    a: {(i, j, k): c} meaning [e_i, e_j] = c e_k; b: {(i, j, k): c} meaning
    [e^i, e^j] = c e^k (the constant b_k^ij); anchors {(i, alpha): c};
    tau, phi: {(i, j, k): c} for the coefficient of the wedge of those basis elements.
    """
    def table(entries):
        out: dict = {}
        for (i, j, k), c in (entries or {}).items():
            out.setdefault((i, j), {})[k] = c
        return out

    S_A = DullStructure("A", n, m, table(a), anchor_A or {})
    S_star = DullStructure("A*", n, m, table(b), anchor_dual or {})
    return ProtoData(S_A, S_star, MultiVec(n, m, dict(tau or {})), Form(n, m, dict(phi or {})), name)


SL2 = {(1, 2, 2): 2, (1, 3, 3): -2, (2, 3, 1): 1}


def abelian(n: int = 3) -> ProtoData:
    return make_proto(n, name="abelian")


def sl2_proto(tau_bar=1, phi_bar=1) -> ProtoData:
    """sl(2) with the dual bracket fixed by tau_bar * phi_bar (generating when the product is 1)."""
    b = {(1, 2, 2): Fraction(1, 2), (1, 3, 3): Fraction(-1, 2), (2, 3, 1): 1}
    return make_proto(3, a=SL2, b=b, tau={(1, 2, 3): tau_bar}, phi={(1, 2, 3): phi_bar}, name="sl2-proto")


def lu_sl2() -> ProtoData:
    b = {(1, 2, 2): Fraction(1, 4), (1, 3, 3): Fraction(1, 4)}
    return make_proto(3, a=SL2, b=b, name="lu-sl2")


def poisson_plane() -> ProtoData:
    """TM and T*M over the plane with the Poisson bivector (1 + q1 q2) d1 ^ d2."""
    m = 2
    p = Poly.one(m) + Poly.var(1, m) * Poly.var(2, m)
    anchor_A = {(1, 1): 1, (2, 2): 1}
    anchor_dual = {(1, 2): p, (2, 1): -p}
    b = {(1, 2, 1): p.pdiff(1), (1, 2, 2): p.pdiff(2)}
    return make_proto(2, m, b=b, anchor_A=anchor_A, anchor_dual=anchor_dual, name="poisson-plane")


def euclidean_demo() -> ProtoData:
    """Poisson plane (indices 1, 2) times the sl(2) proto-bialgebra (indices 3, 4, 5)."""
    m = 2
    p = Poly.one(m) + Poly.var(1, m) * Poly.var(2, m)
    anchor_A = {(1, 1): 1, (2, 2): 1}
    anchor_dual = {(1, 2): p, (2, 1): -p}
    b = {(1, 2, 1): p.pdiff(1), (1, 2, 2): p.pdiff(2)}
    b.update({(3, 4, 4): Fraction(1, 2), (3, 5, 5): Fraction(-1, 2), (4, 5, 3): 1})
    a = {(3, 4, 4): 2, (3, 5, 5): -2, (4, 5, 3): 1}
    return make_proto(5, m, a=a, b=b, anchor_A=anchor_A, anchor_dual=anchor_dual,
                      tau={(3, 4, 5): 1}, phi={(3, 4, 5): 1}, name="euclidean-demo")


FAMILY_KEYS = (
    [f"a{i}{j}_{k}" for i, j in combinations((1, 2, 3), 2) for k in (1, 2, 3)]
    + [f"b{k}_{i}{j}" for i, j in combinations((1, 2, 3), 2) for k in (1, 2, 3)]
    + ["tau", "phi"]
)


def three_d_family(params: dict) -> ProtoData:
    """Any 3D point-base data; keys a12_3 (= a_12^3), b3_12 (= b_3^12), tau, phi."""
    unknown = set(params) - set(FAMILY_KEYS)
    if unknown:
        raise ValueError(f"unknown 3d-family parameters: {sorted(unknown)}; allowed: {', '.join(FAMILY_KEYS)}")
    a, b = {}, {}
    for key, value in params.items():
        v = as_rational(value)
        if key.startswith("a"):
            a[(int(key[1]), int(key[2]), int(key[4]))] = v
        elif key.startswith("b"):
            b[(int(key[3]), int(key[4]), int(key[1]))] = v
    return make_proto(3, a=a, b=b, tau={(1, 2, 3): as_rational(params.get("tau", 0))},
                      phi={(1, 2, 3): as_rational(params.get("phi", 0))}, name="3d-family")


BUILTINS = {
    "abelian": abelian,
    "sl2-proto": sl2_proto,
    "lu-sl2": lu_sl2,
    "euclidean-demo": euclidean_demo,
    "poisson-plane": poisson_plane,
}


def builtin(key: str) -> ProtoData:
    """Look up a builtin; '3d-family:a12_3=1,tau=1/2' passes parameters."""
    name, _, rest = key.partition(":")
    if name == "3d-family":
        params = {}
        for item in filter(None, rest.split(",")):
            key, sep, value = item.partition("=")
            if not sep:
                raise ValueError(f"3d-family parameter {item!r} needs key=value")
            params[key.strip()] = value.strip()
        return three_d_family(params)
    if rest:
        raise ValueError(f"builtin {name!r} takes no parameters")
    if name not in BUILTINS:
        raise ValueError(f"unknown builtin {name!r}; known: {', '.join(sorted(BUILTINS))}, 3d-family")
    return BUILTINS[name]()


# point-base doubles as plain rational tables


def _antisym3(coeff) -> dict:
    """Fully antisymmetric components of coeff * (1 ^ 2 ^ 3)."""
    even = ((1, 2, 3), (2, 3, 1), (3, 1, 2))
    out = {p: coeff for p in even}
    out.update({(p[1], p[0], p[2]): -coeff for p in even})
    return out


def _point_constants(P: ProtoData):
    c = lambda p: p.constant_value()
    n = P.n
    a = {(i, j, k): c(P.S_A.constant(i, j, k)) for i in range(1, n + 1) for j in range(1, n + 1) for k in range(1, n + 1)}
    b = {(i, j, k): c(P.S_star.constant(i, j, k)) for i in range(1, n + 1) for j in range(1, n + 1) for k in range(1, n + 1)}
    return a, b


def double_bracket(P: ProtoData) -> list:
    """Structure tensor of e_a o e_b on the 6-dim double of 3D point data.

    Basis order e1, e2, e3, e^1, e^2, e^3.  Built from the coordinate formulas
    of the double, not from the library's Dorfman bracket.
    """
    if P.n != 3 or P.m:
        raise ValueError("double_bracket needs 3D point-base data")
    a, b = _point_constants(P)  # a[i,j,k] = a_ij^k, b[i,j,k] = b_k^ij
    tbar = P.tau.coeff((1, 2, 3)).constant_value()
    pbar = P.phi.coeff((1, 2, 3)).constant_value()
    tau, phi = _antisym3(tbar), _antisym3(pbar)
    zero = Fraction(0)
    C = [[[zero] * 6 for _ in range(6)] for _ in range(6)]
    r = range(1, 4)
    for i in r:
        for j in r:
            for k in r:
                C[i - 1][j - 1][k - 1] += a[(i, j, k)]
                C[i - 1][j - 1][k + 2] -= phi.get((i, j, k), zero)
                C[i + 2][j + 2][k + 2] += b[(i, j, k)]
                C[i + 2][j + 2][k - 1] -= tau.get((i, j, k), zero)
                # e_i o e^j = b_i^jk e_k - a_ik^j e^k, and the skew partner
                C[i - 1][j + 2][k - 1] += b[(j, k, i)]
                C[i - 1][j + 2][k + 2] -= a[(i, k, j)]
                C[j + 2][i - 1][k - 1] -= b[(j, k, i)]
                C[j + 2][i - 1][k + 2] += a[(i, k, j)]
    return C


def _metric6(u, v) -> Fraction:
    return Fraction(sum(u[i] * v[i + 3] for i in range(3)) + sum(u[i + 3] * v[i] for i in range(3))) / 2


def _bracket6(C, u, v) -> list:
    out = [Fraction(0)] * 6
    for x in range(6):
        if u[x]:
            for y in range(6):
                if v[y]:
                    w = u[x] * v[y]
                    for z in range(6):
                        if C[x][y][z]:
                            out[z] += w * C[x][y][z]
    return out


def read_off(C, frame: list, name: str = "") -> ProtoData:
    """Constants of the double in a new Lagrangian frame (first three columns span A)."""
    e = frame[:3]
    f = frame[3:]
    a, b, tau, phi = {}, {}, {}, {}
    for i, j in combinations(range(3), 2):
        uv = _bracket6(C, e[i], e[j])
        dual = _bracket6(C, f[i], f[j])
        for k in range(3):
            a[(i + 1, j + 1, k + 1)] = 2 * _metric6(uv, f[k])
            b[(i + 1, j + 1, k + 1)] = 2 * _metric6(dual, e[k])
    uv = _bracket6(C, e[0], e[1])
    dual = _bracket6(C, f[0], f[1])
    phi[(1, 2, 3)] = -2 * _metric6(uv, e[2])
    tau[(1, 2, 3)] = -2 * _metric6(dual, f[2])
    return make_proto(3, a=a, b=b, tau=tau, phi=phi, name=name)


def _inv3(M):
    (a, b, c), (d, e, f), (g, h, i) = M
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    if det == 0:
        raise ZeroDivisionError("singular matrix")
    adj = [
        [e * i - f * h, c * h - b * i, b * f - c * e],
        [f * g - d * i, a * i - c * g, c * d - a * f],
        [d * h - e * g, b * g - a * h, a * e - b * d],
    ]
    return [[Fraction(x) / det for x in row] for row in adj]


def _small(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-2, 2), rng.choice((1, 1, 2)))


def random_frame(rng: random.Random) -> list:
    """A random metric-preserving frame of the double: GL(3) change, then B- and beta-shifts."""
    while True:
        M = [[_small(rng) for _ in range(3)] for _ in range(3)]
        try:
            Minv = _inv3(M)
            break
        except ZeroDivisionError:
            continue
    B = [[Fraction(0)] * 3 for _ in range(3)]
    beta = [[Fraction(0)] * 3 for _ in range(3)]
    for i, j in combinations(range(3), 2):
        B[i][j] = _small(rng)
        B[j][i] = -B[i][j]
        beta[i][j] = _small(rng)
        beta[j][i] = -beta[i][j]
    # columns: e'_i = sum_k M[k][i] e_k, e'^i = sum_k Minv[i][k] e^k
    frame = [[M[k][i] for k in range(3)] + [Fraction(0)] * 3 for i in range(3)]
    frame += [[Fraction(0)] * 3 + [Minv[i][k] for k in range(3)] for i in range(3)]
    # B-shift x -> x + i_x B
    for i in range(3):
        v = frame[i]
        frame[i] = v[:3] + [v[3 + k] + sum(v[l] * B[l][k] for l in range(3)) for k in range(3)]
    # beta-shift xi -> xi + i_xi beta
    for i in range(6):
        v = frame[i]
        frame[i] = [v[k] + sum(v[3 + l] * beta[l][k] for l in range(3)) for k in range(3)] + v[3:]
    return frame


def frame_is_isotropic(frame: list) -> bool:
    for i in range(6):
        for j in range(6):
            want = Fraction(1, 2) if abs(i - j) == 3 else Fraction(0)
            if _metric6(frame[i], frame[j]) != want:
                return False
    return True


def seed_doubles(rng: random.Random) -> list:
    lam = Fraction(rng.choice((1, 2, -1, 3)), rng.choice((1, 2)))
    mu = Fraction(rng.choice((1, -1, 2)), rng.choice((1, 3)))
    scaled = make_proto(
        3,
        a={k: v * lam for k, v in SL2.items()},
        b={(1, 2, 2): mu / 2, (1, 3, 3): -mu / 2, (2, 3, 1): mu},
        tau={(1, 2, 3): lam * mu},
        phi={(1, 2, 3): 1},
        name="scaled sl2-proto",
    )
    book = make_proto(3, a={(1, 2, 2): 1, (1, 3, 3): 1}, name="book algebra with zero cobracket")
    return [scaled, lu_sl2(), book]


def random_3d_solution(rng: random.Random) -> ProtoData:
    """A proto-bialgebra read off a random Lagrangian splitting of a known double."""
    base = rng.choice(seed_doubles(rng))
    frame = random_frame(rng)
    if not frame_is_isotropic(frame):
        raise AssertionError("random frame does not preserve the metric")
    return read_off(double_bracket(base), frame, name=f"twisted {base.name}")


def rank3_constraints(P: ProtoData) -> list:
    """The nine bilinear constraints that rank-3 point-base data must satisfy, one value per constraint."""
    a = lambda i, j, k: P.S_A.constant(i, j, k).constant_value()
    b = lambda k, i, j: P.S_star.constant(i, j, k).constant_value()
    pt = P.phi.coeff((1, 2, 3)).constant_value() * P.tau.coeff((1, 2, 3)).constant_value()
    return [
        a(1, 2, 3) * b(3, 1, 2) - a(2, 3, 1) * b(1, 2, 3) - a(2, 3, 2) * b(1, 3, 1)
        - a(3, 1, 1) * b(2, 2, 3) - a(3, 1, 2) * b(2, 3, 1) + pt,
        a(1, 2, 1) * b(1, 2, 3) + a(1, 2, 2) * b(1, 3, 1) + a(1, 2, 3) * b(3, 2, 3)
        + a(1, 2, 3) * b(1, 1, 2) + a(2, 3, 3) * b(1, 2, 3) + a(3, 1, 3) * b(2, 2, 3),
        a(1, 2, 1) * b(2, 2, 3) + a(1, 2, 2) * b(2, 3, 1) + a(1, 2, 3) * b(3, 3, 1)
        + a(1, 2, 3) * b(2, 1, 2) + a(2, 3, 3) * b(1, 3, 1) + a(3, 1, 3) * b(2, 3, 1),
        a(1, 2, 1) * b(3, 1, 2) + a(2, 3, 1) * b(1, 1, 2) + a(2, 3, 1) * b(3, 2, 3)
        + a(2, 3, 2) * b(3, 3, 1) + a(2, 3, 3) * b(3, 1, 2) + a(3, 1, 1) * b(2, 1, 2),
        -a(1, 2, 2) * b(3, 3, 1) - a(1, 2, 3) * b(3, 1, 2) + a(2, 3, 1) * b(1, 2, 3)
        - a(3, 1, 2) * b(2, 3, 1) - a(3, 1, 3) * b(2, 1, 2) + pt,
        a(1, 2, 1) * b(3, 3, 1) + a(2, 3, 1) * b(1, 3, 1) + a(2, 3, 1) * b(2, 2, 3)
        + a(2, 3, 2) * b(2, 3, 1) + a(2, 3, 3) * b(2, 1, 2) + a(3, 1, 1) * b(2, 3, 1),
        a(1, 2, 2) * b(3, 1, 2) + a(2, 3, 2) * b(1, 1, 2) + a(3, 1, 1) * b(3, 2, 3)
        + a(3, 1, 2) * b(2, 1, 2) + a(3, 1, 2) * b(3, 3, 1) + a(3, 1, 3) * b(3, 1, 2),
        a(1, 2, 2) * b(3, 2, 3) + a(2, 3, 2) * b(1, 2, 3) + a(3, 1, 1) * b(1, 2, 3)
        + a(3, 1, 2) * b(1, 3, 1) + a(3, 1, 2) * b(2, 2, 3) + a(3, 1, 3) * b(1, 1, 2),
        -a(1, 2, 1) * b(3, 2, 3) - a(1, 2, 3) * b(3, 1, 2) - a(2, 3, 1) * b(1, 2, 3)
        - a(2, 3, 3) * b(1, 1, 2) + a(3, 1, 2) * b(2, 3, 1) + pt,
    ]


def bialgebra_closed_form(P: ProtoData) -> Fraction:
    """-1/4 a_ij^j b_k^ik - <tau|phi> for point-base data."""
    n = P.n
    a = lambda i, j, k: P.S_A.constant(i, j, k).constant_value()
    b = lambda k, i, j: P.S_star.constant(i, j, k).constant_value()
    s = sum(a(i, j, j) * b(k, i, k) for i in range(1, n + 1) for j in range(1, n + 1) for k in range(1, n + 1))
    return -Fraction(s, 4) - P.tau_phi().constant_value()


def perturbation_slots(P: ProtoData) -> list:
    n = P.n
    slots = [("a", i, j, k) for i, j in combinations(range(1, n + 1), 2) for k in range(1, n + 1)]
    slots += [("b", i, j, k) for i, j in combinations(range(1, n + 1), 2) for k in range(1, n + 1)]
    slots += [("tau",) + t for t in combinations(range(1, n + 1), 3)]
    slots += [("phi",) + t for t in combinations(range(1, n + 1), 3)]
    return slots


def perturb(P: ProtoData, rng: random.Random):
    """Add a random nonzero rational to one structure constant; returns (data, description)."""
    slot = rng.choice(perturbation_slots(P))
    delta = Fraction(rng.choice((1, -1, 2, -2, 3)), rng.choice((1, 2, 3)))
    kind, idx = slot[0], slot[1:]
    m = P.m
    if kind in ("a", "b"):
        S = P.S_A if kind == "a" else P.S_star
        i, j, k = idx
        table = S.brackets()
        row = dict(table.get((i, j), {}))
        row[k] = row.get(k, Poly.zero(m)) + delta
        table[(i, j)] = row
        S2 = S.with_changes(brackets=table)
        Q = P.replace(S_A=S2) if kind == "a" else P.replace(S_star=S2)
    elif kind == "tau":
        Q = P.replace(tau=P.tau + MultiVec(P.n, m, {idx: delta}))
    else:
        Q = P.replace(phi=P.phi + Form(P.n, m, {idx: delta}))
    return Q, f"{kind}{idx} += {delta}"
