"""Skew-symmetric dull algebroids: anchored skew brackets with Leibniz, no Jacobi.

A structure lives on one side, A or A*.  Its bracket acts on elements of
that side and its differential acts on elements of the other side.
"""

from __future__ import annotations

from typing import Mapping

from .exterior import Exterior, Form, MultiVec, contract, element_type, indices_of, wedge
from .ring import Poly, pdiff


def _dual_side(side: str) -> str:
    return "A*" if side == "A" else "A"


class DullStructure:
    """Bracket constants c[i][j][k] and an n x m anchor matrix, all polynomial.

    On side A the constants are a_ij^k with [e_i, e_j] = a_ij^k e_k and the
    anchor rows are A_i^alpha.  On side A* they are b_k^ij with
    [e^i, e^j] = b_k^ij e^k and the anchor rows are B^(i alpha).
    Indices given to the constructor are 1-based.
    """

    def __init__(self, side: str, n: int, m: int, brackets: Mapping | None = None,
                 anchor: Mapping | None = None):
        if side not in ("A", "A*"):
            raise ValueError(f"side must be 'A' or 'A*', got {side!r}")
        self.side = side
        self.n = n
        self.m = m
        self.elem = element_type(side)
        self.dual_elem = element_type(_dual_side(side))
        zero = Poly.zero(m)
        table = [[[zero] * n for _ in range(n)] for _ in range(n)]
        seen = {}
        for (i, j), row in (brackets or {}).items():
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"bracket index ({i}, {j}) out of range 1..{n}")
            for k, c in row.items():
                if not 1 <= k <= n:
                    raise ValueError(f"bracket output index {k} out of range 1..{n}")
                c = c if isinstance(c, Poly) else Poly.const(c, m)
                if c.num_vars != m:
                    raise ValueError("bracket coefficient has the wrong number of variables")
                if not c:
                    continue
                if i == j:
                    raise ValueError(f"bracket of basis element {i} with itself must vanish")
                key = (i, j, k)
                if (j, i, k) in seen:
                    if seen[(j, i, k)] != -c:
                        raise ValueError(f"bracket table not antisymmetric at ({i}, {j}, {k})")
                    continue
                seen[key] = c
        for (i, j, k), c in seen.items():
            table[i - 1][j - 1][k - 1] = c
            table[j - 1][i - 1][k - 1] = -c
        self._table = table
        anc = [[zero] * m for _ in range(n)]
        for (i, alpha), c in (anchor or {}).items():
            if not (1 <= i <= n and 1 <= alpha <= m):
                raise ValueError(f"anchor index ({i}, {alpha}) out of range")
            c = c if isinstance(c, Poly) else Poly.const(c, m)
            if c.num_vars != m:
                raise ValueError("anchor coefficient has the wrong number of variables")
            anc[i - 1][alpha - 1] = c
        self._anchor = anc
        self._basis_brackets = [
            [self.elem.from_masks(n, m, {1 << k: table[i][j][k] for k in range(n)}) for j in range(n)]
            for i in range(n)
        ]
        self._d_cache: dict = {}
        self._schouten_cache: dict = {}

    # data access

    def constant(self, i: int, j: int, k: int) -> Poly:
        """c_ij^k with 1-based indices."""
        return self._table[i - 1][j - 1][k - 1]

    def anchor_entry(self, i: int, alpha: int) -> Poly:
        return self._anchor[i - 1][alpha - 1]

    def brackets(self) -> dict:
        """Nonzero constants as {(i, j): {k: c}} for i < j."""
        out = {}
        for i in range(self.n):
            for j in range(i + 1, self.n):
                row = {k + 1: c for k, c in enumerate(self._table[i][j]) if c}
                if row:
                    out[(i + 1, j + 1)] = row
        return out

    def anchors(self) -> dict:
        return {
            (i + 1, a + 1): c
            for i, row in enumerate(self._anchor)
            for a, c in enumerate(row)
            if c
        }

    def basis(self, i: int) -> Exterior:
        return self.elem.basis(self.n, self.m, i)

    def dual_basis(self, i: int) -> Exterior:
        return self.dual_elem.basis(self.n, self.m, i)

    def with_changes(self, brackets=None, anchor=None) -> "DullStructure":
        return DullStructure(
            self.side, self.n, self.m,
            self.brackets() if brackets is None else brackets,
            self.anchors() if anchor is None else anchor,
        )

    def __eq__(self, other):
        if not isinstance(other, DullStructure):
            return NotImplemented
        return (self.side, self.n, self.m, self._table, self._anchor) == (
            other.side, other.n, other.m, other._table, other._anchor)

    def __hash__(self):
        return hash((self.side, self.n, self.m, str(self.brackets())))

    def __repr__(self):
        return f"DullStructure(side={self.side!r}, n={self.n}, m={self.m})"

    # checks

    def _require_side(self, t: Exterior, what: str):
        if not isinstance(t, self.elem):
            raise TypeError(f"{what} must live on side {self.side}")

    def _require_degree_one(self, x: Exterior):
        self._require_side(x, "section")
        if any(d != 1 for d in x.degrees()):
            raise ValueError(f"expected a degree-1 section, got degrees {x.degrees()}")

    # operations

    def vector_field(self, x: Exterior) -> list:
        """Components P^alpha of the anchor image a(x) = P^alpha d/dq^alpha."""
        self._require_degree_one(x)
        out = [Poly.zero(self.m) for _ in range(self.m)]
        for mask, g in x.items():
            i = mask.bit_length() - 1
            for a in range(self.m):
                c = self._anchor[i][a]
                if c:
                    out[a] = out[a] + g * c
        return out

    def anchor_apply(self, x: Exterior, f: Poly) -> Poly:
        total = Poly.zero(self.m)
        for a, comp in enumerate(self.vector_field(x)):
            if comp:
                total = total + comp * pdiff(f, a + 1)
        return total

    def _basis_anchor(self, i: int, f: Poly) -> Poly:
        total = Poly.zero(self.m)
        for a in range(self.m):
            c = self._anchor[i][a]
            if c:
                total = total + c * pdiff(f, a + 1)
        return total

    def bracket_sections(self, x: Exterior, y: Exterior) -> Exterior:
        self._require_degree_one(x)
        self._require_degree_one(y)
        out = self.elem.zero(self.n, self.m)
        for mx, f in x.items():
            i = mx.bit_length() - 1
            for my, g in y.items():
                j = my.bit_length() - 1
                out = out + self._basis_brackets[i][j] * (f * g)
                ag = self._basis_anchor(i, g)
                if ag:
                    out = out + self.elem.from_masks(self.n, self.m, {my: f * ag})
                bf = self._basis_anchor(j, f)
                if bf:
                    out = out - self.elem.from_masks(self.n, self.m, {mx: g * bf})
        return out

    def d_function(self, f: Poly) -> Exterior:
        """d(f) = sum_i a(e_i)(f) times the dual basis element i."""
        comps = {}
        for i in range(self.n):
            v = self._basis_anchor(i, f)
            if v:
                comps[1 << i] = v
        return self.dual_elem.from_masks(self.n, self.m, comps)

    def _d_monomial(self, mask: int) -> Exterior:
        hit = self._d_cache.get(mask)
        if hit is not None:
            return hit
        n, m = self.n, self.m
        if mask == 0:
            out = self.dual_elem.zero(n, m)
        elif mask.bit_count() == 1:
            i = mask.bit_length() - 1
            comps = {}
            for j in range(n):
                for k in range(j + 1, n):
                    c = self._table[j][k][i]
                    if c:
                        comps[(1 << j) | (1 << k)] = -c
            out = self.dual_elem.from_masks(n, m, comps)
        else:
            low = mask & -mask
            rest = mask ^ low
            first = self.dual_elem.from_masks(n, m, {low: Poly.one(m)})
            tail = self.dual_elem.from_masks(n, m, {rest: Poly.one(m)})
            out = wedge(self._d_monomial(low), tail) - wedge(first, self._d_monomial(rest))
        self._d_cache[mask] = out
        return out

    def differential(self, w: Exterior) -> Exterior:
        """The degree +1 derivation on the dual side; d squared need not vanish."""
        if not isinstance(w, self.dual_elem):
            raise TypeError(f"differential of a structure on {self.side} acts on side {_dual_side(self.side)}")
        n, m = self.n, self.m
        out = self.dual_elem.zero(n, m)
        for mask, f in w.items():
            if mask.bit_count() == n:
                continue
            df = self.d_function(f)
            if df:
                out = out + wedge(df, self.dual_elem.from_masks(n, m, {mask: Poly.one(m)}))
            dm = self._d_monomial(mask)
            if dm:
                out = out + dm * f
        return out

    def _bracket_monomials(self, p: int, q: int) -> Exterior:
        key = (p, q)
        hit = self._schouten_cache.get(key)
        if hit is not None:
            return hit
        n, m = self.n, self.m
        if p == 0 or q == 0:
            out = self.elem.zero(n, m)
        elif p.bit_count() == 1:
            i = p.bit_length() - 1
            out = self.elem.zero(n, m)
            bits = indices_of(q)
            for t, j in enumerate(bits):
                br = self._basis_brackets[i][j - 1]
                if not br:
                    continue
                pre = self.elem.from_masks(n, m, {_mask(bits[:t]): Poly.one(m)})
                post = self.elem.from_masks(n, m, {_mask(bits[t + 1:]): Poly.one(m)})
                out = out + wedge(wedge(pre, br), post)
        else:
            low = p & -p
            rest = p ^ low
            pdeg, qdeg = p.bit_count(), q.bit_count()
            first = self.elem.from_masks(n, m, {low: Poly.one(m)})
            tail = self.elem.from_masks(n, m, {rest: Poly.one(m)})
            out = wedge(first, self._bracket_monomials(rest, q))
            term = wedge(self._bracket_monomials(low, q), tail)
            out = out - term if ((pdeg - 1) * (qdeg - 1)) & 1 else out + term
        self._schouten_cache[key] = out
        return out

    def schouten(self, r1: Exterior, r2: Exterior) -> Exterior:
        """Graded biderivation extension of the bracket to the whole exterior algebra."""
        self._require_side(r1, "first argument")
        self._require_side(r2, "second argument")
        n, m = self.n, self.m
        out = self.elem.zero(n, m)
        for p, f in r1.items():
            pdeg = p.bit_count()
            P = self.elem.from_masks(n, m, {p: Poly.one(m)})
            for q, g in r2.items():
                qdeg = q.bit_count()
                Q = self.elem.from_masks(n, m, {q: Poly.one(m)})
                core = self._bracket_monomials(p, q)
                if core:
                    out = out + core * (f * g)
                if pdeg and not g.is_constant():
                    # [P, g] = (-1)^(p-1) i_{dg} P
                    pg = contract(self.d_function(g), P)
                    if pg:
                        term = wedge(pg, Q) * f
                        out = out + term if pdeg & 1 else out - term
                if qdeg and not f.is_constant():
                    # [f, Q] = -i_{df} Q, entering with sign (-1)^(p(q-1))
                    fq = contract(self.d_function(f), Q)
                    if fq:
                        term = wedge(fq, P) * g
                        out = out + term if (pdeg * (qdeg - 1)) & 1 else out - term
        return out

    def lie_derivative(self, x: Exterior, t: Exterior) -> Exterior:
        """L_x t: the bracket on the same side, the Cartan formula on the other."""
        self._require_degree_one(x)
        if isinstance(t, self.elem):
            return self.schouten(x, t)
        if isinstance(t, self.dual_elem):
            return self.differential(contract(x, t)) + contract(x, self.differential(t))
        raise TypeError("lie_derivative needs an exterior element")

    def lie_volume(self, x: Exterior) -> Poly:
        """Divergence of the anchor image of x against dq^1 ^ ... ^ dq^m."""
        total = Poly.zero(self.m)
        for a, comp in enumerate(self.vector_field(x)):
            if comp:
                total = total + pdiff(comp, a + 1)
        return total


def _mask(indices) -> int:
    out = 0
    for i in indices:
        out |= 1 << (i - 1)
    return out


# Functional spellings of the methods.

def anchor_apply(S: DullStructure, x: Exterior, f: Poly) -> Poly:
    return S.anchor_apply(x, f)


def bracket_sections(S: DullStructure, x: Exterior, y: Exterior) -> Exterior:
    return S.bracket_sections(x, y)


def schouten(S: DullStructure, r1: Exterior, r2: Exterior) -> Exterior:
    return S.schouten(r1, r2)


def differential(S: DullStructure, w: Exterior) -> Exterior:
    return S.differential(w)


def lie_derivative(S: DullStructure, x: Exterior, t: Exterior) -> Exterior:
    return S.lie_derivative(x, t)


def lie_volume(S: DullStructure, x: Exterior) -> Poly:
    return S.lie_volume(x)


__all__ = [
    "DullStructure", "anchor_apply", "bracket_sections", "schouten", "differential",
    "lie_derivative", "lie_volume", "MultiVec", "Form",
]
