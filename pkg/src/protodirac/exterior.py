"""Exterior algebras of A and A* with polynomial coefficients.

Basis monomials are bitmasks: bit i-1 set means the factor with index i is
present, factors always written in increasing order.  ``MultiVec`` lives in
the exterior algebra of A (basis e_i), ``Form`` in that of A* (basis e^i).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .ring import Poly


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return mask


def indices_of(mask: int) -> tuple:
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@lru_cache(maxsize=None)
def wedge_sign(a: int, b: int) -> int:
    """Sign of e_a ^ e_b relative to e_(a|b); 0 when they overlap."""
    if a & b:
        return 0
    swaps = 0
    rest = b
    while rest:
        low = rest & -rest
        swaps += (a & ~((low << 1) - 1)).bit_count()
        rest ^= low
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=None)
def contraction(c: int, v: int):
    """Contract the covector monomial c into the vector monomial v.

    The factors of c act one at a time, lowest index first.  Returns
    (sign, remaining mask) or None if the result vanishes.
    """
    if c & ~v:
        return None
    sign, rest, todo = 1, v, c
    while todo:
        low = todo & -todo
        if (rest & (low - 1)).bit_count() & 1:
            sign = -sign
        rest ^= low
        todo ^= low
    return sign, rest


def _index_key(key) -> int:
    if isinstance(key, int):
        return key
    return mask_of(key)


class Exterior:
    """Shared implementation; use ``MultiVec`` or ``Form``."""

    side = ""
    letter = ""
    __slots__ = ("n", "m", "_comps", "_hash")

    def __init__(self, n: int, m: int, comps: Mapping | None = None):
        self.n = n
        self.m = m
        full = (1 << n) - 1
        clean: dict = {}
        for key, c in (comps or {}).items():
            if isinstance(key, int):
                mask, sign = key, 1
            else:
                idx = tuple(key)
                if len(set(idx)) != len(idx):
                    continue
                if any(not 1 <= i <= n for i in idx):
                    raise ValueError(f"index out of range 1..{n}: {idx}")
                mask = mask_of(idx)
                sign = _sort_sign(idx)
            if mask & ~full:
                raise ValueError(f"mask {mask:b} exceeds rank {n}")
            c = _as_poly(c, m) * sign
            if c:
                s = clean.get(mask)
                clean[mask] = c if s is None else s + c
        self._comps = {k: v for k, v in clean.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, n: int, m: int, comps: dict):
        e = object.__new__(cls)
        e.n, e.m, e._comps, e._hash = n, m, comps, None
        return e

    # constructors

    @classmethod
    def zero(cls, n: int, m: int = 0):
        return cls._raw(n, m, {})

    @classmethod
    def scalar(cls, value, n: int, m: int = 0):
        p = _as_poly(value, m)
        return cls._raw(n, m, {0: p} if p else {})

    @classmethod
    def one(cls, n: int, m: int = 0):
        return cls.scalar(1, n, m)

    @classmethod
    def basis(cls, n: int, m: int, *indices: int):
        """Wedge of basis elements in the given order, e.g. basis(3, 0, 2, 1) = -e1^e2."""
        return cls(n, m, {tuple(indices): 1})

    @classmethod
    def top(cls, n: int, m: int = 0):
        return cls._raw(n, m, {(1 << n) - 1: Poly.one(m)})

    @classmethod
    def from_masks(cls, n: int, m: int, comps: Mapping[int, Poly]):
        return cls._raw(n, m, {k: v for k, v in comps.items() if v})

    # access

    def items(self):
        return self._comps.items()

    def coeff(self, key) -> Poly:
        return self._comps.get(_index_key(key), Poly.zero(self.m))

    @property
    def components(self) -> dict:
        return {indices_of(k): v for k, v in self._comps.items()}

    def is_zero(self) -> bool:
        return not self._comps

    def __bool__(self):
        return bool(self._comps)

    def degrees(self) -> list:
        return sorted({k.bit_count() for k in self._comps})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous element with degrees {degs}")
        return degs[0] if degs else 0

    def part(self, k: int):
        return self._raw(self.n, self.m, {s: c for s, c in self._comps.items() if s.bit_count() == k})

    def scalar_part(self) -> Poly:
        return self._comps.get(0, Poly.zero(self.m))

    # arithmetic

    def _check(self, other):
        if type(other) is not type(self):
            raise TypeError(f"side mismatch: {self.side} vs {getattr(other, 'side', type(other).__name__)}")
        if other.n != self.n or other.m != self.m:
            raise ValueError(f"shape mismatch: (n={self.n}, m={self.m}) vs (n={other.n}, m={other.m})")

    def __add__(self, other):
        self._check(other)
        if not other._comps:
            return self
        if not self._comps:
            return other
        out = dict(self._comps)
        for k, v in other._comps.items():
            s = out.get(k)
            if s is None:
                out[k] = v
            else:
                s = s + v
                if s:
                    out[k] = s
                else:
                    del out[k]
        return self._raw(self.n, self.m, out)

    def __neg__(self):
        return self._raw(self.n, self.m, {k: -v for k, v in self._comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Multiplication by a function or a rational."""
        if isinstance(other, Exterior):
            return NotImplemented
        p = _as_poly(other, self.m)
        if not p:
            return self.zero(self.n, self.m)
        if p.is_constant():
            c = p.constant_value()
            if c == 1:
                return self
            return self._raw(self.n, self.m, {k: v * c for k, v in self._comps.items()})
        out = {}
        for k, v in self._comps.items():
            w = v * p
            if w:
                out[k] = w
        return self._raw(self.n, self.m, out)

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, Exterior):
            return NotImplemented
        return (
            type(self) is type(other)
            and self.n == other.n
            and self.m == other.m
            and self._comps == other._comps
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.side, self.n, self.m, frozenset(self._comps.items())))
        return self._hash

    def map_coeffs(self, fn):
        out = {}
        for k, v in self._comps.items():
            w = fn(v)
            if w:
                out[k] = w
        return self._raw(self.n, self.m, out)

    # rendering and serialization

    def _monomial_name(self, mask: int) -> str:
        return self.letter + "{" + ",".join(str(i) for i in indices_of(mask)) + "}"

    def __str__(self):
        if not self._comps:
            return "0"
        parts = []
        for mask in sorted(self._comps, key=lambda k: (k.bit_count(), indices_of(k))):
            c = self._comps[mask]
            text = str(c)
            if mask == 0:
                parts.append(text)
                continue
            name = self._monomial_name(mask)
            if len(c.items()) > 1:
                parts.append(f"({text})·{name}")
            elif text == "1":
                parts.append(name)
            elif text == "-1":
                parts.append("-" + name)
            else:
                parts.append(f"{text}·{name}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def to_json(self) -> list:
        return [
            {"indices": list(indices_of(mask)), "coeff": self._comps[mask].to_json()}
            for mask in sorted(self._comps, key=lambda k: (k.bit_count(), indices_of(k)))
        ]

    @classmethod
    def from_json(cls, data: list, n: int, m: int):
        comps = {}
        for item in data:
            idx = tuple(item["indices"])
            if list(idx) != sorted(set(idx)):
                raise ValueError(f"indices must be strictly increasing: {list(idx)}")
            comps[idx] = Poly.from_json(item["coeff"], m)
        return cls(n, m, comps)


class MultiVec(Exterior):
    """Element of the exterior algebra of A."""

    side = "A"
    letter = "e"
    __slots__ = ()

    @property
    def dual_type(self):
        return Form


class Form(Exterior):
    """Element of the exterior algebra of A*."""

    side = "A*"
    letter = "e^"
    __slots__ = ()

    @property
    def dual_type(self):
        return MultiVec


def _sort_sign(idx: tuple) -> int:
    sign = 1
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if idx[a] > idx[b]:
                sign = -sign
    return sign


def _as_poly(value, m: int) -> Poly:
    if isinstance(value, Poly):
        if value.num_vars != m:
            raise ValueError(f"coefficient has {value.num_vars} variables, expected {m}")
        return value
    return Poly.const(value, m)


def element_type(side: str):
    return {"A": MultiVec, "A*": Form}[side]


def wedge(a: Exterior, b: Exterior) -> Exterior:
    """Exterior product of two elements on the same side."""
    a._check(b)
    out: dict = {}
    for ka, va in a._comps.items():
        for kb, vb in b._comps.items():
            s = wedge_sign(ka, kb)
            if not s:
                continue
            p = va * vb
            if s < 0:
                p = -p
            k = ka | kb
            prev = out.get(k)
            out[k] = p if prev is None else prev + p
    return a._raw(a.n, a.m, {k: v for k, v in out.items() if v})


def contract(c: Exterior, v: Exterior) -> Exterior:
    """Interior product of c (one side) into v (the other side).

    For c = c1^...^ck the factors act in order: c1 first, ck last.
    """
    if type(c) is type(v) or not isinstance(c, Exterior) or not isinstance(v, Exterior):
        raise TypeError("contract needs one element from each side")
    if c.n != v.n or c.m != v.m:
        raise ValueError(f"shape mismatch: (n={c.n}, m={c.m}) vs (n={v.n}, m={v.m})")
    out: dict = {}
    for kc, vc in c._comps.items():
        for kv, vv in v._comps.items():
            r = contraction(kc, kv)
            if r is None:
                continue
            s, k = r
            p = vc * vv
            if s < 0:
                p = -p
            prev = out.get(k)
            out[k] = p if prev is None else prev + p
    return v._raw(v.n, v.m, {k: w for k, w in out.items() if w})


def pairing(c: Exterior, v: Exterior) -> Poly:
    """Full contraction of equal-degree homogeneous elements into a function."""
    if not c.is_homogeneous() or not v.is_homogeneous():
        raise ValueError("pairing needs homogeneous elements")
    if c and v and c.degree != v.degree:
        raise ValueError(f"degree mismatch in pairing: {c.degree} vs {v.degree}")
    return contract(c, v).scalar_part()


def basis_elements(cls, n: int, m: int = 0, degree: int | None = None) -> list:
    """All basis monomials (optionally of one degree), in bitmask order."""
    out = []
    for mask in range(1 << n):
        if degree is None or mask.bit_count() == degree:
            out.append(cls._raw(n, m, {mask: Poly.one(m)}))
    return out
