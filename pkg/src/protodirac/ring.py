"""Exact rationals and sparse multivariate polynomials over Q.

Polynomials live in Q[q1, ..., qm].  With m = 0 they are plain rational
constants, which is the point-base case used by most examples.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Fraction
Scalar = Union[int, Fraction]


def as_rational(value) -> Fraction:
    """Parse an int, Fraction or exact string such as "3/2" or "-0.25"."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {value!r}") from exc
    raise TypeError(f"cannot read {type(value).__name__} as an exact rational")


def rational_str(r: Fraction) -> str:
    """Canonical "p/q" text, "p" when the denominator is 1."""
    return str(r)


class Poly:
    """Immutable sparse polynomial: exponent tuple -> nonzero Fraction."""

    __slots__ = ("num_vars", "_terms", "_hash")

    def __init__(self, num_vars: int, terms: Mapping[tuple, Scalar] | None = None):
        if num_vars < 0:
            raise ValueError("num_vars must be nonnegative")
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != num_vars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent tuple {exps} for {num_vars} variables")
            c = as_rational(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self.num_vars = num_vars
        self._terms = {k: v for k, v in clean.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, num_vars: int, terms: dict) -> "Poly":
        p = object.__new__(cls)
        p.num_vars = num_vars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Scalar, num_vars: int = 0) -> "Poly":
        c = as_rational(c)
        return cls._raw(num_vars, {(0,) * num_vars: c} if c else {})

    @classmethod
    def zero(cls, num_vars: int = 0) -> "Poly":
        return cls._raw(num_vars, {})

    @classmethod
    def one(cls, num_vars: int = 0) -> "Poly":
        return cls.const(1, num_vars)

    @classmethod
    def var(cls, index: int, num_vars: int) -> "Poly":
        """The coordinate q^index, with 1-based index."""
        if not 1 <= index <= num_vars:
            raise ValueError(f"variable index {index} out of range 1..{num_vars}")
        exps = [0] * num_vars
        exps[index - 1] = 1
        return cls._raw(num_vars, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Iterable[int], coeff: Scalar = 1) -> "Poly":
        exps = tuple(exps)
        return cls(len(exps), {exps: coeff})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0,) * self.num_vars, Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.num_vars != self.num_vars:
                raise ValueError(
                    f"variable-count mismatch: {self.num_vars} vs {other.num_vars}"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly.const(other, self.num_vars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Poly._raw(self.num_vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.num_vars, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return Poly.zero(self.num_vars)
            return Poly._raw(self.num_vars, {k: v * other for k, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return Poly.zero(self.num_vars)
        out: dict = {}
        for ka, va in self._terms.items():
            for kb, vb in other._terms.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                out[k] = out.get(k, 0) + va * vb
        return Poly._raw(self.num_vars, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out = Poly.one(self.num_vars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.num_vars == other.num_vars and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == Poly.const(other, self.num_vars)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num_vars, frozenset(self._terms.items())))
        return self._hash

    def pdiff(self, var_index: int) -> "Poly":
        return pdiff(self, var_index)

    def evaluate(self, point: Iterable[Scalar]) -> Fraction:
        point = [as_rational(x) for x in point]
        if len(point) != self.num_vars:
            raise ValueError("point has the wrong number of coordinates")
        total = Fraction(0)
        for exps, c in self._terms.items():
            term = c
            for x, e in zip(point, exps):
                term *= x**e
            total += term
        return total

    def sorted_terms(self) -> list:
        """Terms in a fixed order: by total degree, then lexicographically."""
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), tuple(-e for e in kv[0])))

    def to_json(self) -> list:
        return [
            {"exponents": list(exps), "coeff": rational_str(c)}
            for exps, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data, num_vars: int) -> "Poly":
        """Read the term-list form; a bare rational is accepted as a constant."""
        if isinstance(data, (str, int)) and not isinstance(data, bool):
            return cls.const(as_rational(data), num_vars)
        if not isinstance(data, list):
            raise ValueError("polynomial must be a list of terms or a rational string")
        terms: dict = {}
        for item in data:
            if not isinstance(item, dict) or set(item) != {"exponents", "coeff"}:
                raise ValueError("each term needs exactly 'exponents' and 'coeff'")
            exps = tuple(item["exponents"])
            if len(exps) != num_vars or not all(isinstance(e, int) and e >= 0 for e in exps):
                raise ValueError(f"bad exponents {list(exps)} for {num_vars} variables")
            if exps in terms:
                raise ValueError(f"repeated exponents {list(exps)}")
            terms[exps] = as_rational(item["coeff"])
        return cls(num_vars, terms)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            factors = []
            for i, e in enumerate(exps, start=1):
                if e == 1:
                    factors.append(f"q{i}")
                elif e > 1:
                    factors.append(f"q{i}^{e}")
            if not factors:
                parts.append(rational_str(c))
            elif c == 1:
                parts.append("·".join(factors))
            elif c == -1:
                parts.append("-" + "·".join(factors))
            else:
                parts.append(rational_str(c) + "·" + "·".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self.num_vars}, {self})"

    def to_text(self) -> str:
        """Plain-ASCII form that parse_poly reads back exactly."""
        if not self._terms:
            return "0"
        out = ""
        for exps, c in self.sorted_terms():
            factors = [f"q{i}" if e == 1 else f"q{i}^{e}" for i, e in enumerate(exps, start=1) if e]
            mag = abs(c)
            if factors and mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([rational_str(mag)] + factors)
            if not out:
                out = "-" + body if c < 0 else body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if a.num_vars != b.num_vars:
        raise ValueError(f"variable-count mismatch: {a.num_vars} vs {b.num_vars}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def pdiff(p: Poly, var_index: int) -> Poly:
    """Formal partial derivative with respect to q^var_index (1-based)."""
    if not 1 <= var_index <= p.num_vars:
        raise ValueError(f"variable index {var_index} out of range 1..{p.num_vars}")
    i = var_index - 1
    out = {}
    for exps, c in p.items():
        e = exps[i]
        if e:
            k = exps[:i] + (e - 1,) + exps[i + 1:]
            out[k] = c * e
    return Poly._raw(p.num_vars, out)


def parse_poly(text: str, num_vars: int) -> Poly:
    """Read expressions like "q1*q2 - 1/2*q2^2 + 3"."""
    src = text.replace(" ", "")
    if not src:
        raise ValueError("empty polynomial")
    if src[0] not in "+-":
        src = "+" + src
    pos, total = 0, Poly.zero(num_vars)
    pattern = re.compile(r"([+-])([^+-]+)")
    while pos < len(src):
        m = pattern.match(src, pos)
        if not m:
            raise ValueError(f"cannot parse polynomial {text!r}")
        sign, body = m.groups()
        term = Poly.one(num_vars)
        for factor in body.split("*"):
            fm = re.fullmatch(r"q(\d+)(?:\^(\d+))?", factor)
            if fm:
                term = term * Poly.var(int(fm.group(1)), num_vars) ** int(fm.group(2) or 1)
            else:
                term = term * as_rational(factor)
        total = total + (term if sign == "+" else -term)
        pos = m.end()
    return total
