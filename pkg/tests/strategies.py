"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from protodirac.catalog import make_proto
from protodirac.dull import DullStructure
from protodirac.exterior import Form, MultiVec
from protodirac.ring import Poly

small_rationals = st.builds(
    Fraction,
    st.integers(min_value=-4, max_value=4),
    st.integers(min_value=1, max_value=3),
)


@st.composite
def polys(draw, m: int, max_degree: int = 2, max_terms: int = 3):
    if m == 0:
        return Poly.const(draw(small_rationals), 0)
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = tuple(draw(st.integers(0, max_degree)) for _ in range(m))
        terms[exps] = draw(small_rationals)
    return Poly(m, terms)


@st.composite
def elements(draw, cls, n: int, m: int = 0, degree=None, max_terms: int = 4):
    comps = {}
    masks = range(1 << n)
    if degree is not None:
        masks = [k for k in masks if bin(k).count("1") == degree]
    masks = list(masks)
    for _ in range(draw(st.integers(0, max_terms))):
        comps[draw(st.sampled_from(masks))] = draw(polys(m, max_degree=1, max_terms=2))
    return cls.from_masks(n, m, comps)


def multivecs(n, m=0, degree=None):
    return elements(MultiVec, n, m, degree)


def forms(n, m=0, degree=None):
    return elements(Form, n, m, degree)


@st.composite
def dull_structures(draw, side: str, n: int, m: int = 0, density: float = 0.4):
    """Random structure constants with no axioms imposed."""
    brackets = {}
    for i, j in combinations(range(1, n + 1), 2):
        row = {}
        for k in range(1, n + 1):
            if draw(st.floats(0, 1)) < density:
                row[k] = draw(polys(m, max_degree=1, max_terms=2))
        if row:
            brackets[(i, j)] = row
    anchor = {}
    for i in range(1, n + 1):
        for alpha in range(1, m + 1):
            if draw(st.booleans()):
                anchor[(i, alpha)] = draw(polys(m, max_degree=1, max_terms=2))
    return DullStructure(side, n, m, brackets, anchor)


@st.composite
def point_constants(draw, n: int):
    """Random rational tables for make_proto over a point."""
    def table():
        out = {}
        for i, j in combinations(range(1, n + 1), 2):
            for k in range(1, n + 1):
                if draw(st.booleans()):
                    out[(i, j, k)] = draw(small_rationals)
        return out

    def three():
        return {t: draw(small_rationals) for t in combinations(range(1, n + 1), 3) if draw(st.booleans())}

    return make_proto(n, a=table(), b=table(), tau=three(), phi=three(), name="random")
