import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from protodirac.catalog import builtin, random_3d_solution, sl2_proto
from protodirac.courant import SplitSection
from protodirac.dirac import (
    PIECE_AXIOM,
    apply_dirac,
    build_dirac,
    characteristic,
    characteristic_report,
    function_probes,
    is_generating,
    rescale_invariance,
    spinor_matrix,
    square_decomposition,
)
from protodirac.exterior import MultiVec, basis_elements
from protodirac.proto import probes
from protodirac.ring import Poly
from protodirac.spinor import SpinorMatrix
from strategies import point_constants


def test_dirac_on_sl2_proto():
    P = builtin("sl2-proto")
    D = build_dirac(P)
    assert apply_dirac(D, P.vec(1)) == -P.vec(2, 3)
    assert D(MultiVec.one(3)) == P.vec(1, 2, 3)


def test_abelian_dirac_vanishes():
    P = builtin("abelian")
    D = build_dirac(P)
    for v in basis_elements(MultiVec, 3):
        assert D(v).is_zero()


@settings(max_examples=20, deadline=None)
@given(point_constants(4))
def test_dirac_is_odd(P):
    D = build_dirac(P)
    for v in basis_elements(MultiVec, 4):
        assert all((d - v.degree) % 2 == 1 for d in D(v).degrees())


def test_component_shifts():
    D = build_dirac(builtin("sl2-proto"))
    shifts = {c.label: c.shift for c in D.components}
    assert sorted(shifts.values()) == [-3, -1, -1, 1, 1, 3]
    assert D.component("tau").shift == 3
    with pytest.raises(KeyError):
        D.component("nothing")


@settings(max_examples=20, deadline=None)
@given(point_constants(3))
def test_square_pieces_always_add_up(P):
    # raises on mismatch; holds with or without the axioms
    for v in basis_elements(MultiVec, 3):
        dec = square_decomposition(P, v)
        assert dec.total() == build_dirac(P)(build_dirac(P)(v))


@pytest.mark.parametrize("name", ["abelian", "sl2-proto", "lu-sl2", "poisson-plane"])
def test_square_pieces_vanish_on_builtins(name):
    P = builtin(name)
    f = characteristic(P)
    for v in probes(P, "A", 1):
        dec = square_decomposition(P, v)
        assert dec.nonzero_operator_pieces() == []
        assert dec.pieces["deg0-scalar"] == v * f


def test_scalar_piece_on_unit():
    P = builtin("sl2-proto")
    assert square_decomposition(P, MultiVec.one(3)).pieces["deg0-scalar"] == MultiVec.scalar(-1, 3)


def test_characteristic_values():
    assert characteristic(builtin("sl2-proto")) == -1
    assert characteristic(builtin("lu-sl2")) == 0
    assert characteristic(builtin("abelian")) == 0
    assert characteristic(sl2_proto(tau_bar=3, phi_bar=Fraction(1, 3))) == -1


@pytest.mark.parametrize("name", ["abelian", "sl2-proto", "lu-sl2", "poisson-plane", "euclidean-demo"])
def test_characteristic_report_consistent(name):
    rep = characteristic_report(builtin(name))
    assert rep.consistent
    assert rep.to_dict()["consistent"] is True


def test_characteristic_on_twisted_samples():
    rng = random.Random(11)
    for _ in range(5):
        assert characteristic_report(random_3d_solution(rng)).consistent


@pytest.mark.parametrize("name", ["abelian", "sl2-proto", "lu-sl2", "poisson-plane"])
def test_builtins_are_generating(name):
    assert is_generating(builtin(name)).passed


def test_scaled_tau_breaks_generation_and_blames_an_axiom():
    rep = is_generating(sl2_proto(tau_bar=2))
    assert not rep.passed
    c = rep.result("condition-c")
    assert not c.passed
    assert "likely failing: axiom-3" in c.description
    assert set(PIECE_AXIOM.values()) == {f"axiom-{k}" for k in range(1, 6)}


def test_probe_degree_validated():
    with pytest.raises(ValueError):
        is_generating(builtin("abelian"), probe_degree=3)


def test_rescaling_over_a_point_changes_nothing():
    P = builtin("sl2-proto")
    res = rescale_invariance(P, Poly.const(3, 0), Poly.const(-2, 0))
    assert res.difference.is_zero()
    assert res.to_dict()["difference"] == "0"


@pytest.mark.parametrize("u,w", [("q1", "2*q2"), ("q1*q2", "0"), ("0", "q1*q2")])
def test_rescaling_on_poisson_plane(u, w):
    from protodirac.ring import parse_poly
    P = builtin("poisson-plane")
    assert rescale_invariance(P, parse_poly(u, 2), parse_poly(w, 2)).difference.is_zero()


def test_rescaling_is_not_trivially_zero():
    # the rescaled data do move: X0 changes by d_*(u + w), xi0 by d_A(u - w)
    P = builtin("poisson-plane")
    u = P.coord(1)
    assert not P.S_star.d_function(u).is_zero()


@settings(max_examples=20, deadline=None)
@given(point_constants(3))
def test_library_matrix_matches_independent_oracle(P):
    assert spinor_matrix(P, "dirac") == spinor_matrix(P, "dirac-oracle")


def test_spinor_matrix_of_clifford_and_callable():
    P = builtin("sl2-proto")
    c = spinor_matrix(P, SplitSection.of(P.vec(1)))
    assert c @ c == SpinorMatrix.zero(3)
    ident = spinor_matrix(P, lambda v: v)
    assert ident == SpinorMatrix.identity(3)
    with pytest.raises(ValueError):
        spinor_matrix(P, "nonsense")
    with pytest.raises(ValueError):
        spinor_matrix(builtin("poisson-plane"))


def test_function_probes():
    assert function_probes(builtin("sl2-proto")) == [Poly.one(0)]
    assert len(function_probes(builtin("poisson-plane"), 2)) == 6
