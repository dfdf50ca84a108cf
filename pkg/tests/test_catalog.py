import random
from fractions import Fraction

import pytest

from protodirac.catalog import (
    bialgebra_closed_form,
    builtin,
    rank3_constraints,
    double_bracket,
    frame_is_isotropic,
    perturb,
    random_3d_solution,
    random_frame,
    three_d_family,
)
from protodirac.dirac import characteristic


def test_sl2_proto_constants():
    P = builtin("sl2-proto")
    assert P.S_A.constant(1, 2, 2) == 2
    assert P.S_A.constant(1, 3, 3) == -2
    assert P.S_A.constant(2, 3, 1) == 1
    assert P.S_star.constant(1, 2, 2) == Fraction(1, 2)
    assert P.S_star.constant(1, 3, 3) == Fraction(-1, 2)
    assert P.S_star.constant(2, 3, 1) == 1
    assert P.tau_phi() == 1


def test_abelian_is_empty():
    P = builtin("abelian")
    assert not P.S_A.brackets() and not P.S_star.brackets()
    assert P.tau.is_zero() and P.phi.is_zero()


def test_lu_sl2_constants():
    P = builtin("lu-sl2")
    assert P.S_star.constant(1, 2, 2) == Fraction(1, 4)
    assert P.S_star.constant(1, 3, 3) == Fraction(1, 4)
    assert P.tau.is_zero() and P.phi.is_zero()


def test_builtin_errors():
    with pytest.raises(ValueError):
        builtin("nope")
    with pytest.raises(ValueError):
        builtin("sl2-proto:tau=2")
    with pytest.raises(ValueError):
        builtin("3d-family:zz=1")
    with pytest.raises(ValueError):
        builtin("3d-family:tau")


def test_three_d_family_parameters():
    P = builtin("3d-family:a23_1=1,b1_23=1,tau=1,phi=1")
    assert P.S_A.constant(2, 3, 1) == 1
    assert P.S_star.constant(2, 3, 1) == 1
    assert P.tau_phi() == 1
    assert three_d_family({}).tau.is_zero()


@pytest.mark.parametrize("name", ["abelian", "sl2-proto", "lu-sl2"])
def test_rank3_constraints_hold_on_point_builtins(name):
    assert all(c == 0 for c in rank3_constraints(builtin(name)))


def test_first_constraint_catches_mismatched_product():
    P = builtin("3d-family:a12_2=2,a13_3=-2,a23_1=1,b2_12=1/2,b3_13=-1/2,b1_23=2,tau=1,phi=1")
    values = rank3_constraints(P)
    assert values[0] != 0


def test_bialgebra_closed_form_examples():
    assert bialgebra_closed_form(builtin("sl2-proto")) == -1
    assert bialgebra_closed_form(builtin("lu-sl2")) == 0


def test_random_frames_preserve_the_metric():
    rng = random.Random(3)
    for _ in range(10):
        assert frame_is_isotropic(random_frame(rng))


def test_double_bracket_of_sl2_proto_is_skew():
    C = double_bracket(builtin("sl2-proto"))
    for a in range(6):
        for b in range(6):
            assert all(x == -y for x, y in zip(C[a][b], C[b][a]))


def test_random_solutions_are_reproducible():
    a = random_3d_solution(random.Random(5))
    b = random_3d_solution(random.Random(5))
    assert a.S_A == b.S_A and a.S_star == b.S_star and a.tau == b.tau and a.phi == b.phi


def test_random_solutions_satisfy_constraints():
    rng = random.Random(2)
    for _ in range(5):
        P = random_3d_solution(rng)
        assert all(c == 0 for c in rank3_constraints(P))
        assert characteristic(P) == bialgebra_closed_form(P)


def test_perturb_changes_one_constant():
    rng = random.Random(0)
    P = builtin("sl2-proto")
    Q, desc = perturb(P, rng)
    assert desc
    assert (Q.S_A, Q.S_star, Q.tau, Q.phi) != (P.S_A, P.S_star, P.tau, P.phi)
