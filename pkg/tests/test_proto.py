import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from protodirac.catalog import builtin, random_3d_solution, sl2_proto
from protodirac.exterior import Form, MultiVec
from protodirac.proto import (
    check_axioms,
    identity_suite,
    kl_trace,
    kl_trace_formula,
    literal_jacobi_term,
    modular_closed_form,
    modular_definitional,
    q_operators,
)
from strategies import point_constants

POINT = ["abelian", "sl2-proto", "lu-sl2"]


@pytest.fixture(scope="module")
def twisted():
    rng = random.Random(7)
    return [random_3d_solution(rng) for _ in range(6)]


def test_modular_elements_examples():
    for name in ("abelian", "sl2-proto"):
        md = modular_closed_form(builtin(name))
        assert md.X0.is_zero() and md.xi0.is_zero()
    md = modular_closed_form(builtin("lu-sl2"))
    assert md.X0 == MultiVec.basis(3, 0, 1) * Fraction(1, 2)
    assert md.xi0.is_zero()


@pytest.mark.parametrize("name", POINT + ["poisson-plane", "euclidean-demo"])
def test_modular_paths_agree_on_builtins(name):
    P = builtin(name)
    assert modular_closed_form(P) == modular_definitional(P)


@settings(max_examples=30, deadline=None)
@given(point_constants(4))
def test_modular_paths_agree_without_axioms(P):
    assert modular_closed_form(P) == modular_definitional(P)


def test_sl2_proto_passes_every_axiom():
    assert check_axioms(builtin("sl2-proto")).passed
    assert check_axioms(builtin("abelian")).passed


def test_broken_tau_phi_product_fails():
    P = sl2_proto(tau_bar=2, phi_bar=1)
    rep = check_axioms(P)
    assert not rep.passed
    assert rep.failing()


def test_failure_carries_argument_and_residual():
    rep = check_axioms(sl2_proto(tau_bar=2, phi_bar=1))
    failing = rep.result(rep.failing()[0])
    assert failing.failures and failing.failures[0].args
    assert not failing.failures[0].value.is_zero()


def test_q_operators_vanish_without_phi():
    P = builtin("lu-sl2")
    for i in range(1, 4):
        assert q_operators(P, "Q1", P.vec(i)).is_zero()


def test_q_operators_check_sides():
    P = builtin("sl2-proto")
    with pytest.raises(TypeError):
        q_operators(P, "Q1", P.form(1))
    with pytest.raises(ValueError):
        q_operators(P, "Q5", P.vec(1))


def test_kl_trace_examples():
    lu = builtin("lu-sl2")
    assert kl_trace(lu, (lu.vec(1), lu.vec(2))).is_zero()
    P = builtin("sl2-proto")
    for i in range(1, 4):
        assert kl_trace(P, (P.vec(i), P.vec(i))).is_zero()
    assert kl_trace(P, (P.vec(1), P.vec(2))) == kl_trace_formula(P, (P.vec(1), P.vec(2)))


@settings(max_examples=25, deadline=None)
@given(point_constants(5))
def test_kl_trace_formula_holds_without_axioms(P):
    for i in range(1, 4):
        for j in range(i + 1, 6):
            assert kl_trace(P, (P.vec(i), P.vec(j))) == kl_trace_formula(P, (P.vec(i), P.vec(j)))
            assert kl_trace(P, (P.form(i), P.form(j))) == kl_trace_formula(P, (P.form(i), P.form(j)))


def test_twisted_samples_pass_axioms(twisted):
    for P in twisted:
        assert check_axioms(P).passed, P.name


def test_full_contraction_reading_disagrees_with_jacobiator(twisted):
    # the literal full contraction of phi into d_*(x^y^z) vanishes in rank 3,
    # while the Jacobiator of a twisted sample equals phibar times X0
    e = [MultiVec.basis(3, 0, i) for i in (1, 2, 3)]
    seen_nonzero = False
    for P in twisted:
        b = P.S_A.bracket_sections
        jac = b(b(e[0], e[1]), e[2]) + b(b(e[1], e[2]), e[0]) + b(b(e[2], e[0]), e[1])
        assert literal_jacobi_term(P.phi, P.d_star, *e).is_zero()
        assert jac == P.modular.X0 * P.phi.coeff((1, 2, 3))
        seen_nonzero |= not jac.is_zero()
    assert seen_nonzero


def test_identity_suite_on_twisted_sample(twisted):
    assert identity_suite(twisted[0]).passed


def test_report_renderings():
    rep = check_axioms(sl2_proto(tau_bar=2))
    text = rep.render_text()
    assert "FAIL" in text
    data = rep.to_dict()
    assert data["passed"] is False
    assert {r["name"] for r in data["results"]} == {f"axiom-{k}" for k in range(1, 6)}


def test_test_function_degree_validated():
    with pytest.raises(ValueError):
        check_axioms(builtin("abelian"), test_function_degree=2)
