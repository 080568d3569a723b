# tests/test_groebner.py
"""
Tests for algebra/groebner.py
Buchberger against sympy's own groebner, and the witness decision procedure.
"""

from fractions import Fraction
import random
import pytest
import sympy as sp

from algebra.cdmod import bounded_coefficient_solve
from algebra.groebner import (
    DecisionStatus,
    PolySystem,
    buchberger,
    decide,
    groebner_basis,
    is_groebner,
)


def system(*equations):
    unknowns = 1 + max((u for eq in equations for key in eq for u in key), default=0)
    return PolySystem(unknowns, [{k: Fraction(v) for k, v in eq.items()} for eq in equations])


# -------------------------------------------------------------------
# BUCHBERGER
# -------------------------------------------------------------------
@pytest.mark.parametrize("order", ["lex", "grevlex"])
def test_basis_matches_sympy(order):
    # x0^2 - 1, x0*x1 - 1
    s = system({(0, 0): 1, (): -1}, {(0, 1): 1, (): -1})
    x0, x1 = sp.symbols("x0 x1")
    expected = sp.groebner([x0**2 - 1, x0 * x1 - 1], x0, x1, order=order)
    G = groebner_basis(s, order)
    assert {sp.expand(g.as_expr()) for g in G} == {sp.expand(e) for e in expected.exprs}


def test_basis_is_groebner():
    # x0*x1 - x2, x1^2 - x0, x0*x2 - 1
    s = system({(0, 1): 1, (2,): -1}, {(1, 1): 1, (0,): -1}, {(0, 2): 1, (): -1})
    _, _, polys = s.to_ring("grevlex")
    assert is_groebner(buchberger(polys))


def test_zero_equations_are_dropped():
    s = system({(0,): 0})
    _, _, polys = s.to_ring()
    assert polys == []


def test_evaluate():
    s = system({(0, 1): 1, (): -6})
    assert s.evaluate({0: Fraction(2), 1: Fraction(3)}) == [0]
    assert not s.satisfied_by({0: Fraction(1)})


# -------------------------------------------------------------------
# DECISION
# -------------------------------------------------------------------
def test_decide_inconsistent():
    s = system({(0,): 1, (): -1}, {(0,): 1, (): -2})
    assert decide(s).status is DecisionStatus.INCONSISTENT


def test_decide_rational_point():
    # x0^2 = 4, x0*x1 = 2
    s = system({(0, 0): 1, (): -4}, {(0, 1): 1, (): -2})
    decision = decide(s)
    assert decision.status is DecisionStatus.RATIONAL
    assert s.satisfied_by(decision.assignment)
    assert decision.assignment[0] in (2, -2)


def test_decide_irrational_only():
    s = system({(0, 0): 1, (): -2})
    assert decide(s).status is DecisionStatus.NO_RATIONAL


def test_decide_free_variables_default_to_zero():
    decision = decide(system({(0, 1): 1}))
    assert decision.status is DecisionStatus.RATIONAL
    assert decision.assignment == {}


def test_decide_empty_system():
    decision = decide(PolySystem(0))
    assert decision.status is DecisionStatus.RATIONAL
    assert decision.assignment == {}


def test_decide_free_variable_needs_a_larger_value():
    # x0*x1^3 - x0*x1 - 1: x1 in {0, 1, -1} leaves -1 = 0
    s = system({(0, 1, 1, 1): 1, (0, 1): -1, (): -1})
    decision = decide(s)
    assert decision.status is DecisionStatus.RATIONAL
    assert s.satisfied_by(decision.assignment)
    assert decision.assignment[1] not in (0, 1, -1)


# -------------------------------------------------------------------
# RANDOMIZED SYSTEMS
# -------------------------------------------------------------------
def random_affine(rng, unknowns=3):
    equations = []
    for _ in range(rng.randint(1, 4)):
        eq = {(u,): rng.randint(-3, 3) for u in range(unknowns)}
        eq[()] = rng.randint(-3, 3)
        equations.append(eq)
    if rng.random() < 0.3:
        shifted = dict(equations[0])
        shifted[()] += 1
        equations.append(shifted)
    return system(*equations)


@pytest.mark.parametrize("seed", range(50))
def test_decide_agrees_with_linear_solver_on_affine_systems(seed):
    s = random_affine(random.Random(seed))
    linear = bounded_coefficient_solve(s.equations)
    decision = decide(s)
    if linear is None:
        assert decision.status is DecisionStatus.INCONSISTENT
    else:
        assert decision.status is DecisionStatus.RATIONAL
        assert s.satisfied_by(decision.assignment)


def random_quadratic(rng, unknowns=2):
    monomials = [(), (0,), (1,), (0, 0), (0, 1), (1, 1)]
    equations = []
    for _ in range(rng.randint(2, 3)):
        eq = {m: rng.randint(-2, 2) for m in rng.sample(monomials, 3)}
        equations.append(eq)
    return PolySystem(unknowns, [{k: Fraction(v) for k, v in eq.items()} for eq in equations])


@pytest.mark.parametrize("seed", range(20))
def test_basis_does_not_depend_on_generator_order(seed):
    rng = random.Random(seed)
    _, _, polys = random_quadratic(rng).to_ring("grevlex")
    shuffled = list(polys)
    rng.shuffle(shuffled)
    G = buchberger(polys)
    assert buchberger(shuffled) == G
    assert is_groebner(G)
    assert all(not p.rem(G) for p in polys)
