# tests/test_symexpr.py
"""
Tests for algebra/symexpr.py
Parsing, canonical form, substitution and the Q[∂] Euclidean helpers.
"""

from fractions import Fraction
import random
import pytest

from algebra.errors import ArityMismatch, ExpressionSyntaxError, IndexCollision, VariableOutOfRange
from algebra.symexpr import Poly, arith, parse


# -------------------------------------------------------------------
# PARSING
# -------------------------------------------------------------------
def test_parse_canonical_form_is_order_independent():
    assert parse("D^2*L1 - 3/2", 1) == parse("-3/2 + L1*D*D", 1)


def test_parse_rational_coefficients():
    p = parse("1/2*D + 1/3*D", 0)
    assert p == parse("5/6*D", 0)
    assert p.leading_coefficient() == Fraction(5, 6)


def test_parse_parentheses_and_unary_minus():
    assert parse("-(D + L1)^2", 1) == parse("-D^2 - 2*D*L1 - L1^2", 1)


def test_parse_rejects_unknown_lambda():
    with pytest.raises(VariableOutOfRange):
        parse("L2", 1)


@pytest.mark.parametrize("text", ["D +", "2 ^ D", "1/0", "D )", "x"])
def test_parse_reports_syntax_errors(text):
    with pytest.raises(ExpressionSyntaxError):
        parse(text, 1)


def test_str_round_trips_through_parse():
    p = parse("L1^2*D - 3/2*L1 + 7", 1)
    assert parse(str(p), 1) == p


def test_zero_prints_as_zero():
    assert str(Poly.zero(2)) == "0"
    assert str(parse("-L1", 1)) == "-L1"


# -------------------------------------------------------------------
# ARITHMETIC
# -------------------------------------------------------------------
def test_arity_mismatch_is_rejected():
    with pytest.raises(ArityMismatch):
        parse("D", 0) + parse("L1", 1)


def test_arith_entry_point():
    a, b = parse("D + 1", 0), parse("D - 1", 0)
    assert arith("mul", a, b) == parse("D^2 - 1", 0)
    assert arith("pow", a, 2) == parse("D^2 + 2*D + 1", 0)
    assert arith("neg", a) == parse("-D - 1", 0)
    with pytest.raises(ValueError):
        arith("div", a, b)


def test_degrees():
    p = parse("L1^3*D + D^4 + L2", 2)
    assert p.degree() == 4
    assert p.d_degree() == 4
    assert p.lambda_degree() == 3
    assert p.has_partial()


# -------------------------------------------------------------------
# SUBSTITUTION AND RENAMING
# -------------------------------------------------------------------
def test_substitute_partial():
    p = parse("D^2 + L1", 1)
    shifted = p.substitute({0: parse("D + L1", 1)})
    assert shifted == parse("(D + L1)^2 + L1", 1)


def test_substitute_into_larger_context():
    p = parse("D*L1", 1)
    out = p.substitute({0: parse("-L2", 2), 1: parse("L1 + L2", 2)}, 2)
    assert out == parse("-L2*(L1 + L2)", 2)


def test_rename_lambdas_moves_indices():
    p = parse("L1 + 2*L2", 2)
    assert p.rename_lambdas([2, 1], 2) == parse("L2 + 2*L1", 2)


def test_rename_lambdas_rejects_collisions():
    with pytest.raises(IndexCollision):
        parse("L1 + L2", 2).rename_lambdas({1: 2}, 2)


def test_lift_and_lower():
    p = parse("D + L1", 1)
    assert p.lift(3).lift(1) == p
    with pytest.raises(ArityMismatch):
        parse("L2", 2).lift(1)


# -------------------------------------------------------------------
# EUCLIDEAN HELPERS
# -------------------------------------------------------------------
def test_divmod_in_partial():
    q, r = parse("D^3 + 2*D + 1", 0).divmod_d(parse("D + 1", 0))
    assert q * parse("D + 1", 0) + r == parse("D^3 + 2*D + 1", 0)
    assert r.d_degree() < 1


def test_divides_and_monic():
    assert parse("2*D + 2", 0).divides(parse("D^2 - 1", 0))
    assert parse("3*D + 6", 0).monic() == parse("D + 2", 0)


# -------------------------------------------------------------------
# RANDOMIZED RING LAWS
# -------------------------------------------------------------------
def random_poly(rng, arity=2):
    terms = {}
    for _ in range(rng.randint(0, 4)):
        exps = (rng.randint(0, 2),) + tuple(rng.randint(0, 2) for _ in range(arity))
        terms[exps] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return Poly(terms, arity)


@pytest.mark.parametrize("seed", range(100))
def test_ring_laws_on_random_triples(seed):
    rng = random.Random(seed)
    p, q, r = (random_poly(rng) for _ in range(3))
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert (p - q) + q == p


@pytest.mark.parametrize("seed", range(100))
def test_substitution_is_a_ring_homomorphism(seed):
    rng = random.Random(1000 + seed)
    p, q = random_poly(rng), random_poly(rng)
    images = {0: random_poly(rng, 3), 1: random_poly(rng, 3), 2: random_poly(rng, 3)}
    assert (p + q).substitute(images, 3) == p.substitute(images, 3) + q.substitute(images, 3)
    assert (p * q).substitute(images, 3) == p.substitute(images, 3) * q.substitute(images, 3)
