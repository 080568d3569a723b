# tests/test_hochschild.py
"""
Tests for algebra/hochschild.py
Cochains, the differential, bounded coboundary search and the bracket.
"""

import random
import pytest

from algebra.cdmod import CdLinearMap, FreeCdModule
from algebra.conformal import Bimodule, ConformalAlgebra, SesquilinearMap, cur_of, regular_bimodule
from algebra.errors import DegreeMismatch, ModuleMismatch, NotACocycle, SlotOutOfRange
from algebra.hochschild import (
    Cochain,
    CochainBasisTruncation,
    check_bracket_differential,
    circ_i,
    dgla_axiom_check,
    differential,
    gbracket,
    identity_cochain,
    is_cocycle,
    is_cohomologous,
    multiplication_cochain,
    random_cochain,
    solve_coboundary,
    truncated_cohomology_dim,
)
from algebra.symexpr import Poly
from utils.storage import DATA_DIR, bundled_sessions, load_session


@pytest.fixture
def curk():
    return cur_of([[[1]]], ["e"], "K")


@pytest.fixture
def reg(curk):
    return regular_bimodule(curk)


def two_cochain(alg, bimodule, text):
    a, m = alg.carrier, bimodule.carrier
    table = SesquilinearMap((a, a), m, {(0, 0): m.element({m.basis_names[0]: text}, 1)})
    return Cochain(2, alg, bimodule, table)


# -------------------------------------------------------------------
# COCHAINS
# -------------------------------------------------------------------
def test_degree_zero_cochain_modulo_partial(curk, reg):
    assert Cochain(0, curk, reg, curk.carrier.element({"e": "D^2 + D"})).is_zero()
    assert not Cochain(0, curk, reg, curk.carrier.element({"e": "1"})).is_zero()


def test_cochain_shape_is_checked(curk, reg):
    k = curk.carrier
    with pytest.raises(ModuleMismatch):
        Cochain(2, curk, reg, SesquilinearMap((k,), k))


def test_to_map_needs_degree_one(curk, reg):
    assert identity_cochain(curk).to_map() == CdLinearMap.identity(curk.carrier)
    with pytest.raises(DegreeMismatch):
        multiplication_cochain(curk).to_map()


# -------------------------------------------------------------------
# DIFFERENTIAL
# -------------------------------------------------------------------
def test_lambda_two_cochain_is_not_closed(curk, reg):
    d = differential(two_cochain(curk, reg, "L1"))
    assert d.degree == 3
    assert d.values.value((0, 0, 0)) == curk.carrier.element({"e": "-L1"}, 2)
    result = is_cocycle(two_cochain(curk, reg, "L1"))
    assert [f.identity for f in result.failures] == ["cocycle"]


def test_constant_two_cochain_is_the_coboundary_of_identity(curk, reg):
    const = two_cochain(curk, reg, "1")
    assert is_cocycle(const).ok
    assert differential(identity_cochain(curk)) == const


def test_partial_is_a_one_cocycle(curk, reg):
    d = Cochain.from_map(CdLinearMap.scalar(curk.carrier, Poly.partial()), curk, reg)
    assert is_cocycle(d).ok


def test_differential_of_central_element_vanishes(curk, reg):
    assert differential(Cochain(0, curk, reg, curk.carrier.basis(0))).is_zero()


@pytest.mark.parametrize("degree", [0, 1, 2])
def test_differential_squares_to_zero(degree):
    alg = cur_of([[[1, 0], [0, 1]], [[0, 1], [0, 0]]], ["o", "x"])
    m = regular_bimodule(alg)
    phi = random_cochain(degree, alg, m, random.Random(degree), ddeg=1, ldeg=1)
    assert differential(differential(phi)).is_zero()


# -------------------------------------------------------------------
# COBOUNDARIES AND TRUNCATED COHOMOLOGY
# -------------------------------------------------------------------
def test_solve_coboundary_finds_preimage(curk, reg):
    const = two_cochain(curk, reg, "1")
    psi = solve_coboundary(const, CochainBasisTruncation(ldeg=0, ddeg=0))
    assert psi.degree == 1
    assert differential(psi) == const


def test_solve_coboundary_rejects_non_cocycles(curk, reg):
    with pytest.raises(NotACocycle):
        solve_coboundary(two_cochain(curk, reg, "L1"), CochainBasisTruncation(1, 1))


def test_solve_coboundary_rejects_degree_zero(curk, reg):
    with pytest.raises(DegreeMismatch):
        solve_coboundary(Cochain.zero(0, curk, reg), CochainBasisTruncation(1, 1))


def test_is_cohomologous(curk, reg):
    const = two_cochain(curk, reg, "1")
    zero = Cochain.zero(2, curk, reg)
    assert is_cohomologous(const, zero, CochainBasisTruncation(0, 0)) is not None


def test_truncated_dimensions_are_consistent(curk, reg):
    dims = truncated_cohomology_dim(2, curk, reg, CochainBasisTruncation(ldeg=1, ddeg=1))
    assert dims.cochains == 4
    assert 0 <= dims.coboundaries <= dims.cocycles <= dims.cochains
    assert dims.quotient >= 0


def test_truncation_monomials():
    assert CochainBasisTruncation(ldeg=1, ddeg=1).monomials(1) == [(0, 0), (0, 1), (1, 0), (1, 1)]


# -------------------------------------------------------------------
# GERSTENHABER BRACKET
# -------------------------------------------------------------------
def test_multiplication_brackets_to_zero_when_associative(curk):
    m = multiplication_cochain(curk)
    assert gbracket(m, m).is_zero()


def test_bracket_detects_non_associativity():
    alg = cur_of([[[1]]], ["e"])
    k = alg.carrier
    skew = ConformalAlgebra.from_table(k, {(0, 0): k.element({"e": "L1"}, 1)})
    m = multiplication_cochain(skew)
    assert not gbracket(m, m).is_zero()


def test_circ_slot_out_of_range(curk):
    m = multiplication_cochain(curk)
    with pytest.raises(SlotOutOfRange):
        circ_i(m, m, 2)


def test_bracket_needs_algebra_valued_cochains(curk):
    other = Bimodule.zero(curk, FreeCdModule(("v",)))
    with pytest.raises(ModuleMismatch):
        gbracket(Cochain.zero(1, curk, other), Cochain.zero(1, curk, other))


@pytest.mark.parametrize("degree", [1, 2])
def test_differential_is_bracket_with_multiplication(curk, reg, degree):
    phi = random_cochain(degree, curk, reg, random.Random(11 + degree), ddeg=1, ldeg=1)
    assert check_bracket_differential(phi).ok


def test_dgla_axioms_on_random_cochains(curk, reg):
    rng = random.Random(3)
    f, g, h = (random_cochain(d, curk, reg, rng, ddeg=1, ldeg=1, density=1.0) for d in (1, 2, 1))
    result = dgla_axiom_check(f, g, h)
    assert result.ok, [str(x) for x in result.failures]


# -------------------------------------------------------------------
# RANDOMIZED IDENTITIES OVER THE BUNDLED SESSIONS
# -------------------------------------------------------------------
def bundled_pairs():
    """(session file, algebra, bimodule or None for the regular one) for every bundled algebra."""
    pairs = []
    for path in bundled_sessions():
        spec = load_session(path).spec
        pairs += [(path.name, name, None) for name in spec.algebras]
        pairs += [(path.name, b.algebra, name) for name, b in spec.bimodules.items()]
    return pairs


@pytest.mark.parametrize("degree", [0, 1, 2, 3])
@pytest.mark.parametrize("file, alg_name, bimodule_name", bundled_pairs())
def test_differential_squares_to_zero_on_bundled_algebras(file, alg_name, bimodule_name, degree):
    session = load_session(DATA_DIR / file)
    alg = session.algebra(alg_name)
    m = session.bimodule(bimodule_name) if bimodule_name else regular_bimodule(alg)
    rng = random.Random(f"{file}:{alg_name}:{bimodule_name}:{degree}")
    for _ in range(3):
        phi = random_cochain(degree, alg, m, rng, ddeg=1, ldeg=1)
        assert differential(differential(phi)).is_zero()


@pytest.mark.parametrize("seed", range(20))
def test_graded_jacobi_on_random_triples(seed):
    rng = random.Random(seed)
    alg = cur_of([[[1, 0], [0, 1]], [[0, 1], [0, 0]]], ["o", "x"]) if seed % 2 else cur_of([[[1]]], ["e"])
    m = regular_bimodule(alg)
    f, g, h = (random_cochain(rng.choice((1, 2)), alg, m, rng, ddeg=1, ldeg=1) for _ in range(3))
    result = dgla_axiom_check(f, g, h)
    assert result.ok, [str(x) for x in result.failures]
