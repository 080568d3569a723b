# tests/test_cdmod.py
"""
Tests for algebra/cdmod.py
Free k[∂]-modules, their elements and maps, Smith normal form and the
bounded-degree solvers.
"""

from fractions import Fraction
import random
import pytest

from algebra.cdmod import (
    CdLinearMap,
    FreeCdModule,
    ModElement,
    UnknownMap,
    bounded_coefficient_solve,
    degree_schedule,
    in_partial_image,
    mat_mul,
    smith_normal_form,
    solve_over_kd,
)
from algebra.errors import ModuleMismatch, NotAffine, NotInvertible
from algebra.symexpr import Poly, parse


@pytest.fixture
def plane():
    return FreeCdModule(("x", "y"), "P")


def p(text: str, arity: int = 0) -> Poly:
    return parse(text, arity)


# -------------------------------------------------------------------
# MODULES AND ELEMENTS
# -------------------------------------------------------------------
def test_duplicate_basis_names_are_rejected():
    with pytest.raises(ModuleMismatch):
        FreeCdModule(("a", "a"))


def test_element_parses_strings(plane):
    v = plane.element({"x": "D + 1", "y": "2"})
    assert v.coeffs == (p("D + 1"), p("2"))
    assert [name for name, _ in v.terms()] == ["x", "y"]


def test_unknown_basis_name(plane):
    with pytest.raises(ModuleMismatch):
        plane.element({"z": "1"})


def test_scalar_multiplication_lifts_arity(plane):
    v = plane.element({"x": "D"})
    w = v * p("L1", 1)
    assert w.arity == 1
    assert w == plane.element({"x": "D*L1"}, 1)


def test_lambda_slices_reassemble(plane):
    v = plane.element({"x": "L1^2*D + L1", "y": "3*D + L1"}, 1)
    slices = v.lambda_slices()
    assert set(slices) == {(2,), (1,), (0,)}
    assert ModElement.from_slices(plane, slices, 1) == v


def test_direct_sum_primes_duplicates(plane):
    other = FreeCdModule(("x", "z"))
    assert plane.direct_sum(other).basis_names == ("x", "y", "x'", "z")


# -------------------------------------------------------------------
# LINEAR MAPS
# -------------------------------------------------------------------
def test_from_images_and_apply(plane):
    f = CdLinearMap.from_images(plane, plane, [plane.element({"y": "D"}), plane.element({"x": "1"})])
    v = plane.element({"x": "1", "y": "D"})
    assert f.apply(v) == plane.element({"x": "D", "y": "D"})


def test_compose_is_matrix_product(plane):
    f = CdLinearMap.from_images(plane, plane, [plane.element({"y": "1"}), plane.element({"x": "1"})])
    assert f.compose(f) == CdLinearMap.identity(plane)


def test_unimodular_inverse(plane):
    f = CdLinearMap.from_images(plane, plane, [plane.element({"x": "1"}), plane.element({"x": "D^2", "y": "1"})])
    g = f.inverse()
    assert f.compose(g) == CdLinearMap.identity(plane)
    assert g.compose(f) == CdLinearMap.identity(plane)


def test_multiplication_by_partial_is_not_invertible(plane):
    with pytest.raises(NotInvertible):
        CdLinearMap.scalar(plane, Poly.partial()).inverse()
    assert not CdLinearMap.scalar(plane, Poly.partial()).is_invertible()


def test_apply_checks_source(plane):
    other = FreeCdModule(("u",))
    with pytest.raises(ModuleMismatch):
        CdLinearMap.identity(plane).apply(other.basis(0))


def test_lambda_entries_are_rejected(plane):
    line = FreeCdModule(("u",))
    with pytest.raises(ModuleMismatch):
        CdLinearMap(line, line, [[p("L1", 1)]])


# -------------------------------------------------------------------
# SMITH NORMAL FORM AND SOLVERS
# -------------------------------------------------------------------
def test_smith_normal_form_diagonalizes():
    m = [[p("D"), p("D^2")], [p("1"), p("D + 1")]]
    snf = smith_normal_form(m)
    assert snf.verify(m)
    assert snf.rank == 2
    assert snf.diagonal[0] == 1
    assert snf.diagonal[0].divides(snf.diagonal[1])


def test_smith_rank_of_degenerate_matrix():
    m = [[p("D"), p("D^2")], [p("1"), p("D")]]
    assert smith_normal_form(m).rank == 1


def test_solve_over_kd_particular_and_kernel():
    m = [[p("D"), p("D^2")]]
    solved = solve_over_kd(m, [p("D^3")])
    assert solved is not None
    x, kernel = solved
    assert m[0][0] * x[0] + m[0][1] * x[1] == p("D^3")
    assert len(kernel) == 1
    k = kernel[0]
    assert (m[0][0] * k[0] + m[0][1] * k[1]).is_zero()


def test_solve_over_kd_detects_divisibility_failure():
    assert solve_over_kd([[p("D")]], [p("1")]) is None


def test_in_partial_image():
    line = FreeCdModule(("u",))
    assert in_partial_image(line.element({"u": "D^2 + D"}))
    assert not in_partial_image(line.element({"u": "D + 1"}))


def test_bounded_coefficient_solve():
    # u0 + u1 = 3, u0 - u1 = 1
    eqs = [{(): Fraction(-3), (0,): Fraction(1), (1,): Fraction(1)}, {(): Fraction(-1), (0,): Fraction(1), (1,): Fraction(-1)}]
    assert bounded_coefficient_solve(eqs) == {0: 2, 1: 1}


def test_bounded_coefficient_solve_inconsistent():
    eqs = [{(): Fraction(-1), (0,): Fraction(1)}, {(): Fraction(-2), (0,): Fraction(1)}]
    assert bounded_coefficient_solve(eqs) is None


def test_bounded_coefficient_solve_rejects_products():
    with pytest.raises(NotAffine):
        bounded_coefficient_solve([{(0, 1): Fraction(1)}])


def test_unknown_map_instantiation(plane):
    unknown = UnknownMap(plane, plane, 1)
    assert unknown.size == 8
    f = unknown.instantiate({})
    assert f.is_zero()


def test_degree_schedule():
    assert degree_schedule(3, 2) == [3, 5]
    assert degree_schedule(3, 0) == [3]


# -------------------------------------------------------------------
# RANDOMIZED MATRICES
# -------------------------------------------------------------------
def random_entry(rng):
    if rng.random() < 0.25:
        return Poly.zero()
    return Poly({(k,): rng.randint(-3, 3) for k in range(rng.randint(0, 2) + 1)})


def random_matrix(rng):
    rows, cols = rng.randint(1, 3), rng.randint(1, 3)
    return [[random_entry(rng) for _ in range(cols)] for _ in range(rows)]


@pytest.mark.parametrize("seed", range(50))
def test_smith_form_of_random_matrix(seed):
    m = random_matrix(random.Random(seed))
    snf = smith_normal_form(m)
    assert snf.verify(m)
    for a, b in zip(snf.diagonal, snf.diagonal[1:]):
        assert a.divides(b)
    for d in snf.diagonal:
        assert d.is_zero() or d.leading_coefficient() == 1


@pytest.mark.parametrize("seed", range(50))
def test_solve_over_kd_recovers_a_preimage(seed):
    rng = random.Random(500 + seed)
    m = random_matrix(rng)
    x = [[random_entry(rng)] for _ in m[0]]
    b = [row[0] for row in mat_mul(m, x)]
    solved = solve_over_kd(m, b)
    assert solved is not None
    particular, kernel = solved
    assert [row[0] for row in mat_mul(m, [[v] for v in particular])] == b
    for k in kernel:
        assert all(row[0].is_zero() for row in mat_mul(m, [[v] for v in k]))
