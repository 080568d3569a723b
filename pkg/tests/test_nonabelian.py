# tests/test_nonabelian.py
"""
Tests for algebra/nonabelian.py
Cocycle identities, the extensions they build, section changes and the
bounded search for equivalence witnesses.
"""

import pytest

from algebra.cdmod import CdLinearMap
from algebra.conformal import SesquilinearMap, check_associativity
from algebra.errors import InvalidCocycle, InvalidWitness, ModuleMismatch, UndecidedWithinBounds
from algebra.mcgauge import direct_transform
from algebra.nonabelian import (
    NonAbelianCocycle,
    associator_labels,
    build_extension,
    check_cocycle,
    check_equivalence_witness,
    check_extension,
    cocycle_of_extension,
    invert_witness,
    section_difference,
    solve_equivalence,
)
from utils.storage import DATA_DIR, load_session


@pytest.fixture
def na():
    return load_session(DATA_DIR / "nonabelian.json")


@pytest.fixture
def rigid():
    return load_session(DATA_DIR / "rigid.json")


# -------------------------------------------------------------------
# COCYCLES
# -------------------------------------------------------------------
def test_valid_cocycles(na):
    assert check_cocycle(na.cocycle("c")).ok
    assert check_cocycle(na.cocycle("c2")).ok


def test_lambda_valued_chi_breaks_coh5(na):
    result = check_cocycle(na.cocycle("bad"))
    assert "coh5" in result.identities()


def test_cocycle_shapes_are_checked(na):
    c = na.cocycle("c")
    with pytest.raises(ModuleMismatch):
        NonAbelianCocycle(c.A, c.B, left=c.right)


def test_abelian_flag(na, rigid):
    assert not na.cocycle("c").is_abelian()
    assert rigid.cocycle("chi1").is_abelian()


# -------------------------------------------------------------------
# EXTENSIONS
# -------------------------------------------------------------------
def test_build_extension_is_associative(na):
    ext = build_extension(na.cocycle("c"))
    assert ext.E.carrier.basis_names == ("e", "f")
    assert check_extension(ext).ok


def test_cocycle_read_back_from_extension(na):
    c = na.cocycle("c2")
    assert cocycle_of_extension(build_extension(c)) == c


def test_build_extension_refuses_broken_cocycle(na):
    with pytest.raises(InvalidCocycle):
        build_extension(na.cocycle("bad"))


def test_unchecked_broken_extension_reports_labels(na):
    ext = build_extension(na.cocycle("bad"), check=False)
    report = check_associativity(ext.E)
    assert not report.ok
    assert "coh5" in associator_labels(ext, report)


def test_split_extension(na):
    assert build_extension(na.cocycle("c")).is_split()
    assert not build_extension(na.cocycle("c2")).is_split()


def test_to_a_rejects_b_components(na):
    ext = build_extension(na.cocycle("c"))
    with pytest.raises(ModuleMismatch):
        ext.to_a(ext.E.carrier.element({"f": "1"}))


# -------------------------------------------------------------------
# SECTION CHANGES
# -------------------------------------------------------------------
def test_section_change_gives_equivalent_cocycle(na):
    c, delta = na.cocycle("c"), na.map("delta")
    ext = build_extension(c)
    moved = ext.with_section(ext.gamma + ext.alpha.compose(delta))
    assert section_difference(ext, moved.gamma) == delta
    assert check_equivalence_witness(c, cocycle_of_extension(moved), delta).ok


def test_section_must_split_beta(na):
    ext = build_extension(na.cocycle("c"))
    with pytest.raises(InvalidWitness):
        ext.with_section(ext.alpha.compose(na.map("delta")))


# -------------------------------------------------------------------
# EQUIVALENCE
# -------------------------------------------------------------------
def test_given_witness_passes(na):
    assert check_equivalence_witness(na.cocycle("c"), na.cocycle("c2"), na.map("delta")).ok


def test_wrong_witness_names_the_identities(na):
    zero = CdLinearMap.zero(na.module("KB"), na.module("KA"))
    result = check_equivalence_witness(na.cocycle("c"), na.cocycle("c2"), zero)
    assert result.identities() == {"coh6", "coh7", "coh8"}


def test_solve_equivalence_finds_witness(na):
    c, c2 = na.cocycle("c"), na.cocycle("c2")
    delta, used = solve_equivalence(c, c2)
    assert used == 2
    assert check_equivalence_witness(c, c2, delta).ok
    assert delta == na.map("delta")


def test_inverse_witness_is_negation(na):
    c, c2, delta = na.cocycle("c"), na.cocycle("c2"), na.map("delta")
    assert invert_witness(c, c2, delta) == -delta


def test_solve_equivalence_reports_the_escalated_bound(na):
    ka, kb = na.module("KA"), na.module("KB")
    xi = CdLinearMap.from_images(kb, ka, [ka.element({"e": "D - 3"})])
    c = na.cocycle("c")
    moved = direct_transform(c, xi)
    with pytest.raises(UndecidedWithinBounds):
        solve_equivalence(c, moved, bound=0, escalate=0)
    delta, used = solve_equivalence(c, moved, bound=0, escalate=1)
    assert used == 1
    assert delta == xi


def test_rigid_cocycles_are_undecided(rigid):
    with pytest.raises(UndecidedWithinBounds) as info:
        solve_equivalence(rigid.cocycle("chi1"), rigid.cocycle("chi2"), bound=1, escalate=1)
    assert info.value.bound == 2


def test_affine_search_on_abelian_cocycle():
    s = load_session(DATA_DIR / "abelian.json")
    c = s.cocycle("c")
    delta, _ = solve_equivalence(c, c)
    assert check_equivalence_witness(c, c, delta).ok


def test_witness_must_map_b_to_a(na):
    c = na.cocycle("c")
    with pytest.raises(ModuleMismatch):
        check_equivalence_witness(c, c, CdLinearMap.identity(na.module("KA")))


def test_cocycle_equality_compares_tables(na):
    c = na.cocycle("c")
    assert c.replace(chi=SesquilinearMap((c.B.carrier, c.B.carrier), c.A.carrier)) == c
