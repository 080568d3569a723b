# tests/test_homotopy.py
"""
Tests for algebra/homotopy.py
2-term structures, crossed modules, skeletal structures as 3-cocycles and
the class of a crossed extension.
"""

import pytest

from algebra.cdmod import CdLinearMap
from algebra.conformal import SesquilinearMap, cur_of, regular_bimodule
from algebra.errors import ModuleMismatch, NotACocycle, NotSkeletal, NotSplit, NotStrict
from algebra.hochschild import CochainBasisTruncation, differential
from algebra.homotopy import (
    ImageSection,
    TwoTermSHAC,
    check_crossed,
    check_crossed_extension,
    check_crossed_morphism,
    check_morphism,
    check_skeletal_equivalence,
    check_twoterm,
    cocycle_to_skeletal,
    compose_morphisms,
    crossed_extension_theta,
    crossed_to_shac,
    ideal_crossed_module,
    identity_morphism,
    morphism_correction,
    preimage,
    section_change_correction,
    shac_to_crossed,
    skeletal_to_cocycle,
    solve_skeletal_equivalence,
    strict_from_bimodule_map,
)
from utils.storage import DATA_DIR, load_session


@pytest.fixture
def cr():
    return load_session(DATA_DIR / "crossed.json")


@pytest.fixture
def sk():
    return load_session(DATA_DIR / "skeletal.json")


@pytest.fixture
def cx():
    return load_session(DATA_DIR / "crossed_ext.json")


# -------------------------------------------------------------------
# CROSSED MODULES AND STRICT STRUCTURES
# -------------------------------------------------------------------
def test_ideal_inclusion_is_crossed(cr):
    assert check_crossed(cr.crossed("inclusion")).ok


def test_wrong_rho_breaks_equivariance(cr):
    assert "cross1" in check_crossed(cr.crossed("broken")).identities()


def test_crossed_module_as_strict_structure(cr):
    t = crossed_to_shac(cr.crossed("inclusion"))
    assert t.is_strict
    assert not t.is_skeletal
    assert check_twoterm(t).ok
    back = shac_to_crossed(t)
    assert back.Y.is_trivial()
    assert check_crossed(back).ok


def test_bundled_strict_structure(cr):
    t = cr.twoterm("strict")
    assert check_twoterm(t).ok
    assert check_crossed(shac_to_crossed(t)).ok


def test_non_strict_structure_is_not_a_crossed_module(sk):
    with pytest.raises(NotStrict):
        shac_to_crossed(sk.twoterm("sk1"))


def test_ideal_crossed_module_from_generators(cr):
    R = cr.algebra("cur")
    c = ideal_crossed_module(R, [R.carrier.element({"x": "1"})], ["i"])
    assert check_crossed(c).ok
    assert c.Y.is_trivial()


def test_generators_must_span_an_ideal(cr):
    R = cr.algebra("cur")
    with pytest.raises(ModuleMismatch):
        ideal_crossed_module(R, [R.carrier.element({"o": "1"})])


def test_strict_structure_from_bimodule_map():
    K = cur_of([[[1]]], ["e"], "K")
    m = regular_bimodule(K)
    t = strict_from_bimodule_map(K, m, m, CdLinearMap.identity(K.carrier))
    assert t.A0.basis_names == ("e", "e'")
    assert check_twoterm(t).ok
    assert check_crossed(shac_to_crossed(t)).ok


def test_twoterm_shapes_are_checked(sk):
    t = sk.twoterm("sk0")
    with pytest.raises(ModuleMismatch):
        TwoTermSHAC(t.A1, t.A0, t.fd, t.m01, t.m01, t.m10)


def test_preimage(cr):
    incl = cr.map("incl")
    R = cr.module("R")
    assert preimage(incl, R.element({"x": "D"})) == cr.module("I").element({"i": "D"})
    assert preimage(incl, R.element({"o": "1"})) is None


# -------------------------------------------------------------------
# SKELETAL STRUCTURES
# -------------------------------------------------------------------
def test_skeletal_identities(sk):
    assert check_twoterm(sk.twoterm("sk0")).ok
    assert check_twoterm(sk.twoterm("sk1")).ok
    assert check_twoterm(sk.twoterm("skbad")).identities() == {"2-t8"}


def test_skeletal_structure_is_a_three_cocycle(sk):
    A, M, zeta = skeletal_to_cocycle(sk.twoterm("sk1"))
    assert zeta.degree == 3
    assert zeta.values.value((0, 0, 0)) == M.carrier.element({"v": "-L1"}, 2)
    rebuilt = cocycle_to_skeletal(A, M, zeta)
    assert rebuilt.is_skeletal
    assert check_twoterm(rebuilt).ok


def test_non_skeletal_structure_has_no_cocycle(cr):
    with pytest.raises(NotSkeletal):
        skeletal_to_cocycle(cr.twoterm("strict"))


def test_cocycle_to_skeletal_needs_a_cocycle(sk):
    bad = sk.cochain("zeta_bad")
    with pytest.raises(NotACocycle):
        cocycle_to_skeletal(bad.algebra, bad.bimodule, bad)
    with pytest.raises(NotACocycle):
        cocycle_to_skeletal(bad.algebra, bad.bimodule, sk.cochain("sigma"))


def test_skeletal_equivalence_with_given_sigma(sk):
    assert check_skeletal_equivalence(sk.twoterm("sk0"), sk.twoterm("sk1"), sk.cochain("sigma")).ok
    assert not check_skeletal_equivalence(sk.twoterm("sk1"), sk.twoterm("sk0"), sk.cochain("sigma")).ok


def test_skeletal_equivalence_search(sk):
    t, other = sk.twoterm("sk0"), sk.twoterm("sk1")
    sigma = solve_skeletal_equivalence(t, other, CochainBasisTruncation(ldeg=1, ddeg=0))
    assert check_skeletal_equivalence(t, other, sigma).ok


# -------------------------------------------------------------------
# MORPHISMS
# -------------------------------------------------------------------
def test_shift_morphism(sk):
    m, s, t = sk.morphism("shift")
    assert check_morphism(m, s, t).ok


def test_unshifted_identity_is_not_a_morphism(sk):
    m, s, t = sk.morphism("shift")
    assert "mor4" in check_morphism(identity_morphism(s), s, t).identities()


def test_composition_with_identity(sk):
    m, s, t = sk.morphism("shift")
    composed = compose_morphisms(identity_morphism(t), m)
    assert (composed.f2 - m.f2).is_zero()
    assert check_morphism(composed, s, t).ok


def test_morphism_components_must_match(sk):
    m, s, t = sk.morphism("shift")
    with pytest.raises(ModuleMismatch):
        check_morphism(type(m)(m.f1, m.f1, m.f2), s, t)


# -------------------------------------------------------------------
# CROSSED EXTENSIONS
# -------------------------------------------------------------------
@pytest.mark.parametrize("name", ["S", "S_bent"])
def test_crossed_extension_class_vanishes(cx, name):
    s = cx.crossed_extension(name)
    assert check_crossed_extension(s).ok
    result = crossed_extension_theta(s)
    assert result.ok
    assert result.value.is_zero()


def test_image_section_from_smith(cx):
    beta = cx.map("beta")
    sigma = ImageSection.from_smith(beta)
    X, Y = cx.module("X"), cx.module("Y")
    assert sigma.apply(X.element({"u": "D"})) == Y.element({"v1": "D"})
    with pytest.raises(ModuleMismatch):
        sigma.apply(X.element({"e": "1"}))
    with pytest.raises(NotSplit):
        sigma.with_images([Y.element({"v2": "1"})])


def test_section_change_correction(cx):
    s = cx.crossed_extension("S")
    correction = section_change_correction(s, cx.map("rho_flat"))
    assert correction.degree == 2
    assert differential(correction).is_zero()


def test_section_must_split_gamma(cx):
    s = cx.crossed_extension("S")
    zero = CdLinearMap.zero(cx.module("K"), cx.module("X"))
    with pytest.raises(NotSplit):
        crossed_extension_theta(s.with_rho(zero))


def test_identity_morphism_of_crossed_extensions(cx):
    s = cx.crossed_extension("S")
    phi, psi = CdLinearMap.identity(s.Y.carrier), CdLinearMap.identity(s.X.carrier)
    assert check_crossed_morphism(s, s, phi, psi).ok
    assert morphism_correction(s, s, phi, psi).is_zero()


def test_induced_bimodule_through_rho(cx):
    s = cx.crossed_extension("S")
    m = s.induced_module()
    assert m.carrier == s.Y.carrier
    assert isinstance(m.left, SesquilinearMap)
