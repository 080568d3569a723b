# tests/test_wells.py
"""
Tests for algebra/wells.py
Inducibility of automorphism pairs and extensibility of derivation pairs.
"""

import random
import pytest

from algebra.cdmod import CdLinearMap
from algebra.errors import InvalidWitness, NotAbelian, NotACocycle, NotSplit
from algebra.hochschild import random_cochain
from algebra.nonabelian import cocycle_of_extension
from algebra.wells import (
    AutPair,
    DerPair,
    WellsStatus,
    bimodule_of,
    check_aut_pair,
    check_pair_in_g,
    check_section_independence,
    check_theta_commutator,
    derivation_from_cocycle,
    extend_derivation,
    extract_der_witness,
    extract_omega,
    in_aut_actions,
    induce_automorphism,
    kappa,
    kappa_der,
    lift_automorphism,
    split_der_decomposition,
    split_section_automorphism,
    wells_aut,
    wells_der,
    wells_partial_a,
    wells_partial_b,
)
from algebra.symexpr import Poly
from utils.storage import DATA_DIR, load_session


@pytest.fixture
def ab():
    return load_session(DATA_DIR / "abelian.json")


@pytest.fixture
def rigid():
    return load_session(DATA_DIR / "rigid.json")


# -------------------------------------------------------------------
# AUTOMORPHISM PAIRS
# -------------------------------------------------------------------
def test_pair_group_operations(ab):
    p = ab.pair("scale")
    e = ab.extension("E")
    assert p.compose(p.inverse()) == AutPair.identity(e.A, e.B)
    assert check_aut_pair(p, e.A, e.B).ok


@pytest.mark.parametrize("name", ["ident", "scale"])
def test_abelian_pairs_are_inducible(ab, name):
    p, e = ab.pair(name), ab.extension("E")
    wc = wells_aut(p, e)
    assert wc.status is WellsStatus.ZERO
    lifted = induce_automorphism(p, wc.witness, e)
    assert kappa(lifted.underlying, e) == p
    assert extract_omega(lifted.underlying, e) == wc.witness


def test_lift_automorphism(ab):
    assert lift_automorphism(ab.pair("scale"), ab.extension("E")) is not None


def test_scaling_against_nonzero_chi_is_obstructed(rigid):
    p, e = rigid.pair("scale"), rigid.extension("E")
    wc = wells_aut(p, e, bound=1, escalate=1)
    assert wc.status is WellsStatus.NONZERO
    assert not wc.is_zero
    assert wc.bound == 2
    assert lift_automorphism(p, e, bound=1) is None


def test_partial_wells_maps(rigid):
    e = rigid.extension("E")
    assert wells_partial_a(rigid.map("twoU"), e, bound=1).status is WellsStatus.NONZERO
    assert wells_partial_b(rigid.map("idF"), e, bound=1).status is WellsStatus.ZERO


def test_wrong_omega_is_rejected(ab):
    p, e = ab.pair("ident"), ab.extension("E")
    omega = CdLinearMap.from_images(ab.module("F"), ab.module("U"), [ab.module("U").element({"u": "1"})])
    with pytest.raises(InvalidWitness):
        induce_automorphism(p, omega, e)


def test_pair_commutes_with_actions(ab):
    c = cocycle_of_extension(ab.extension("E"))
    assert in_aut_actions(ab.pair("scale"), c).ok


def test_split_section_automorphism(ab, rigid):
    lifted = split_section_automorphism(ab.extension("E"), ab.pair("scale"))
    assert kappa(lifted.underlying, ab.extension("E")) == ab.pair("scale")
    with pytest.raises(NotSplit):
        split_section_automorphism(rigid.extension("E"), rigid.pair("scale"))


def test_kappa_does_not_depend_on_section(ab):
    e = ab.extension("E")
    lifted = lift_automorphism(ab.pair("scale"), e)
    shift = CdLinearMap.from_images(ab.module("F"), ab.module("U"), [ab.module("U").element({"u": "D"})])
    assert check_section_independence(lifted.underlying, e, e.gamma + e.alpha.compose(shift)).ok


# -------------------------------------------------------------------
# DERIVATION PAIRS
# -------------------------------------------------------------------
def test_derivation_pair_extends(ab):
    d, e = ab.pair("dd"), ab.extension("E")
    assert check_pair_in_g(d, bimodule_of(cocycle_of_extension(e))).ok
    wc = wells_der(d, e)
    assert wc.is_zero
    dE = extend_derivation(d, wc.witness, e)
    assert kappa_der(dE.underlying, e) == d
    assert extract_der_witness(dE.underlying, e) == wc.witness


def test_pair_check_covers_da_when_a_is_given():
    na = load_session(DATA_DIR / "nonabelian.json")
    c = na.cocycle("c")
    m = bimodule_of(c)
    pair = DerPair(CdLinearMap.identity(c.A.carrier), CdLinearMap.zero(c.B.carrier, c.B.carrier))
    assert check_pair_in_g(pair, m).ok
    result = check_pair_in_g(pair, m, c.A)
    assert result.identities() == {"derivation"}
    partial = DerPair(CdLinearMap.scalar(c.A.carrier, Poly.partial()), CdLinearMap.scalar(c.B.carrier, Poly.partial()))
    assert check_pair_in_g(partial, m, c.A).ok


def test_twisting_derivation_is_obstructed(rigid):
    wc = wells_der(rigid.pair("twist"), rigid.extension("E"), bound=1, escalate=0)
    assert wc.status is WellsStatus.NONZERO
    assert not wc.representative.is_zero()


def test_derivation_wells_needs_abelian_extension():
    na = load_session(DATA_DIR / "nonabelian.json")
    e = na.extension("E")
    with pytest.raises(NotAbelian):
        wells_der(DerPair.zero(e.A, e.B), e)


def test_theta_is_a_representation(ab):
    e = ab.extension("E")
    m = bimodule_of(cocycle_of_extension(e))
    phi = random_cochain(2, e.B, m, random.Random(5), ddeg=1, ldeg=1, density=1.0)
    other = DerPair(ab.map("twoU"), ab.map("idF"))
    assert check_theta_commutator(ab.pair("dd"), other, phi).ok


def test_derivation_from_one_cocycle(ab):
    e = ab.extension("E")
    f = CdLinearMap.from_images(ab.module("F"), ab.module("U"), [ab.module("U").element({"u": "D"})])
    dE = derivation_from_cocycle(f, e)
    assert kappa_der(dE.underlying, e) == DerPair.zero(e.A, e.B)
    with pytest.raises(NotACocycle):
        derivation_from_cocycle(CdLinearMap.from_images(ab.module("F"), ab.module("U"), [ab.module("U").element({"u": "1"})]), e)


def test_split_derivation_decomposition(ab):
    e = ab.extension("E")
    sample = extend_derivation(ab.pair("dd"), CdLinearMap.zero(e.B.carrier, e.A.carrier), e).underlying
    result = split_der_decomposition(e, [sample])
    assert result.ok
    assert len(result.value) == 1
