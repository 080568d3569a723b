# tests/test_mcgauge.py
"""
Tests for algebra/mcgauge.py
Cocycles as Maurer-Cartan elements and equivalences as gauge transformations.
"""

import random
import pytest

from algebra.cdmod import CdLinearMap, ModElement, all_tuples
from algebra.conformal import SesquilinearMap
from algebra.errors import ModuleMismatch
from algebra.mcgauge import (
    LieContext,
    MCElement,
    MixedCochain,
    check_ad_nilpotent,
    check_degree_zero_abelian,
    check_subdgla_closure,
    direct_transform,
    embed_cocycle,
    extract_cocycle,
    gauge_transform,
    mc_check,
    mixed_components,
)
from algebra.nonabelian import check_cocycle
from algebra.symexpr import Poly
from utils.storage import DATA_DIR, load_session


@pytest.fixture
def na():
    return load_session(DATA_DIR / "nonabelian.json")


# -------------------------------------------------------------------
# MAURER-CARTAN
# -------------------------------------------------------------------
@pytest.mark.parametrize("name", ["c", "c2"])
def test_cocycles_are_maurer_cartan(na, name):
    assert mc_check(embed_cocycle(na.cocycle(name))).ok


def test_broken_cocycle_fails_on_bbb(na):
    result = mc_check(embed_cocycle(na.cocycle("bad")))
    assert "coh5" in result.identities()


def test_embedding_is_read_back(na):
    c = na.cocycle("c2")
    assert extract_cocycle(embed_cocycle(c)) == c


def test_embedded_components(na):
    element = embed_cocycle(na.cocycle("c2"))
    parts = mixed_components(element.context, element.cochain)
    assert set(parts) == {(1, 1), (0, 2)}


def test_extract_rejects_pure_a_components(na):
    c = na.cocycle("c")
    ctx = LieContext(c.A, c.B)
    with pytest.raises(ModuleMismatch):
        extract_cocycle(MCElement(ctx, ctx.background()))


# -------------------------------------------------------------------
# GAUGE ACTION
# -------------------------------------------------------------------
def test_direct_transform_reaches_equivalent_cocycle(na):
    assert direct_transform(na.cocycle("c"), na.map("delta")) == na.cocycle("c2")


def test_gauge_by_minus_delta_matches_direct_transform(na):
    c, delta = na.cocycle("c"), na.map("delta")
    moved = gauge_transform(embed_cocycle(c), -delta)
    assert mc_check(moved).ok
    assert extract_cocycle(moved) == na.cocycle("c2")


def test_gauge_agrees_with_direct_transform_for_other_parameters(na):
    c = na.cocycle("c2")
    xi = CdLinearMap.from_images(na.module("KB"), na.module("KA"), [na.module("KA").element({"e": "D - 3"})])
    moved = gauge_transform(embed_cocycle(c), xi)
    assert mc_check(moved).ok
    assert extract_cocycle(moved) == direct_transform(c, -xi)


def test_gauge_parameter_must_map_b_to_a(na):
    c = na.cocycle("c")
    with pytest.raises(ModuleMismatch):
        gauge_transform(embed_cocycle(c), CdLinearMap.identity(na.module("KA")))


def test_ad_is_nilpotent(na):
    assert check_ad_nilpotent(embed_cocycle(na.cocycle("c")), na.map("delta")).ok


def test_degree_zero_part_is_abelian(na):
    c = na.cocycle("c")
    ctx = LieContext(c.A, c.B)
    xi = na.map("delta")
    assert check_degree_zero_abelian(ctx, xi, xi * 3).ok


# -------------------------------------------------------------------
# SUB-DGLA
# -------------------------------------------------------------------
def test_mixed_cochains_close_under_bracket_and_differential(na):
    element = embed_cocycle(na.cocycle("c2"))
    ctx = element.context
    parts = mixed_components(ctx, element.cochain)
    samples = [MixedCochain.from_cochain(ctx, phi, m, n) for (m, n), phi in parts.items()]
    samples.append(MixedCochain.from_cochain(ctx, ctx.gauge_parameter(na.map("delta")), 0, 1))
    assert check_subdgla_closure(samples).ok


def test_mixed_cochain_bidegree_is_checked(na):
    element = embed_cocycle(na.cocycle("c2"))
    with pytest.raises(ModuleMismatch):
        MixedCochain.from_cochain(element.context, element.cochain, 1, 1)


# -------------------------------------------------------------------
# RANDOM PERTURBATIONS
# -------------------------------------------------------------------
def random_poly(rng, arity):
    return Poly({(rng.randint(0, 1),) + tuple(rng.randint(0, 1) for _ in range(arity)): rng.randint(-2, 2)}, arity)


def random_table(rng, sources, target):
    values = {
        idx: ModElement(target, [random_poly(rng, 1) for _ in range(target.rank)], 1)
        for idx in all_tuples(sources)
    }
    return SesquilinearMap(sources, target, values)


@pytest.mark.parametrize("seed", range(10))
def test_maurer_cartan_iff_cocycle_on_random_perturbations(na, seed):
    rng = random.Random(seed)
    c = na.cocycle("c2")
    a, b = c.A.carrier, c.B.carrier
    if seed % 2:
        perturbed = c.replace(chi=c.chi + random_table(rng, (b, b), a))
    else:
        delta = CdLinearMap.from_images(b, a, [ModElement(a, [random_poly(rng, 0) for _ in range(a.rank)], 0) for _ in range(b.rank)])
        perturbed = direct_transform(c, delta)
        assert check_cocycle(perturbed).ok
    assert mc_check(embed_cocycle(perturbed)).ok == check_cocycle(perturbed).ok
