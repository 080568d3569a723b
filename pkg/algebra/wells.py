# algebra/wells.py
"""
Wells maps for pairs of automorphisms and pairs of derivations of (A, B).

A pair (g, h) acts on a non-abelian cocycle; the pair is inducible from an
automorphism of the extension exactly when the transformed cocycle is
equivalent to the original, and the equivalence witness ω builds the lift.
The derivation side replaces the group action by the action Θ on 2-cochains
of an abelian extension.
"""

from __future__ import annotations
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, List, Optional, Sequence, Tuple

from algebra.cdmod import CdLinearMap, ModElement, all_tuples
from algebra.checks import CheckResult
from algebra.conformal import (
    Bimodule,
    ConformalAlgebra,
    StructureKind,
    StructureMap,
    check_structure_map,
    commutator,
)
from algebra.errors import (
    DoesNotPreserveA,
    InvalidWitness,
    ModuleMismatch,
    NoRationalWitness,
    NotAbelian,
    NotACocycle,
    NotSplit,
    UndecidedWithinBounds,
)
from algebra.hochschild import Cochain, differential
from algebra.nonabelian import (
    Extension,
    NonAbelianCocycle,
    cocycle_of_extension,
    solve_equivalence,
    solve_for_map,
)
from algebra.symexpr import Poly

logger = logging.getLogger(__name__)


class WellsStatus(str, Enum):
    ZERO = "zero"
    NONZERO = "nonzero-within-bounds"
    UNDECIDED = "undecided"


@dataclass
class WellsClass:
    """
    The Wells class of a pair, represented by the transformed cocycle (or the
    target 2-cochain Θ(d)χ) next to the base it is compared with.
    """

    representative: Any
    base: Any
    status: WellsStatus
    witness: Optional[CdLinearMap] = None
    bound: Optional[int] = None

    @property
    def is_zero(self) -> bool:
        return self.status is WellsStatus.ZERO


def _record_map(result: CheckResult, label: str, diff: CdLinearMap) -> None:
    for j, img in enumerate(diff.images()):
        result.record(label, (diff.source.basis_names[j],), img)


# -------------------------------------------------------------------
# Automorphisms
# -------------------------------------------------------------------
@dataclass(frozen=True)
class AutPair:
    g: CdLinearMap
    h: CdLinearMap

    @classmethod
    def identity(cls, A: ConformalAlgebra, B: ConformalAlgebra) -> "AutPair":
        return cls(CdLinearMap.identity(A.carrier), CdLinearMap.identity(B.carrier))

    def compose(self, other: "AutPair") -> "AutPair":
        """(g1, h1) ∘ (g2, h2) = (g1 g2, h1 h2)."""
        return AutPair(self.g.compose(other.g), self.h.compose(other.h))

    def inverse(self) -> "AutPair":
        return AutPair(self.g.inverse(), self.h.inverse())


def check_aut_pair(p: AutPair, A: ConformalAlgebra, B: ConformalAlgebra) -> CheckResult:
    """g ∈ Aut(A) and h ∈ Aut(B); NotInvertible propagates."""
    result = CheckResult("automorphism pair")
    result.merge(check_structure_map(p.g, StructureKind.AUTOMORPHISM, A))
    result.merge(check_structure_map(p.h, StructureKind.AUTOMORPHISM, B))
    return result


def transform_cocycle(p: AutPair, c: NonAbelianCocycle) -> NonAbelianCocycle:
    """
    ▷'(b, a) = g(h⁻¹b ▷ g⁻¹a), ◁'(a, b) = g(g⁻¹a ◁ h⁻¹b),
    χ'(b1, b2) = g χ(h⁻¹b1, h⁻¹b2).
    """
    if p.g.source != c.A.carrier or p.h.source != c.B.carrier:
        raise ModuleMismatch("pair does not act on the cocycle's algebras")
    gi, hi = p.g.inverse(), p.h.inverse()
    b = c.B.carrier
    return c.replace(
        left=c.left.precompose([hi, gi]).postcompose(p.g),
        right=c.right.precompose([gi, hi]).postcompose(p.g),
        chi=c.chi.precompose([hi, hi], (b, b)).postcompose(p.g),
    )


def check_omega(p: AutPair, omega: CdLinearMap, c: NonAbelianCocycle) -> CheckResult:
    """
    g(b▷a) = hb▷ga + ω(hb)∘ga, g(a◁b) = ga◁hb + ga∘ω(hb) and
    gχ(b1,b2) = χ(hb1,hb2) + hb1▷ω(hb2) + ω(hb1)◁hb2 + ω(hb1)∘ω(hb2) - ω(hb1∘hb2).
    """
    if omega.source != c.B.carrier or omega.target != c.A.carrier:
        raise ModuleMismatch("omega must map B to A")
    result = CheckResult("inducibility witness")
    a, b = c.A.carrier, c.B.carrier
    g, h = p.g, p.h
    lam = Poly.lam(1, 1)
    for i, j in all_tuples([b, a]):
        y, x = b.basis(i, 1), a.basis(j, 1)
        hy, gx = h.apply(y), g.apply(x)
        diff = g.apply(c.left.binary(y, x, lam, 1)) - c.left.binary(hy, gx, lam, 1) - c.A.mul(omega.apply(hy), gx, lam, 1)
        result.record("omega-left", (b.basis_names[i], a.basis_names[j]), diff)
    for i, j in all_tuples([a, b]):
        x, y = a.basis(i, 1), b.basis(j, 1)
        gx, hy = g.apply(x), h.apply(y)
        diff = g.apply(c.right.binary(x, y, lam, 1)) - c.right.binary(gx, hy, lam, 1) - c.A.mul(gx, omega.apply(hy), lam, 1)
        result.record("omega-right", (a.basis_names[i], b.basis_names[j]), diff)
    for i, j in all_tuples([b, b]):
        h1, h2 = h.apply(b.basis(i, 1)), h.apply(b.basis(j, 1))
        w1, w2 = omega.apply(h1), omega.apply(h2)
        rhs = (
            c.chi.binary(h1, h2, lam, 1)
            + c.left.binary(h1, w2, lam, 1)
            + c.right.binary(w1, h2, lam, 1)
            + c.A.mul(w1, w2, lam, 1)
            - omega.apply(c.B.mul(h1, h2, lam, 1))
        )
        diff = g.apply(c.chi.binary(b.basis(i, 1), b.basis(j, 1), lam, 1)) - rhs
        result.record("omega-chi", (b.basis_names[i], b.basis_names[j]), diff)
    return result


def wells_aut(
    p: AutPair,
    e: Extension,
    bound: Optional[int] = None,
    escalate: int = 2,
) -> WellsClass:
    """
    Decide whether c^{g,h} ≈ c for the cocycle c of e. Zero carries a verified ω;
    an inconsistent bounded system is reported as nonzero within the bound.
    """
    c = cocycle_of_extension(e)
    transformed = transform_cocycle(p, c)
    if bound is None:
        bound = max(c.d_degree(), transformed.d_degree(), p.g.d_degree(), p.h.d_degree(), 0) + 2
    try:
        omega, used = solve_equivalence(c, transformed, bound, escalate)
    except UndecidedWithinBounds as exc:
        logger.info("wells class of the pair is nonzero within ∂-degree %s", exc.bound)
        return WellsClass(transformed, c, WellsStatus.NONZERO, bound=exc.bound)
    except NoRationalWitness:
        return WellsClass(transformed, c, WellsStatus.UNDECIDED, bound=bound + max(escalate, 0))
    if not check_omega(p, omega, c).ok:
        raise InvalidWitness("solved omega fails the inducibility identities", "omega")
    return WellsClass(transformed, c, WellsStatus.ZERO, witness=omega, bound=used)


def induce_automorphism(p: AutPair, omega: CdLinearMap, e: Extension) -> StructureMap:
    """f(α a + γ b) = α(g a + ω(h b)) + γ(h b)."""
    c = cocycle_of_extension(e)
    report = check_omega(p, omega, c)
    if not report.ok:
        first = report.first()
        raise InvalidWitness(f"omega fails {first}", first.identity)
    s = e.section_part()
    a, b = e.A.carrier, e.B.carrier
    images = [e.alpha.apply(p.g.apply(x)) for x in a.basis_elements()]
    for y in b.basis_elements():
        hy = p.h.apply(y)
        images.append(e.alpha.apply(omega.apply(hy) - p.g.apply(s.apply(y))) + e.gamma.apply(hy))
    f = CdLinearMap.from_images(e.E.carrier, e.E.carrier, images)
    check = check_structure_map(f, StructureKind.AUTOMORPHISM, e.E)
    if not check.ok:
        raise InvalidWitness(f"induced map is not an automorphism: {check.first()}", check.first().identity)
    return check.value


def _preserves_a(f: CdLinearMap, e: Extension) -> List[ModElement]:
    out = []
    for x in e.A.carrier.basis_elements():
        image = f.apply(e.alpha.apply(x))
        try:
            out.append(e.to_a(image))
        except ModuleMismatch:
            raise DoesNotPreserveA(f"f({x}) = {image} leaves A")
    return out


def kappa(f: CdLinearMap, e: Extension) -> AutPair:
    """κ(f) = (f|_A, β∘f∘γ) for f with f(A) ⊆ A."""
    g = CdLinearMap.from_images(e.A.carrier, e.A.carrier, _preserves_a(f, e))
    h = e.beta.compose(f).compose(e.gamma)
    return AutPair(g, h)


def check_section_independence(f: CdLinearMap, e: Extension, gamma: CdLinearMap) -> CheckResult:
    """β∘f∘γ does not depend on the section."""
    result = CheckResult("section independence")
    h = e.beta.compose(f).compose(e.gamma)
    other = e.with_section(gamma)
    _record_map(result, "kappa-section", other.beta.compose(f).compose(other.gamma) - h)
    return result


def extract_omega(f: CdLinearMap, e: Extension) -> CdLinearMap:
    """ω(b) = α⁻¹(f(γ(h⁻¹ b)) - γ(b)) for h = β∘f∘γ."""
    hi = kappa(f, e).h.inverse()
    images = []
    for y in e.B.carrier.basis_elements():
        images.append(e.to_a(f.apply(e.gamma.apply(hi.apply(y))) - e.gamma.apply(y)))
    return CdLinearMap.from_images(e.B.carrier, e.A.carrier, images)


def in_aut_actions(p: AutPair, c: NonAbelianCocycle) -> CheckResult:
    """g(b▷a) = h(b)▷g(a) and g(a◁b) = g(a)◁h(b)."""
    result = CheckResult("compatibility with actions")
    a, b = c.A.carrier, c.B.carrier
    lam = Poly.lam(1, 1)
    for i, j in all_tuples([b, a]):
        y, x = b.basis(i, 1), a.basis(j, 1)
        diff = p.g.apply(c.left.binary(y, x, lam, 1)) - c.left.binary(p.h.apply(y), p.g.apply(x), lam, 1)
        result.record("left-action", (b.basis_names[i], a.basis_names[j]), diff)
    for i, j in all_tuples([a, b]):
        x, y = a.basis(i, 1), b.basis(j, 1)
        diff = p.g.apply(c.right.binary(x, y, lam, 1)) - c.right.binary(p.g.apply(x), p.h.apply(y), lam, 1)
        result.record("right-action", (a.basis_names[i], b.basis_names[j]), diff)
    return result


def split_section_automorphism(e: Extension, p: AutPair) -> StructureMap:
    """(a, b) ↦ (g a, h b) in the coordinates of a homomorphism section."""
    c = cocycle_of_extension(e)
    if not c.is_abelian():
        raise NotAbelian("split automorphisms need an abelian extension")
    if not e.is_split():
        raise NotSplit("stored section is not a homomorphism")
    report = in_aut_actions(p, c)
    if not report.ok:
        raise InvalidWitness(f"pair does not commute with the actions: {report.first()}", report.first().identity)
    return induce_automorphism(p, CdLinearMap.zero(e.B.carrier, e.A.carrier), e)


def wells_partial_a(g: CdLinearMap, e: Extension, bound: Optional[int] = None) -> WellsClass:
    return wells_aut(AutPair(g, CdLinearMap.identity(e.B.carrier)), e, bound)


def wells_partial_b(h: CdLinearMap, e: Extension, bound: Optional[int] = None) -> WellsClass:
    return wells_aut(AutPair(CdLinearMap.identity(e.A.carrier), h), e, bound)


def lift_automorphism(p: AutPair, e: Extension, bound: Optional[int] = None) -> Optional[StructureMap]:
    """An automorphism of E with κ = p, or None when the Wells class is not zero."""
    wc = wells_aut(p, e, bound)
    if not wc.is_zero:
        return None
    return induce_automorphism(p, wc.witness, e)


# -------------------------------------------------------------------
# Derivations
# -------------------------------------------------------------------
@dataclass(frozen=True)
class DerPair:
    dA: CdLinearMap
    dB: CdLinearMap

    @classmethod
    def zero(cls, A: ConformalAlgebra, B: ConformalAlgebra) -> "DerPair":
        return cls(CdLinearMap.zero(A.carrier, A.carrier), CdLinearMap.zero(B.carrier, B.carrier))

    def bracket(self, other: "DerPair") -> "DerPair":
        return DerPair(commutator(self.dA, other.dA), commutator(self.dB, other.dB))


def bimodule_of(c: NonAbelianCocycle) -> Bimodule:
    """A as a B-bimodule through (▷, ◁)."""
    return Bimodule(c.B, c.A.carrier, c.left, c.right, f"{c.A.name}|{c.B.name}")


def check_pair_in_g(d: DerPair, m: Bimodule, A: Optional[ConformalAlgebra] = None) -> CheckResult:
    """
    dA(b▷a) = b▷dA(a) + dB(b)▷a and dA(a◁b) = a◁dB(b) + dA(a)◁b.
    Derivation checks for dB on B, and for dA on A when A is given, are part
    of the report.
    """
    result = CheckResult("pair in g(A, B)")
    result.merge(check_structure_map(d.dB, StructureKind.DERIVATION, m.algebra))
    if A is not None:
        if A.carrier != m.carrier:
            raise ModuleMismatch("A must act on the carrier of the bimodule")
        result.merge(check_structure_map(d.dA, StructureKind.DERIVATION, A))
    a, b = m.carrier, m.algebra.carrier
    lam = Poly.lam(1, 1)
    for i, j in all_tuples([b, a]):
        y, x = b.basis(i, 1), a.basis(j, 1)
        lhs = d.dA.apply(m.act_left(y, x, lam, 1))
        rhs = m.act_left(y, d.dA.apply(x), lam, 1) + m.act_left(d.dB.apply(y), x, lam, 1)
        result.record("der1", (b.basis_names[i], a.basis_names[j]), lhs - rhs)
    for i, j in all_tuples([a, b]):
        x, y = a.basis(i, 1), b.basis(j, 1)
        lhs = d.dA.apply(m.act_right(x, y, lam, 1))
        rhs = m.act_right(x, d.dB.apply(y), lam, 1) + m.act_right(d.dA.apply(x), y, lam, 1)
        result.record("der2", (a.basis_names[i], b.basis_names[j]), lhs - rhs)
    return result


def theta_action(d: DerPair, phi: Cochain) -> Cochain:
    """Θ(d)φ = dA∘φ - Σ_i φ(..., dB b_i, ...)."""
    if phi.degree == 0:
        return Cochain(0, phi.algebra, phi.bimodule, d.dA.apply(phi.values))
    n = phi.degree
    table = phi.values.postcompose(d.dA)
    for i in range(n):
        maps = [d.dB if s == i else None for s in range(n)]
        table = table - phi.values.precompose(maps, phi.values.sources)
    return Cochain(n, phi.algebra, phi.bimodule, table)


def check_theta_commutator(d1: DerPair, d2: DerPair, phi: Cochain) -> CheckResult:
    """Θ([d1, d2]) = Θ(d1)Θ(d2) - Θ(d2)Θ(d1) on φ."""
    result = CheckResult("theta representation")
    lhs = theta_action(d1.bracket(d2), phi)
    rhs = theta_action(d1, theta_action(d2, phi)) - theta_action(d2, theta_action(d1, phi))
    diff = lhs - rhs
    for args, v in diff.nonzero_values():
        result.record("theta-bracket", args, v)
    return result


def _abelian_data(e: Extension) -> Tuple[NonAbelianCocycle, Bimodule, Cochain]:
    c = cocycle_of_extension(e)
    if not c.is_abelian():
        raise NotAbelian("derivation Wells maps need an abelian extension")
    m = bimodule_of(c)
    return c, m, Cochain(2, c.B, m, c.chi)


def _d1_residual(target: Cochain, f: CdLinearMap):
    df = differential(Cochain.from_map(f, target.algebra, target.bimodule))
    diff = df - target
    return {f"wells-der:{','.join(diff.values.arg_names(idx))}": v for idx, v in diff.values.values.items()}


def wells_der(d: DerPair, e: Extension, bound: Optional[int] = None, escalate: int = 2) -> WellsClass:
    """
    Θ(d)[χ] is zero iff d1(f) = Θ(d)χ has a solution f: B → A. The system is
    affine and solved exactly over Q.
    """
    c, m, chi = _abelian_data(e)
    report = check_pair_in_g(d, m, c.A)
    if not report.ok:
        raise InvalidWitness(f"pair is not in g(A, B): {report.first()}", report.first().identity)
    target = theta_action(d, chi)
    if bound is None:
        bound = max(chi.values.d_degree(), d.dA.d_degree(), d.dB.d_degree(), 0) + 2
    try:
        f, used = solve_for_map(
            "derivation wells witness",
            c.B.carrier,
            c.A.carrier,
            lambda x: _d1_residual(target, x),
            None,
            lambda x: not any(not v.is_zero() for v in _d1_residual(target, x).values()),
            bound,
            escalate,
        )
    except UndecidedWithinBounds as exc:
        return WellsClass(target, chi, WellsStatus.NONZERO, bound=exc.bound)
    return WellsClass(target, chi, WellsStatus.ZERO, witness=f, bound=used)


def extend_derivation(d: DerPair, f: CdLinearMap, e: Extension) -> StructureMap:
    """d_E(α a + γ b) = α(dA a + f b) + γ(dB b)."""
    _, m, chi = _abelian_data(e)
    residual = _d1_residual(theta_action(d, chi), f)
    bad = [k for k, v in residual.items() if not v.is_zero()]
    if bad:
        raise InvalidWitness(f"d1(f) differs from theta(d)(chi) at {bad[0]}", "wells-der")
    s = e.section_part()
    images = [e.alpha.apply(d.dA.apply(x)) for x in e.A.carrier.basis_elements()]
    for y in e.B.carrier.basis_elements():
        images.append(e.alpha.apply(f.apply(y) - d.dA.apply(s.apply(y))) + e.gamma.apply(d.dB.apply(y)))
    dE = CdLinearMap.from_images(e.E.carrier, e.E.carrier, images)
    check = check_structure_map(dE, StructureKind.DERIVATION, e.E)
    if not check.ok:
        raise InvalidWitness(f"extended map is not a derivation: {check.first()}", check.first().identity)
    return check.value


def kappa_der(dE: CdLinearMap, e: Extension) -> DerPair:
    """(d_E|_A, β∘d_E∘γ) for d_E with d_E(A) ⊆ A."""
    dA = CdLinearMap.from_images(e.A.carrier, e.A.carrier, _preserves_a(dE, e))
    return DerPair(dA, e.beta.compose(dE).compose(e.gamma))


def extract_der_witness(dE: CdLinearMap, e: Extension) -> CdLinearMap:
    """f(b) = α⁻¹(d_E γ b - γ dB b)."""
    dB = kappa_der(dE, e).dB
    images = [e.to_a(dE.apply(e.gamma.apply(y)) - e.gamma.apply(dB.apply(y))) for y in e.B.carrier.basis_elements()]
    return CdLinearMap.from_images(e.B.carrier, e.A.carrier, images)


def zero_kappa_cocycle(dE: CdLinearMap, e: Extension) -> CdLinearMap:
    """d_E∘γ read in A, for d_E killed by kappa_der."""
    pair = kappa_der(dE, e)
    if not (pair.dA.is_zero() and pair.dB.is_zero()):
        raise InvalidWitness("derivation is not in the kernel of kappa", "kappa")
    return CdLinearMap.from_images(
        e.B.carrier, e.A.carrier, [e.to_a(dE.apply(e.gamma.apply(y))) for y in e.B.carrier.basis_elements()]
    )


def derivation_from_cocycle(f: CdLinearMap, e: Extension) -> StructureMap:
    """d_E(α a + γ b) = α f(b) for a 1-cocycle f: B → A."""
    _, m, _ = _abelian_data(e)
    if not differential(Cochain.from_map(f, e.B, m)).is_zero():
        raise NotACocycle("f is not a 1-cocycle of B with values in A")
    return extend_derivation(DerPair.zero(e.A, e.B), f, e)


def split_der_decomposition(e: Extension, samples: Sequence[CdLinearMap]) -> CheckResult:
    """
    Der_A(E) = η(g(A, B)) ⊕ Z¹(B, A) on sampled derivations: each d_E splits
    as η(κ̄ d_E) plus the derivation of the 1-cocycle (d_E - η κ̄ d_E)∘γ.
    The value holds one (pair, cocycle) decomposition per sample.
    """
    if not e.is_split():
        raise NotSplit("stored section is not a homomorphism")
    _, m, _ = _abelian_data(e)
    zero_f = CdLinearMap.zero(e.B.carrier, e.A.carrier)
    result = CheckResult("split derivation decomposition")
    pieces = []
    etas = []
    for dE in samples:
        result.merge(check_structure_map(dE, StructureKind.DERIVATION, e.E))
        pair = kappa_der(dE, e)
        result.merge(check_pair_in_g(pair, m, e.A))
        eta = extend_derivation(pair, zero_f, e).underlying
        z = zero_kappa_cocycle(dE - eta, e)
        for args, v in differential(Cochain.from_map(z, e.B, m)).nonzero_values():
            result.record("z1", args, v)
        rebuilt = eta + derivation_from_cocycle(z, e).underlying
        _record_map(result, "reconstruction", rebuilt - dE)
        pieces.append((pair, z))
        etas.append((pair, eta))
    for (p1, eta1), (p2, eta2) in ((x, y) for x in etas for y in etas):
        bracket = extend_derivation(p1.bracket(p2), zero_f, e).underlying
        _record_map(result, "eta-bracket", bracket - commutator(eta1, eta2))
    result.value = pieces
    return result
