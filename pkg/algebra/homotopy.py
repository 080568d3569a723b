# algebra/homotopy.py
"""
2-term strongly homotopy associative conformal algebras (A1 --fd--> A0 with
m2 and m3), crossed modules, and crossed extensions
0 → M → Y → X → A → 0 with their class in H³(A, M).
"""

from __future__ import annotations
import logging
from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Tuple

from algebra.cdmod import (
    CdLinearMap,
    FreeCdModule,
    ModElement,
    all_tuples,
    smith_normal_form,
    solve_over_kd,
)
from algebra.checks import CheckResult, Failure
from algebra.conformal import (
    Bimodule,
    ConformalAlgebra,
    SesquilinearMap,
    StructureKind,
    binary_of,
    check_associativity,
    check_bimodule,
    check_structure_map,
    lambda_associator,
)
from algebra.errors import (
    InvalidWitness,
    ModuleMismatch,
    NotACocycle,
    NotSkeletal,
    NotSplit,
    NotStrict,
    UndecidedWithinBounds,
)
from algebra.hochschild import Cochain, CochainBasisTruncation, differential, is_cocycle, solve_coboundary
from algebra.symexpr import Poly

logger = logging.getLogger(__name__)

DEFAULT_CORRECTION_BOUNDS = CochainBasisTruncation(ldeg=2, ddeg=2)


def _names(modules: Sequence[FreeCdModule], idx: Sequence[int]) -> Tuple[str, ...]:
    return tuple(m.basis_names[j] for m, j in zip(modules, idx))


def preimage(f: CdLinearMap, elem: ModElement) -> Optional[ModElement]:
    """Some x with f(x) = elem, solved slice by slice in λ; None when elem is not in the image."""
    arity = elem.arity
    slices = {}
    for lam, part in elem.lambda_slices().items():
        solved = solve_over_kd(f.matrix, list(part.coeffs))
        if solved is None:
            return None
        slices[lam] = ModElement(f.source, solved[0], 0)
    return ModElement.from_slices(f.source, slices, arity)


def _record_table(result: CheckResult, label: str, table: SesquilinearMap) -> None:
    for idx, v in table.nonzero_items():
        result.failures.append(Failure(label, table.arg_names(idx), v))


# -------------------------------------------------------------------
# 2-term structures
# -------------------------------------------------------------------
@dataclass
class TwoTermSHAC:
    """
    A1 --fd--> A0 with m2 on A0×A0 → A0, A0×A1 → A1, A1×A0 → A1 (zero on
    A1×A1) and m3: A0×A0×A0 → A1.
    """

    A1: FreeCdModule
    A0: FreeCdModule
    fd: CdLinearMap
    m00: SesquilinearMap
    m01: SesquilinearMap
    m10: SesquilinearMap
    m3: Optional[SesquilinearMap] = None
    name: str = ""

    def __post_init__(self):
        a0, a1 = self.A0, self.A1
        if self.m3 is None:
            self.m3 = SesquilinearMap((a0, a0, a0), a1)
        shapes = [
            (self.fd.source == a1 and self.fd.target == a0, "fd"),
            (self.m00.sources == (a0, a0) and self.m00.target == a0, "m2 on A0×A0"),
            (self.m01.sources == (a0, a1) and self.m01.target == a1, "m2 on A0×A1"),
            (self.m10.sources == (a1, a0) and self.m10.target == a1, "m2 on A1×A0"),
            (self.m3.sources == (a0, a0, a0) and self.m3.target == a1, "m3"),
        ]
        for ok, what in shapes:
            if not ok:
                raise ModuleMismatch(f"{what} has the wrong shape")

    @property
    def is_skeletal(self) -> bool:
        return self.fd.is_zero()

    @property
    def is_strict(self) -> bool:
        return self.m3.is_zero()

    def base_algebra(self) -> ConformalAlgebra:
        return ConformalAlgebra(self.A0, self.m00, f"{self.name or 'A'}0")

    def module(self) -> Bimodule:
        return Bimodule(self.base_algebra(), self.A1, self.m01, self.m10, f"{self.name or 'A'}1")

    def m3_cochain(self) -> Cochain:
        return Cochain(3, self.base_algebra(), self.module(), self.m3)


def check_twoterm(t: TwoTermSHAC) -> CheckResult:
    """The identities 2-t1 to 2-t8 on basis tuples."""
    result = CheckResult("2-term structure")
    a0, a1 = t.A0, t.A1
    fd = t.fd
    lam = Poly.lam(1, 1)
    for i, j in all_tuples([a0, a1]):
        x, y = a0.basis(i, 1), a1.basis(j, 1)
        diff = fd.apply(t.m01.binary(x, y, lam, 1)) - t.m00.binary(x, fd.apply(y), lam, 1)
        result.record("2-t1", _names([a0, a1], (i, j)), diff)
    for j, i in all_tuples([a1, a0]):
        y, x = a1.basis(j, 1), a0.basis(i, 1)
        diff = fd.apply(t.m10.binary(y, x, lam, 1)) - t.m00.binary(fd.apply(y), x, lam, 1)
        result.record("2-t2", _names([a1, a0], (j, i)), diff)
    for j, k in all_tuples([a1, a1]):
        y1, y2 = a1.basis(j, 1), a1.basis(k, 1)
        diff = t.m01.binary(fd.apply(y1), y2, lam, 1) - t.m10.binary(y1, fd.apply(y2), lam, 1)
        result.record("2-t3", _names([a1, a1], (j, k)), diff)

    m00, m01, m10 = binary_of(t.m00), binary_of(t.m01), binary_of(t.m10)
    lams = [Poly.lam(1, 2), Poly.lam(2, 2)]

    def m3(x, y, z):
        return t.m3.evaluate([x, y, z], lams, 2)

    for idx in all_tuples([a0, a0, a0]):
        x, y, z = (a0.basis(k, 2) for k in idx)
        diff = fd.apply(m3(x, y, z)) - lambda_associator(m00, m00, m00, m00, x, y, z)
        result.record("2-t4", _names([a0] * 3, idx), diff)
    for idx in all_tuples([a1, a0, a0]):
        y, x2, x3 = a1.basis(idx[0], 2), a0.basis(idx[1], 2), a0.basis(idx[2], 2)
        diff = m3(fd.apply(y), x2, x3) - lambda_associator(m10, m10, m10, m00, y, x2, x3)
        result.record("2-t5", _names([a1, a0, a0], idx), diff)
    for idx in all_tuples([a0, a1, a0]):
        x1, y, x3 = a0.basis(idx[0], 2), a1.basis(idx[1], 2), a0.basis(idx[2], 2)
        diff = m3(x1, fd.apply(y), x3) - lambda_associator(m10, m01, m01, m10, x1, y, x3)
        result.record("2-t6", _names([a0, a1, a0], idx), diff)
    for idx in all_tuples([a0, a0, a1]):
        x1, x2, y = a0.basis(idx[0], 2), a0.basis(idx[1], 2), a1.basis(idx[2], 2)
        diff = m3(x1, x2, fd.apply(y)) - lambda_associator(m01, m00, m01, m01, x1, x2, y)
        result.record("2-t7", _names([a0, a0, a1], idx), diff)

    # 2-t8 is the vanishing of d3(m3) for the A0-bimodule A1
    d3 = differential(t.m3_cochain())
    result.checked += a0.rank ** 4
    _record_table(result, "2-t8", d3.values)
    logger.debug("2-term check of %s: %d failures", t.name or "structure", len(result.failures))
    return result


# -------------------------------------------------------------------
# Crossed modules
# -------------------------------------------------------------------
@dataclass
class CrossedModule:
    """(X, Y, ρ: Y → X, ▷: X×Y → Y, ◁: Y×X → Y)."""

    X: ConformalAlgebra
    Y: ConformalAlgebra
    rho: CdLinearMap
    left: SesquilinearMap
    right: SesquilinearMap
    name: str = ""

    def __post_init__(self):
        if self.rho.source != self.Y.carrier or self.rho.target != self.X.carrier:
            raise ModuleMismatch("rho must map Y to X")

    def action(self) -> Bimodule:
        return Bimodule(self.X, self.Y.carrier, self.left, self.right, f"{self.Y.name} over {self.X.name}")


def check_crossed(c: CrossedModule) -> CheckResult:
    """Associativity of X and Y, the action axioms, the crossed identities and ρ being a homomorphism."""
    result = CheckResult("crossed module")
    result.merge(check_associativity(c.X))
    result.merge(check_associativity(c.Y))
    result.merge(check_bimodule(c.action()))
    x_mod, y_mod = c.X.carrier, c.Y.carrier
    mY, left, right = binary_of(c.Y.product), binary_of(c.left), binary_of(c.right)
    for idx in all_tuples([x_mod, y_mod, y_mod]):
        x, y1, y2 = x_mod.basis(idx[0], 2), y_mod.basis(idx[1], 2), y_mod.basis(idx[2], 2)
        result.record("act1", _names([x_mod, y_mod, y_mod], idx), lambda_associator(mY, left, left, mY, x, y1, y2))
    for idx in all_tuples([y_mod, x_mod, y_mod]):
        y1, x, y2 = y_mod.basis(idx[0], 2), x_mod.basis(idx[1], 2), y_mod.basis(idx[2], 2)
        result.record("act2", _names([y_mod, x_mod, y_mod], idx), lambda_associator(mY, right, mY, left, y1, x, y2))
    for idx in all_tuples([y_mod, y_mod, x_mod]):
        y1, y2, x = y_mod.basis(idx[0], 2), y_mod.basis(idx[1], 2), x_mod.basis(idx[2], 2)
        result.record("act3", _names([y_mod, y_mod, x_mod], idx), lambda_associator(right, mY, mY, right, y1, y2, x))

    rho = c.rho
    lam = Poly.lam(1, 1)
    for i, j in all_tuples([x_mod, y_mod]):
        x, y = x_mod.basis(i, 1), y_mod.basis(j, 1)
        diff = rho.apply(c.left.binary(x, y, lam, 1)) - c.X.mul(x, rho.apply(y), lam, 1)
        result.record("cross1", _names([x_mod, y_mod], (i, j)), diff)
        diff = rho.apply(c.right.binary(y, x, lam, 1)) - c.X.mul(rho.apply(y), x, lam, 1)
        result.record("cross2", _names([y_mod, x_mod], (j, i)), diff)
    for i, j in all_tuples([y_mod, y_mod]):
        y1, y2 = y_mod.basis(i, 1), y_mod.basis(j, 1)
        prod = c.Y.mul(y1, y2, lam, 1)
        result.record("cross3", _names([y_mod, y_mod], (i, j)), c.left.binary(rho.apply(y1), y2, lam, 1) - prod)
        result.record("cross4", _names([y_mod, y_mod], (i, j)), prod - c.right.binary(y1, rho.apply(y2), lam, 1))
    for f in check_structure_map(rho, StructureKind.HOM, c.Y, c.X).failures:
        result.failures.append(Failure("rho-hom", f.args, f.difference))
    return result


def crossed_to_shac(c: CrossedModule) -> TwoTermSHAC:
    return TwoTermSHAC(c.Y.carrier, c.X.carrier, c.rho, c.X.product, c.left, c.right, name=c.name)


def shac_to_crossed(t: TwoTermSHAC) -> CrossedModule:
    """X = A0, Y = A1 with y1∘y2 = m2(fd y1, y2), ρ = fd."""
    if not t.is_strict:
        raise NotStrict("a crossed module needs m3 = 0")
    y_product = t.m01.precompose([t.fd, None])
    X = t.base_algebra()
    Y = ConformalAlgebra(t.A1, y_product, f"{t.name or 'A'}1")
    return CrossedModule(X, Y, t.fd, t.m01, t.m10, t.name)


def ideal_crossed_module(A: ConformalAlgebra, generators: Sequence[ModElement], names: Optional[Sequence[str]] = None) -> CrossedModule:
    """The inclusion of the two-sided ideal freely spanned by the generators, acted on by multiplication."""
    names = list(names) if names is not None else [f"i{k + 1}" for k in range(len(generators))]
    carrier = FreeCdModule(tuple(names), "I")
    iota = CdLinearMap.from_images(carrier, A.carrier, list(generators))
    lam = Poly.lam(1, 1)

    def pull(v: ModElement) -> ModElement:
        found = preimage(iota, v)
        if found is None:
            raise ModuleMismatch(f"{v} is not in the span of the ideal generators")
        return found

    a = A.carrier
    y_product = SesquilinearMap.tabulate(
        (carrier, carrier), carrier,
        lambda idx: pull(A.mul(iota.apply(carrier.basis(idx[0], 1)), iota.apply(carrier.basis(idx[1], 1)), lam, 1)),
    )
    left = SesquilinearMap.tabulate(
        (a, carrier), carrier,
        lambda idx: pull(A.mul(a.basis(idx[0], 1), iota.apply(carrier.basis(idx[1], 1)), lam, 1)),
    )
    right = SesquilinearMap.tabulate(
        (carrier, a), carrier,
        lambda idx: pull(A.mul(iota.apply(carrier.basis(idx[0], 1)), a.basis(idx[1], 1), lam, 1)),
    )
    Y = ConformalAlgebra(carrier, y_product, "I")
    return CrossedModule(A, Y, iota, left, right, f"I<{A.name}")


def strict_from_bimodule_map(A: ConformalAlgebra, M1: Bimodule, M0: Bimodule, f: CdLinearMap) -> TwoTermSHAC:
    """
    M1 --(0, f)--> A ⊕ M0 with m2((a, u), (b, v)) = (a∘b, a▷v + u◁b),
    m2((a, u), v') = a▷v', m2(v', (a, u)) = v'◁a and m3 = 0.
    """
    if f.source != M1.carrier or f.target != M0.carrier:
        raise ModuleMismatch("f must map M1 to M0")
    a = A.carrier
    a0 = a.direct_sum(M0.carrier)
    a1 = M1.carrier
    off = a.rank
    lam = Poly.lam(1, 1)

    def split(x: ModElement) -> Tuple[ModElement, ModElement]:
        return ModElement(a, x.coeffs[:off], x.arity), ModElement(M0.carrier, x.coeffs[off:], x.arity)

    def join(x: ModElement, u: ModElement) -> ModElement:
        return ModElement(a0, list(x.coeffs) + list(u.coeffs), x.arity)

    def m00(idx):
        (x1, u1), (x2, u2) = split(a0.basis(idx[0], 1)), split(a0.basis(idx[1], 1))
        return join(A.mul(x1, x2, lam, 1), M0.act_left(x1, u2, lam, 1) + M0.act_right(u1, x2, lam, 1))

    def m01(idx):
        x, _ = split(a0.basis(idx[0], 1))
        return M1.act_left(x, a1.basis(idx[1], 1), lam, 1)

    def m10(idx):
        x, _ = split(a0.basis(idx[1], 1))
        return M1.act_right(a1.basis(idx[0], 1), x, lam, 1)

    fd = CdLinearMap.from_images(a1, a0, [join(a.zero(0), f.apply(v)) for v in a1.basis_elements()])
    return TwoTermSHAC(
        a1,
        a0,
        fd,
        SesquilinearMap.tabulate((a0, a0), a0, m00),
        SesquilinearMap.tabulate((a0, a1), a1, m01),
        SesquilinearMap.tabulate((a1, a0), a1, m10),
        name=f"{M1.name or 'M1'}->{A.name}+{M0.name or 'M0'}",
    )


# -------------------------------------------------------------------
# Skeletal structures and H³
# -------------------------------------------------------------------
def skeletal_to_cocycle(t: TwoTermSHAC) -> Tuple[ConformalAlgebra, Bimodule, Cochain]:
    if not t.is_skeletal:
        raise NotSkeletal("fd is not zero")
    zeta = t.m3_cochain()
    return zeta.algebra, zeta.bimodule, zeta


def cocycle_to_skeletal(A: ConformalAlgebra, M: Bimodule, zeta: Cochain) -> TwoTermSHAC:
    if zeta.degree != 3:
        raise NotACocycle("a skeletal structure needs a 3-cochain")
    if not is_cocycle(zeta).ok:
        raise NotACocycle("m3 must be a 3-cocycle")
    fd = CdLinearMap.zero(M.carrier, A.carrier)
    return TwoTermSHAC(M.carrier, A.carrier, fd, A.product, M.left, M.right, zeta.values, name=f"sk({A.name})")


def check_skeletal_equivalence(t: TwoTermSHAC, other: TwoTermSHAC, sigma: Cochain) -> CheckResult:
    """m2 = m2' and m3' = m3 + d2(σ)."""
    if not (t.is_skeletal and other.is_skeletal):
        raise NotSkeletal("skeletal equivalence compares skeletal structures")
    if t.A0 != other.A0 or t.A1 != other.A1:
        raise ModuleMismatch("structures live on different complexes")
    result = CheckResult("skeletal equivalence")
    for label, mine, theirs in (("m2", t.m00, other.m00), ("m2", t.m01, other.m01), ("m2", t.m10, other.m10)):
        result.checked += 1
        _record_table(result, label, mine - theirs)
    base = t.m3_cochain()
    sigma = Cochain(2, base.algebra, base.bimodule, sigma.values)
    diff = other.m3 - t.m3 - differential(sigma).values
    result.checked += 1
    _record_table(result, "equivalence", diff)
    return result


def solve_skeletal_equivalence(t: TwoTermSHAC, other: TwoTermSHAC, bounds: CochainBasisTruncation) -> Cochain:
    """σ with m3' = m3 + d2(σ), searched inside the bounds."""
    if not (t.is_skeletal and other.is_skeletal):
        raise NotSkeletal("skeletal equivalence compares skeletal structures")
    base = t.m3_cochain()
    return solve_coboundary(Cochain(3, base.algebra, base.bimodule, other.m3 - t.m3), bounds)


# -------------------------------------------------------------------
# Morphisms
# -------------------------------------------------------------------
@dataclass
class TwoTermMorphism:
    f0: CdLinearMap
    f1: CdLinearMap
    f2: SesquilinearMap


def identity_morphism(t: TwoTermSHAC) -> TwoTermMorphism:
    return TwoTermMorphism(
        CdLinearMap.identity(t.A0),
        CdLinearMap.identity(t.A1),
        SesquilinearMap((t.A0, t.A0), t.A1),
    )


def compose_morphisms(g: TwoTermMorphism, f: TwoTermMorphism) -> TwoTermMorphism:
    """(g∘f)² = g²(f⁰ ·, f⁰ ·) + g¹∘f²."""
    f2 = g.f2.precompose([f.f0, f.f0]) + f.f2.postcompose(g.f1)
    return TwoTermMorphism(g.f0.compose(f.f0), g.f1.compose(f.f1), f2)


def check_morphism(m: TwoTermMorphism, source: TwoTermSHAC, target: TwoTermSHAC) -> CheckResult:
    """
    Chain map, fd'f² = f⁰m² - m'²(f⁰, f⁰), f²(a, fd b) = f¹m²(a, b) - m'²(f⁰a, f¹b),
    f²(fd b, a) = f¹m²(b, a) - m'²(f¹b, f⁰a), and
    m'²(f⁰a1, f²(a2, a3)) - f²(a1a2, a3) + f²(a1, a2a3) - m'²(f²(a1, a2), f⁰a3)
    = f¹m³(a1, a2, a3) - m'³(f⁰a1, f⁰a2, f⁰a3).
    """
    a0, a1 = source.A0, source.A1
    if m.f0.source != a0 or m.f0.target != target.A0 or m.f1.source != a1 or m.f1.target != target.A1:
        raise ModuleMismatch("morphism components do not match the structures")
    result = CheckResult("2-term morphism")
    f0, f1, f2 = m.f0, m.f1, m.f2
    chain = target.fd.compose(f1) - f0.compose(source.fd)
    for j, img in enumerate(chain.images()):
        result.record("chain", (a1.basis_names[j],), img)

    lam = Poly.lam(1, 1)
    for idx in all_tuples([a0, a0]):
        x1, x2 = a0.basis(idx[0], 1), a0.basis(idx[1], 1)
        lhs = target.fd.apply(f2.binary(x1, x2, lam, 1))
        rhs = f0.apply(source.m00.binary(x1, x2, lam, 1)) - target.m00.binary(f0.apply(x1), f0.apply(x2), lam, 1)
        result.record("mor1", _names([a0, a0], idx), lhs - rhs)
    for i, j in all_tuples([a0, a1]):
        x, y = a0.basis(i, 1), a1.basis(j, 1)
        lhs = f2.binary(x, source.fd.apply(y), lam, 1)
        rhs = f1.apply(source.m01.binary(x, y, lam, 1)) - target.m01.binary(f0.apply(x), f1.apply(y), lam, 1)
        result.record("mor2", _names([a0, a1], (i, j)), lhs - rhs)
        lhs = f2.binary(source.fd.apply(y), x, lam, 1)
        rhs = f1.apply(source.m10.binary(y, x, lam, 1)) - target.m10.binary(f1.apply(y), f0.apply(x), lam, 1)
        result.record("mor3", _names([a1, a0], (j, i)), lhs - rhs)

    l1, l2 = Poly.lam(1, 2), Poly.lam(2, 2)
    for idx in all_tuples([a0, a0, a0]):
        x1, x2, x3 = (a0.basis(k, 2) for k in idx)
        g1, g3 = f0.apply(x1), f0.apply(x3)
        lhs = (
            target.m01.binary(g1, f2.binary(x2, x3, l2, 2), l1, 2)
            - f2.binary(source.m00.binary(x1, x2, l1, 2), x3, l1 + l2, 2)
            + f2.binary(x1, source.m00.binary(x2, x3, l2, 2), l1, 2)
            - target.m10.binary(f2.binary(x1, x2, l1, 2), g3, l1 + l2, 2)
        )
        rhs = f1.apply(source.m3.evaluate([x1, x2, x3], [l1, l2], 2)) - target.m3.evaluate(
            [g1, f0.apply(x2), g3], [l1, l2], 2
        )
        result.record("mor4", _names([a0] * 3, idx), lhs - rhs)
    return result


# -------------------------------------------------------------------
# Crossed extensions
# -------------------------------------------------------------------
@dataclass
class ImageSection:
    """ς on Im(β): a k[∂]-basis W of Im(β) and chosen preimages S with β(S_i) = W_i."""

    beta: CdLinearMap
    basis: List[ModElement]
    images: List[ModElement]

    def __post_init__(self):
        if len(self.basis) != len(self.images):
            raise ModuleMismatch("image section needs one preimage per basis element")
        for w, s in zip(self.basis, self.images):
            if self.beta.apply(s) != w:
                raise NotSplit(f"beta({s}) is not {w}")

    @classmethod
    def from_smith(cls, beta: CdLinearMap) -> "ImageSection":
        """W_i = β(R e_i) and S_i = R e_i for the nonzero Smith diagonal entries."""
        snf = smith_normal_form(beta.matrix)
        images = []
        for k in range(snf.rank):
            images.append(ModElement(beta.source, [snf.right[j][k] for j in range(beta.source.rank)], 0))
        return cls(beta, [beta.apply(s) for s in images], images)

    def with_images(self, images: Sequence[ModElement]) -> "ImageSection":
        return ImageSection(self.beta, self.basis, list(images))

    def apply(self, x: ModElement) -> ModElement:
        target = self.beta.source
        if x.is_zero():
            return target.zero(x.arity)
        if not self.basis:
            raise ModuleMismatch(f"{x} is not in the image of beta")
        matrix = [[w.coeffs[r] for w in self.basis] for r in range(self.beta.target.rank)]
        slices = {}
        for lam, part in x.lambda_slices().items():
            solved = solve_over_kd(matrix, list(part.coeffs))
            if solved is None:
                raise ModuleMismatch(f"{x} is not in the image of beta")
            total = target.zero(0)
            for c, s in zip(solved[0], self.images):
                total = total + s * c
            slices[lam] = total
        return ModElement.from_slices(target, slices, x.arity)


@dataclass
class CrossedExtension:
    """
    0 → M --α--> Y --β--> X --γ--> A → 0 with (X, Y, β, ▷, ◁) a crossed
    module, a section ϱ of γ and a section ς of β on its image.
    """

    A: ConformalAlgebra
    M: Bimodule
    Y: ConformalAlgebra
    X: ConformalAlgebra
    left: SesquilinearMap
    right: SesquilinearMap
    alpha: CdLinearMap
    beta: CdLinearMap
    gamma: CdLinearMap
    rho: CdLinearMap
    sigma: ImageSection
    name: str = ""

    def crossed_module(self) -> CrossedModule:
        return CrossedModule(self.X, self.Y, self.beta, self.left, self.right, self.name)

    def with_rho(self, rho: CdLinearMap) -> "CrossedExtension":
        return replace(self, rho=rho)

    def with_sigma(self, sigma: ImageSection) -> "CrossedExtension":
        return replace(self, sigma=sigma)

    def induced_module(self, rho: Optional[CdLinearMap] = None) -> Bimodule:
        """Y over A through ϱ: a·y = ϱ(a)▷y, y·a = y◁ϱ(a)."""
        rho = rho or self.rho
        return Bimodule(
            self.A,
            self.Y.carrier,
            self.left.precompose([rho, None]),
            self.right.precompose([None, rho]),
            "Y via rho",
        )


def _kernel_in_image(result: CheckResult, label: str, f: CdLinearMap, g: CdLinearMap) -> None:
    """Im f = Ker g as submodules of the middle term."""
    _, kernel = solve_over_kd(g.matrix, [Poly.zero()] * g.target.rank)
    for vec in kernel:
        v = ModElement(g.source, vec, 0)
        result.checked += 1
        if preimage(f, v) is None:
            result.failures.append(Failure(label, (str(v),), v))
    for j, img in enumerate(g.compose(f).images()):
        result.record(label, (f.source.basis_names[j],), img)


def check_crossed_extension(s: CrossedExtension) -> CheckResult:
    """Exactness, homomorphisms, the crossed module, trivial product on M, sections and the induced bimodule."""
    result = CheckResult("crossed extension")
    result.merge(check_crossed(s.crossed_module()))
    m_alg = ConformalAlgebra.trivial(s.M.carrier, "M")
    for f in check_structure_map(s.alpha, StructureKind.HOM, m_alg, s.Y).failures:
        result.failures.append(Failure("alpha-hom", f.args, f.difference))
    for f in check_structure_map(s.gamma, StructureKind.HOM, s.X, s.A).failures:
        result.failures.append(Failure("gamma-hom", f.args, f.difference))

    snf = smith_normal_form(s.alpha.matrix)
    result.checked += 1
    if snf.rank != s.M.carrier.rank:
        result.failures.append(Failure("exact-M", (s.M.carrier.label,), s.M.carrier.zero(0)))
    _kernel_in_image(result, "exact-Y", s.alpha, s.beta)
    _kernel_in_image(result, "exact-X", s.beta, s.gamma)
    for e in s.A.carrier.basis_elements():
        result.checked += 1
        if preimage(s.gamma, e) is None:
            result.failures.append(Failure("exact-A", (str(e),), e))

    lam = Poly.lam(1, 1)
    mc = s.M.carrier
    for i, j in all_tuples([mc, mc]):
        prod = s.Y.mul(s.alpha.apply(mc.basis(i, 1)), s.alpha.apply(mc.basis(j, 1)), lam, 1)
        result.record("trivial-M", _names([mc, mc], (i, j)), prod)

    a = s.A.carrier
    back = s.gamma.compose(s.rho) - CdLinearMap.identity(a)
    for j, img in enumerate(back.images()):
        result.record("section", (a.basis_names[j],), img)

    induced = s.induced_module()
    for i, j in all_tuples([a, mc]):
        x, v = a.basis(i, 1), mc.basis(j, 1)
        diff = induced.act_left(x, s.alpha.apply(v), lam, 1) - s.alpha.apply(s.M.act_left(x, v, lam, 1))
        result.record("induced-bimodule", _names([a, mc], (i, j)), diff)
        diff = induced.act_right(s.alpha.apply(v), x, lam, 1) - s.alpha.apply(s.M.act_right(v, x, lam, 1))
        result.record("induced-bimodule", _names([mc, a], (j, i)), diff)
    return result


def _curvature(s: CrossedExtension, rho: CdLinearMap) -> SesquilinearMap:
    """g(a, b) = ς(ϱa∘ϱb - ϱ(a∘b)) with values in Y."""
    a = s.A.carrier
    lam = Poly.lam(1, 1)

    def entry(idx):
        x, y = a.basis(idx[0], 1), a.basis(idx[1], 1)
        return s.sigma.apply(s.X.mul(rho.apply(x), rho.apply(y), lam, 1) - rho.apply(s.A.mul(x, y, lam, 1)))

    return SesquilinearMap.tabulate((a, a), s.Y.carrier, entry)


def _theta_in_y(s: CrossedExtension, rho: CdLinearMap) -> Cochain:
    """f = d2(g) computed with the actions ϱ(a)▷ and ◁ϱ(c) on Y."""
    g = Cochain(2, s.A, s.induced_module(rho), _curvature(s, rho))
    return differential(g)


def _to_m(s: CrossedExtension, table: SesquilinearMap, result: CheckResult, label: str) -> Optional[SesquilinearMap]:
    values = {}
    for idx, v in table.nonzero_items():
        found = preimage(s.alpha, v)
        if found is None:
            result.failures.append(Failure(label, table.arg_names(idx), s.beta.apply(v)))
            continue
        values[idx] = found
    if not result.ok:
        return None
    return SesquilinearMap(table.sources, s.M.carrier, values)


def _require_split(s: CrossedExtension) -> None:
    back = s.gamma.compose(s.rho)
    if back != CdLinearMap.identity(s.A.carrier):
        raise NotSplit("rho is not a section of gamma")


def crossed_extension_theta(s: CrossedExtension) -> CheckResult:
    """
    The 3-cochain f(a, b, c) = ϱ(a)▷g(b, c) - g(a∘b, c) + g(a, b∘c) - g(a, b)◁ϱ(c)
    read in M. The value is the cochain when f lands in M; failures record
    values outside M or a nonzero d3(f).
    """
    _require_split(s)
    result = CheckResult("crossed extension class")
    f_y = _theta_in_y(s, s.rho)
    result.checked += s.A.rank ** 3
    table = _to_m(s, f_y.values, result, "in-M")
    if table is None:
        return result
    f = Cochain(3, s.A, s.M, table)
    result.merge(is_cocycle(f))
    result.value = f
    return result


def _correction_or_solve(target: Cochain, candidate: Optional[Cochain], bounds: Optional[CochainBasisTruncation], what: str) -> Cochain:
    if candidate is not None and differential(candidate) == target:
        return candidate
    logger.info("%s: closed-form correction does not match, solving for a coboundary preimage", what)
    try:
        return solve_coboundary(target, bounds or DEFAULT_CORRECTION_BOUNDS)
    except UndecidedWithinBounds:
        raise InvalidWitness(f"{what}: no correction found within the bounds", what)


def section_change_correction(
    s: CrossedExtension,
    rho_bar: CdLinearMap,
    bounds: Optional[CochainBasisTruncation] = None,
) -> Cochain:
    """
    A 2-cochain c in C²(A, M) with f̄ - f = d2(c), where f̄ uses the section ϱ̄.
    The candidate is ḡ - g - g̃ with η = ς(ϱ̄ - ϱ) and
    g̃(a, b) = ϱ̄a▷ηb + ηa◁ϱ̄b - η(a∘b) - ηa∘ηb.
    """
    _require_split(s)
    other = s.with_rho(rho_bar)
    _require_split(other)
    a = s.A.carrier
    eta = CdLinearMap.from_images(
        a, s.Y.carrier, [s.sigma.apply(rho_bar.apply(e) - s.rho.apply(e)) for e in a.basis_elements()]
    )
    lam = Poly.lam(1, 1)

    def tilde(idx):
        x, y = a.basis(idx[0], 1), a.basis(idx[1], 1)
        return (
            s.left.binary(rho_bar.apply(x), eta.apply(y), lam, 1)
            + s.right.binary(eta.apply(x), rho_bar.apply(y), lam, 1)
            - eta.apply(s.A.mul(x, y, lam, 1))
            - s.Y.mul(eta.apply(x), eta.apply(y), lam, 1)
        )

    g_tilde = SesquilinearMap.tabulate((a, a), s.Y.carrier, tilde)
    diff_y = _curvature(other, rho_bar) - _curvature(s, s.rho) - g_tilde
    scratch = CheckResult("section change")
    table = _to_m(s, diff_y, scratch, "in-M")
    candidate = Cochain(2, s.A, s.M, table) if table is not None else None

    f = crossed_extension_theta(s)
    f_bar = crossed_extension_theta(other)
    if f.value is None or f_bar.value is None:
        raise InvalidWitness("crossed extension class does not land in M", "in-M")
    return _correction_or_solve(f_bar.value - f.value, candidate, bounds, "section change")


def check_crossed_morphism(s: CrossedExtension, t: CrossedExtension, phi: CdLinearMap, psi: CdLinearMap) -> CheckResult:
    """φ, ψ homomorphisms with φα = α', β'φ = ψβ and γ'ψ = γ."""
    result = CheckResult("crossed extension morphism")
    for label, f, src, tgt in (("phi-hom", phi, s.Y, t.Y), ("psi-hom", psi, s.X, t.X)):
        for fail in check_structure_map(f, StructureKind.HOM, src, tgt).failures:
            result.failures.append(Failure(label, fail.args, fail.difference))
    for label, diff in (
        ("square-M", phi.compose(s.alpha) - t.alpha),
        ("square-Y", t.beta.compose(phi) - psi.compose(s.beta)),
        ("square-X", t.gamma.compose(psi) - s.gamma),
    ):
        for j, img in enumerate(diff.images()):
            result.record(label, (diff.source.basis_names[j],), img)
    return result


def morphism_correction(
    s: CrossedExtension,
    t: CrossedExtension,
    phi: CdLinearMap,
    psi: CdLinearMap,
    bounds: Optional[CochainBasisTruncation] = None,
) -> Cochain:
    """
    h(a, b) = (φς - ς'ψ)(ϱa∘ϱb - ϱ(a∘b)) in C²(A, M), with f - f' = d2(h)
    where f' is computed on t with the section ψ∘ϱ.
    """
    report = check_crossed_morphism(s, t, phi, psi)
    if not report.ok:
        raise InvalidWitness(f"not a morphism of crossed extensions: {report.first()}", report.first().identity)
    _require_split(s)
    t = t.with_rho(psi.compose(s.rho))
    a = s.A.carrier
    lam = Poly.lam(1, 1)

    def entry(idx):
        x, y = a.basis(idx[0], 1), a.basis(idx[1], 1)
        k = s.X.mul(s.rho.apply(x), s.rho.apply(y), lam, 1) - s.rho.apply(s.A.mul(x, y, lam, 1))
        return phi.apply(s.sigma.apply(k)) - t.sigma.apply(psi.apply(k))

    h_y = SesquilinearMap.tabulate((a, a), t.Y.carrier, entry)
    scratch = CheckResult("morphism correction")
    table = _to_m(t, h_y, scratch, "in-M")
    candidate = Cochain(2, s.A, s.M, table) if table is not None else None

    f = crossed_extension_theta(s)
    f_other = crossed_extension_theta(t)
    if f.value is None or f_other.value is None:
        raise InvalidWitness("crossed extension class does not land in M", "in-M")
    target = f.value - Cochain(3, s.A, s.M, f_other.value.values)
    return _correction_or_solve(target, candidate, bounds, "morphism")
