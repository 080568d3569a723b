# algebra/nonabelian.py
"""
Non-abelian 2-cocycles (▷, ◁, χ) on B with values in A, the extensions
A → A⊕B → B they build, and the equivalence of cocycles under a module map
δ: B → A.
"""

from __future__ import annotations
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from algebra.cdmod import (
    CdLinearMap,
    FreeCdModule,
    ModElement,
    Residual,
    ResidualSystem,
    UnknownMap,
    all_tuples,
    bounded_coefficient_solve,
    default_degree_bound,
    degree_schedule,
    inject,
    project,
    zero_matrix,
)
from algebra.checks import CheckResult, Failure
from algebra.conformal import (
    Bimodule,
    ConformalAlgebra,
    SesquilinearMap,
    binary_of,
    check_associativity,
    check_structure_map,
    lambda_associator,
)
from algebra.errors import (
    InvalidCocycle,
    InvalidWitness,
    ModuleMismatch,
    NoRationalWitness,
    UndecidedWithinBounds,
)
from algebra.groebner import DecisionStatus, PolySystem, decide
from algebra.symexpr import Poly

logger = logging.getLogger(__name__)


class NonAbelianCocycle:
    """The triple (▷: B×A→A, ◁: A×B→A, χ: B×B→A)."""

    def __init__(
        self,
        A: ConformalAlgebra,
        B: ConformalAlgebra,
        left: Optional[SesquilinearMap] = None,
        right: Optional[SesquilinearMap] = None,
        chi: Optional[SesquilinearMap] = None,
    ):
        a, b = A.carrier, B.carrier
        self.A = A
        self.B = B
        self.left = left if left is not None else SesquilinearMap((b, a), a)
        self.right = right if right is not None else SesquilinearMap((a, b), a)
        self.chi = chi if chi is not None else SesquilinearMap((b, b), a)
        if self.left.sources != (b, a) or self.left.target != a:
            raise ModuleMismatch("left action must map B x A to A")
        if self.right.sources != (a, b) or self.right.target != a:
            raise ModuleMismatch("right action must map A x B to A")
        if self.chi.sources != (b, b) or self.chi.target != a:
            raise ModuleMismatch("chi must map B x B to A")

    @classmethod
    def from_bimodule(cls, A: ConformalAlgebra, m: Bimodule, chi: Optional[SesquilinearMap] = None) -> "NonAbelianCocycle":
        """Actions of a B-bimodule structure on A's carrier, with the given χ."""
        if m.carrier != A.carrier:
            raise ModuleMismatch("bimodule carrier must be the carrier of A")
        return cls(A, m.algebra, m.left, m.right, chi)

    def replace(self, left=None, right=None, chi=None) -> "NonAbelianCocycle":
        return NonAbelianCocycle(
            self.A,
            self.B,
            left if left is not None else self.left,
            right if right is not None else self.right,
            chi if chi is not None else self.chi,
        )

    def is_abelian(self) -> bool:
        return self.A.is_trivial()

    def d_degree(self) -> int:
        return max(
            self.left.d_degree(),
            self.right.d_degree(),
            self.chi.d_degree(),
            self.A.d_degree(),
            self.B.d_degree(),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NonAbelianCocycle):
            return NotImplemented
        return (self.left, self.right, self.chi) == (other.left, other.right, other.chi)

    def __hash__(self) -> int:
        return hash((self.left, self.right, self.chi))

    def __repr__(self) -> str:
        return f"NonAbelianCocycle(B={self.B!r}, A={self.A!r})"


@dataclass
class Extension:
    """0 → A --α--> E --β--> B → 0 on E = A ⊕ B with a stored section γ."""

    E: ConformalAlgebra
    A: ConformalAlgebra
    B: ConformalAlgebra
    alpha: CdLinearMap
    beta: CdLinearMap
    gamma: CdLinearMap
    name: str = ""

    def to_a(self, x: ModElement) -> ModElement:
        """α⁻¹ on α(A); raises when x has a B-component."""
        if not project(x, self.B.carrier, self.A.rank).is_zero():
            raise ModuleMismatch(f"{x} does not lie in the image of A")
        return project(x, self.A.carrier, 0)

    def section_part(self) -> CdLinearMap:
        """s = π_A ∘ γ, the A-component of the section."""
        a, b = self.A.carrier, self.B.carrier
        rows = [list(self.gamma.matrix[i]) for i in range(a.rank)]
        return CdLinearMap(b, a, rows)

    def is_split(self) -> bool:
        """True when the stored section is an algebra homomorphism."""
        return check_structure_map(self.gamma, "hom", self.B, self.E).ok

    def with_section(self, gamma: CdLinearMap) -> "Extension":
        if gamma.source != self.B.carrier or gamma.target != self.E.carrier:
            raise ModuleMismatch("a section maps B into E")
        if self.beta.compose(gamma) != CdLinearMap.identity(self.B.carrier):
            raise InvalidWitness("beta o gamma is not the identity", "section")
        return Extension(self.E, self.A, self.B, self.alpha, self.beta, gamma, self.name)


def canonical_maps(A: ConformalAlgebra, B: ConformalAlgebra, carrier: FreeCdModule) -> Tuple[CdLinearMap, CdLinearMap, CdLinearMap]:
    """α(a) = (a, 0), β(a, b) = b, γ(b) = (0, b)."""
    ra, rb = A.rank, B.rank
    one, zero = Poly.one(), Poly.zero()
    alpha = CdLinearMap(A.carrier, carrier, [[one if i == j else zero for j in range(ra)] for i in range(ra + rb)])
    beta = CdLinearMap(carrier, B.carrier, [[one if j == ra + i else zero for j in range(ra + rb)] for i in range(rb)])
    gamma = CdLinearMap(B.carrier, carrier, [[one if i == ra + j else zero for j in range(rb)] for i in range(ra + rb)])
    return alpha, beta, gamma


def extension_from_algebra(E: ConformalAlgebra, A: ConformalAlgebra, B: ConformalAlgebra, gamma: Optional[CdLinearMap] = None, name: str = "") -> Extension:
    """Wrap an algebra on A ⊕ B (A's basis first) as an extension."""
    if E.rank != A.rank + B.rank:
        raise ModuleMismatch("middle algebra must have rank rank(A) + rank(B)")
    alpha, beta, canonical = canonical_maps(A, B, E.carrier)
    ext = Extension(E, A, B, alpha, beta, canonical, name)
    return ext.with_section(gamma) if gamma is not None else ext


# -------------------------------------------------------------------
# Cocycle identities
# -------------------------------------------------------------------
def check_cocycle(c: NonAbelianCocycle) -> CheckResult:
    """The seven identities coh1, coh2, coh3, coh4, coh4', coh4'' and coh5."""
    result = CheckResult("non-abelian 2-cocycle")
    a, b = c.A.carrier, c.B.carrier
    mA, mB = binary_of(c.A.product), binary_of(c.B.product)
    left, right, chi = binary_of(c.left), binary_of(c.right), binary_of(c.chi)
    lam, mu = Poly.lam(1, 2), Poly.lam(2, 2)

    def names(mods, idx):
        return tuple(m.basis_names[j] for m, j in zip(mods, idx))

    for idx in all_tuples([b, b, a]):
        b1, b2, x = b.basis(idx[0], 2), b.basis(idx[1], 2), a.basis(idx[2], 2)
        diff = lambda_associator(left, mB, left, left, b1, b2, x) + mA(chi(b1, b2, lam), x, lam + mu)
        result.record("coh1", names([b, b, a], idx), diff)
    for idx in all_tuples([a, b, b]):
        x, b1, b2 = a.basis(idx[0], 2), b.basis(idx[1], 2), b.basis(idx[2], 2)
        diff = lambda_associator(right, right, right, mB, x, b1, b2) - mA(x, chi(b1, b2, mu), lam)
        result.record("coh2", names([a, b, b], idx), diff)
    for idx in all_tuples([b, a, b]):
        b1, x, b2 = b.basis(idx[0], 2), a.basis(idx[1], 2), b.basis(idx[2], 2)
        result.record("coh3", names([b, a, b], idx), lambda_associator(right, left, left, right, b1, x, b2))
    for idx in all_tuples([a, a, b]):
        x1, x2, y = a.basis(idx[0], 2), a.basis(idx[1], 2), b.basis(idx[2], 2)
        result.record("coh4", names([a, a, b], idx), lambda_associator(right, mA, mA, right, x1, x2, y))
    for idx in all_tuples([b, a, a]):
        y, x1, x2 = b.basis(idx[0], 2), a.basis(idx[1], 2), a.basis(idx[2], 2)
        result.record("coh4'", names([b, a, a], idx), lambda_associator(mA, left, left, mA, y, x1, x2))
    for idx in all_tuples([a, b, a]):
        x1, y, x2 = a.basis(idx[0], 2), b.basis(idx[1], 2), a.basis(idx[2], 2)
        result.record("coh4''", names([a, b, a], idx), lambda_associator(mA, right, mA, left, x1, y, x2))
    for idx in all_tuples([b, b, b]):
        b1, b2, b3 = (b.basis(j, 2) for j in idx)
        lhs = left(b1, chi(b2, b3, mu), lam) + chi(b1, mB(b2, b3, mu), lam)
        rhs = chi(mB(b1, b2, lam), b3, lam + mu) + right(chi(b1, b2, lam), b3, lam + mu)
        result.record("coh5", names([b, b, b], idx), lhs - rhs)
    logger.debug("cocycle check: %d identities, %d failures", result.checked, len(result.failures))
    return result


# basis arrangement of a failing associativity triple in A ⊕ B → identity label
ASSOCIATOR_LABELS = {
    "BBA": "coh1",
    "ABB": "coh2",
    "BAB": "coh3",
    "AAB": "coh4",
    "BAA": "coh4'",
    "ABA": "coh4''",
    "AAA": "assocA",
}


def associator_labels(ext: Extension, report: CheckResult) -> List[str]:
    """Translate associativity failures of E into cocycle identity labels."""
    ra = ext.A.rank
    names = ext.E.carrier.basis_names
    labels = []
    for failure in report.failures:
        pattern = "".join("A" if names.index(n) < ra else "B" for n in failure.args)
        if pattern == "BBB":
            a_part = project(failure.difference, ext.A.carrier, 0)
            label = "coh5" if not a_part.is_zero() else "assocB"
        else:
            label = ASSOCIATOR_LABELS[pattern]
        if label not in labels:
            labels.append(label)
    return labels


def build_extension(c: NonAbelianCocycle, check: bool = True, name: str = "") -> Extension:
    """
    The algebra on A ⊕ B with
    (a1, b1) ∘_λ (a2, b2) = (a1∘a2 + b1▷a2 + a1◁b2 + χ(b1, b2), b1∘b2).
    """
    if check:
        report = check_cocycle(c)
        if not report.ok:
            raise InvalidCocycle(f"cocycle identities fail: {', '.join(sorted(report.identities()))}")
    a, b = c.A.carrier, c.B.carrier
    carrier = a.direct_sum(b, name)
    ra = a.rank
    table: Dict[Tuple[int, int], ModElement] = {}

    def put(key, value):
        table[key] = table[key] + value if key in table else value

    for (i, j), v in c.A.product.values.items():
        put((i, j), inject(v, carrier, 0))
    for (i, j), v in c.left.values.items():
        put((ra + i, j), inject(v, carrier, 0))
    for (i, j), v in c.right.values.items():
        put((i, ra + j), inject(v, carrier, 0))
    for (i, j), v in c.chi.values.items():
        put((ra + i, ra + j), inject(v, carrier, 0))
    for (i, j), v in c.B.product.values.items():
        put((ra + i, ra + j), inject(v, carrier, ra))
    E = ConformalAlgebra.from_table(carrier, table, name or f"E({c.B.name},{c.A.name})")
    return extension_from_algebra(E, c.A, c.B, name=name)


def check_extension(e: Extension) -> CheckResult:
    """α and β are homomorphisms, E is associative, β∘γ = id and β∘α = 0."""
    result = CheckResult("extension")
    result.merge(check_associativity(e.E))
    for f in check_structure_map(e.alpha, "hom", e.A, e.E).failures:
        result.failures.append(Failure("alpha-hom", f.args, f.difference))
    for f in check_structure_map(e.beta, "hom", e.E, e.B).failures:
        result.failures.append(Failure("beta-hom", f.args, f.difference))
    b = e.B.carrier
    bg = e.beta.compose(e.gamma) - CdLinearMap.identity(b)
    for j, img in enumerate(bg.images()):
        result.record("section", (b.basis_names[j],), img)
    ba = e.beta.compose(e.alpha)
    for j, img in enumerate(ba.images()):
        result.record("exactness", (e.A.carrier.basis_names[j],), img)
    return result


def cocycle_of_extension(e: Extension) -> NonAbelianCocycle:
    """b▷a = γ(b)∘a, a◁b = a∘γ(b), χ(b1, b2) = γ(b1)∘γ(b2) - γ(b1∘b2), read back in A."""
    a, b = e.A.carrier, e.B.carrier
    lam = Poly.lam(1, 1)
    E, g, al = e.E, e.gamma, e.alpha

    def left(idx):
        return e.to_a(E.mul(g.apply(b.basis(idx[0], 1)), al.apply(a.basis(idx[1], 1)), lam, 1))

    def right(idx):
        return e.to_a(E.mul(al.apply(a.basis(idx[0], 1)), g.apply(b.basis(idx[1], 1)), lam, 1))

    def chi(idx):
        b1, b2 = b.basis(idx[0], 1), b.basis(idx[1], 1)
        value = E.mul(g.apply(b1), g.apply(b2), lam, 1) - g.apply(e.B.mul(b1, b2, lam, 1))
        return e.to_a(value)

    return NonAbelianCocycle(
        e.A,
        e.B,
        SesquilinearMap.tabulate((b, a), a, left),
        SesquilinearMap.tabulate((a, b), a, right),
        SesquilinearMap.tabulate((b, b), a, chi),
    )


def section_difference(e: Extension, gamma: CdLinearMap) -> CdLinearMap:
    """δ = α⁻¹(γ' - γ): B → A."""
    diff = gamma - e.gamma
    return CdLinearMap.from_images(e.B.carrier, e.A.carrier, [e.to_a(img) for img in diff.images()])


# -------------------------------------------------------------------
# Equivalence
# -------------------------------------------------------------------
def _equivalence_residual(c1: NonAbelianCocycle, c2: NonAbelianCocycle, delta: CdLinearMap) -> Residual:
    """Differences of the two sides of coh6, coh7 and coh8, keyed by identity and basis tuple."""
    a, b = c1.A.carrier, c1.B.carrier
    lam = Poly.lam(1, 1)
    out: Residual = {}
    for i, j in all_tuples([b, a]):
        y, x = b.basis(i, 1), a.basis(j, 1)
        diff = c2.left.binary(y, x, lam, 1) - c1.left.binary(y, x, lam, 1) - c1.A.mul(delta.apply(y), x, lam, 1)
        out[f"coh6:{b.basis_names[i]},{a.basis_names[j]}"] = diff
    for i, j in all_tuples([a, b]):
        x, y = a.basis(i, 1), b.basis(j, 1)
        diff = c2.right.binary(x, y, lam, 1) - c1.right.binary(x, y, lam, 1) - c1.A.mul(x, delta.apply(y), lam, 1)
        out[f"coh7:{a.basis_names[i]},{b.basis_names[j]}"] = diff
    for i, j in all_tuples([b, b]):
        y1, y2 = b.basis(i, 1), b.basis(j, 1)
        d1, d2 = delta.apply(y1), delta.apply(y2)
        rhs = (
            c2.left.binary(y1, d2, lam, 1)
            - delta.apply(c1.B.mul(y1, y2, lam, 1))
            + c2.right.binary(d1, y2, lam, 1)
            - c1.A.mul(d1, d2, lam, 1)
        )
        diff = c2.chi.binary(y1, y2, lam, 1) - c1.chi.binary(y1, y2, lam, 1) - rhs
        out[f"coh8:{b.basis_names[i]},{b.basis_names[j]}"] = diff
    return out


def _equivalence_quadratic(c: NonAbelianCocycle, x: CdLinearMap, y: CdLinearMap) -> Residual:
    b = c.B.carrier
    lam = Poly.lam(1, 1)
    out: Residual = {}
    if c.A.is_trivial():
        return out
    for i, j in all_tuples([b, b]):
        y1, y2 = b.basis(i, 1), b.basis(j, 1)
        out[f"coh8:{b.basis_names[i]},{b.basis_names[j]}"] = c.A.mul(x.apply(y1), y.apply(y2), lam, 1)
    return out


def check_equivalence_witness(c1: NonAbelianCocycle, c2: NonAbelianCocycle, delta: CdLinearMap) -> CheckResult:
    """coh6, coh7 and coh8 for (c1, c2) with witness δ."""
    if delta.source != c1.B.carrier or delta.target != c1.A.carrier:
        raise ModuleMismatch("equivalence witness must map B to A")
    result = CheckResult("equivalence witness")
    for key, diff in _equivalence_residual(c1, c2, delta).items():
        identity, args = key.split(":", 1)
        result.record(identity, tuple(args.split(",")), diff)
    return result


def witness_system(
    unknown: UnknownMap,
    residual,
    quadratic=None,
) -> Tuple[ResidualSystem, List[Dict]]:
    system = ResidualSystem.expand(unknown, residual, quadratic)
    return system, system.equations()


def solve_for_map(
    what: str,
    source: FreeCdModule,
    target: FreeCdModule,
    residual,
    quadratic,
    verify,
    bound: int,
    escalate: int = 2,
) -> Tuple[CdLinearMap, int]:
    """
    Shared bounded search for a module map X with residual(X) = 0.

    Affine systems are solved exactly; quadratic ones go to the Gröbner
    decision procedure. Returns the map, which passes `verify`, and the
    ∂-degree bound it was found at.
    """
    last = bound
    for degree in degree_schedule(bound, escalate):
        last = degree
        unknown = UnknownMap(source, target, degree)
        system, equations = witness_system(unknown, residual, quadratic)
        logger.debug("%s: %d unknowns, %d equations at degree %d", what, unknown.size, len(equations), degree)
        if system.is_affine():
            solution = bounded_coefficient_solve(equations)
            if solution is None:
                continue
        else:
            decision = decide(PolySystem(unknown.size, equations))
            if decision.status is DecisionStatus.INCONSISTENT:
                continue
            if decision.status is DecisionStatus.NO_RATIONAL:
                raise NoRationalWitness(f"{what} exists over the closure but no rational point was found")
            solution = decision.assignment or {}
        candidate = unknown.instantiate(solution)
        if not verify(candidate):
            raise InvalidWitness(f"{what} failed re-verification", what)
        return candidate, degree
    raise UndecidedWithinBounds(what, last)


def solve_equivalence(
    c1: NonAbelianCocycle,
    c2: NonAbelianCocycle,
    bound: Optional[int] = None,
    escalate: int = 2,
) -> Tuple[CdLinearMap, int]:
    """A witness δ for c1 ≈ c2 and the ∂-degree bound it was found at."""
    if bound is None:
        bound = max(c1.d_degree(), c2.d_degree(), 0) + 2
    return solve_for_map(
        "equivalence witness",
        c1.B.carrier,
        c1.A.carrier,
        lambda x: _equivalence_residual(c1, c2, x),
        None if c1.A.is_trivial() else (lambda x, y: _equivalence_quadratic(c1, x, y)),
        lambda d: check_equivalence_witness(c1, c2, d).ok,
        bound,
        escalate,
    )


def invert_witness(c1: NonAbelianCocycle, c2: NonAbelianCocycle, delta: CdLinearMap, bound: Optional[int] = None) -> CdLinearMap:
    """A witness for c2 ≈ c1 given one for c1 ≈ c2; -δ is tried first."""
    candidate = -delta
    if check_equivalence_witness(c2, c1, candidate).ok:
        return candidate
    logger.info("negated witness failed, solving for the inverse witness")
    return solve_equivalence(c2, c1, bound)[0]
