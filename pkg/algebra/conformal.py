# algebra/conformal.py
"""
Associative conformal algebras and their bimodules.

Every λ-product, action and cochain is a SesquilinearMap: values on basis
tuples, extended to arbitrary arguments by the two substitution rules. A
coefficient f(∂) in a non-final slot with formal value ν contributes f(-ν);
in the final slot it contributes f(∂ + Σν).
"""

from __future__ import annotations
import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from algebra.cdmod import CdLinearMap, FreeCdModule, ModElement, all_tuples, inject
from algebra.checks import CheckResult
from algebra.errors import (
    DegreeMismatch,
    InvalidBimodule,
    ModuleMismatch,
    NotAssociativeBase,
    NotInvertible,
)
from algebra.symexpr import Poly

logger = logging.getLogger(__name__)

Nu = Union[Poly, int]


def _as_poly(nu: Nu, arity: int) -> Poly:
    if isinstance(nu, Poly):
        return nu.lift(arity)
    return Poly.const(nu, arity)


class SesquilinearMap:
    """
    A conformal sesquilinear map sources[0] × ... × sources[n-1] → target.

    values[(j1, ..., jn)] is the image of the basis tuple, an element of the
    target with arity n-1. Missing tuples are zero.
    """

    __slots__ = ("sources", "target", "values")

    def __init__(
        self,
        sources: Sequence[FreeCdModule],
        target: FreeCdModule,
        values: Optional[Mapping[Tuple[int, ...], ModElement]] = None,
    ):
        self.sources: Tuple[FreeCdModule, ...] = tuple(sources)
        self.target = target
        arity = max(len(self.sources) - 1, 0)
        clean: Dict[Tuple[int, ...], ModElement] = {}
        for idx, v in (values or {}).items():
            if len(idx) != len(self.sources):
                raise DegreeMismatch(f"basis tuple {idx} for a map of degree {len(self.sources)}")
            if v.module != target:
                raise ModuleMismatch(f"value in {v.module.label}, expected {target.label}")
            if not v.is_zero():
                clean[tuple(idx)] = v.lift(arity)
        self.values = clean

    @property
    def degree(self) -> int:
        return len(self.sources)

    @classmethod
    def tabulate(
        cls,
        sources: Sequence[FreeCdModule],
        target: FreeCdModule,
        fn: Callable[[Tuple[int, ...]], ModElement],
    ) -> "SesquilinearMap":
        return cls(sources, target, {idx: fn(idx) for idx in all_tuples(sources)})

    def value(self, idx: Sequence[int]) -> ModElement:
        v = self.values.get(tuple(idx))
        return v if v is not None else self.target.zero(max(self.degree - 1, 0))

    def evaluate(self, args: Sequence[ModElement], nus: Sequence[Nu], arity: int) -> ModElement:
        """
        φ(args) with formal λ-values nus for the first n-1 slots, in a λ-context
        of the given arity. The nus may contain ∂.
        """
        n = self.degree
        if len(args) != n or len(nus) != max(n - 1, 0):
            raise DegreeMismatch(f"{len(args)} arguments and {len(nus)} lambdas for degree {n}")
        for a, src in zip(args, self.sources):
            if a.module != src:
                raise ModuleMismatch(f"argument in {a.module.label}, expected {src.label}")
        ext = arity + n - 1
        mus = [Poly.lam(arity + s + 1, ext) for s in range(n - 1)]
        shift = Poly.partial(ext)
        for mu in mus:
            shift = shift + mu
        coeffs: List[Dict[int, Poly]] = []
        for s, a in enumerate(args):
            image = -mus[s] if s < n - 1 else shift
            row: Dict[int, Poly] = {}
            for j, c in enumerate(a.lift(arity).coeffs):
                if c.is_zero():
                    continue
                lifted = c.lift(ext)
                row[j] = lifted.substitute({0: image}, ext) if lifted.has_partial() else lifted
            if not row:
                return self.target.zero(arity)
            coeffs.append(row)
        rename = {j: arity + j for j in range(1, n)}
        total = self.target.zero(ext)
        for idx in itertools.product(*(sorted(row) for row in coeffs)):
            v = self.values.get(idx)
            if v is None:
                continue
            scalar = Poly.one(ext)
            for s, j in enumerate(idx):
                scalar = scalar * coeffs[s][j]
            total = total + v.rename_lambdas(rename, ext) * scalar
        if n <= 1:
            return total
        assignment = {arity + s + 1: _as_poly(nu, arity) for s, nu in enumerate(nus)}
        return total.substitute(assignment, arity)

    def binary(self, x: ModElement, y: ModElement, nu: Nu, arity: int) -> ModElement:
        return self.evaluate([x, y], [nu], arity)

    def precompose(self, maps: Sequence[Optional[CdLinearMap]], sources: Optional[Sequence[FreeCdModule]] = None) -> "SesquilinearMap":
        """φ(f1 ·, ..., fn ·); None leaves a slot unchanged."""
        new_sources = list(sources) if sources is not None else [
            m.source if m is not None else s for m, s in zip(maps, self.sources)
        ]
        n = self.degree
        lams = [Poly.lam(i, n - 1) for i in range(1, n)]

        def entry(idx: Tuple[int, ...]) -> ModElement:
            args = []
            for s, j in enumerate(idx):
                e = new_sources[s].basis(j, n - 1)
                args.append(maps[s].apply(e) if maps[s] is not None else e)
            return self.evaluate(args, lams, n - 1)

        return SesquilinearMap.tabulate(new_sources, self.target, entry)

    def postcompose(self, f: CdLinearMap) -> "SesquilinearMap":
        """f ∘ φ; f is k[∂]-linear so it acts on values directly."""
        if f.source != self.target:
            raise ModuleMismatch("post-composed map does not start at the target")
        return SesquilinearMap(self.sources, f.target, {k: f.apply(v) for k, v in self.values.items()})

    def _same_shape(self, other: "SesquilinearMap") -> None:
        if other.sources != self.sources or other.target != self.target:
            raise ModuleMismatch("sesquilinear maps with different shapes")

    def __add__(self, other: "SesquilinearMap") -> "SesquilinearMap":
        self._same_shape(other)
        values = dict(self.values)
        for k, v in other.values.items():
            values[k] = values[k] + v if k in values else v
        return SesquilinearMap(self.sources, self.target, values)

    def __neg__(self) -> "SesquilinearMap":
        return SesquilinearMap(self.sources, self.target, {k: -v for k, v in self.values.items()})

    def __sub__(self, other: "SesquilinearMap") -> "SesquilinearMap":
        return self + (-other)

    def __mul__(self, scalar: Union[int, Fraction]) -> "SesquilinearMap":
        return SesquilinearMap(self.sources, self.target, {k: v * scalar for k, v in self.values.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SesquilinearMap):
            return NotImplemented
        return (self.sources, self.target, self.values) == (other.sources, other.target, other.values)

    def __hash__(self) -> int:
        return hash((self.sources, self.target, frozenset(self.values.items())))

    def is_zero(self) -> bool:
        return not self.values

    def d_degree(self) -> int:
        return max((v.d_degree() for v in self.values.values()), default=-1)

    def nonzero_items(self) -> List[Tuple[Tuple[int, ...], ModElement]]:
        return sorted(self.values.items())

    def arg_names(self, idx: Sequence[int]) -> Tuple[str, ...]:
        return tuple(src.basis_names[j] for src, j in zip(self.sources, idx))

    def __repr__(self) -> str:
        return f"SesquilinearMap(degree={self.degree}, nonzero={len(self.values)})"


# -------------------------------------------------------------------
# Algebras and bimodules
# -------------------------------------------------------------------
class ConformalAlgebra:
    """Free k[∂]-module with a λ-product given on basis pairs."""

    def __init__(self, carrier: FreeCdModule, product: SesquilinearMap, name: str = ""):
        if product.sources != (carrier, carrier) or product.target != carrier:
            raise ModuleMismatch("product table does not live on the carrier")
        self.carrier = carrier
        self.product = product
        self.name = name

    @classmethod
    def from_table(
        cls, carrier: FreeCdModule, table: Mapping[Tuple[int, int], ModElement], name: str = ""
    ) -> "ConformalAlgebra":
        return cls(carrier, SesquilinearMap((carrier, carrier), carrier, table), name)

    @classmethod
    def trivial(cls, carrier: FreeCdModule, name: str = "") -> "ConformalAlgebra":
        return cls(carrier, SesquilinearMap((carrier, carrier), carrier), name)

    @property
    def rank(self) -> int:
        return self.carrier.rank

    def mul(self, x: ModElement, y: ModElement, nu: Nu, arity: int) -> ModElement:
        return self.product.evaluate([x, y], [nu], arity)

    def structure(self, i: int, j: int) -> ModElement:
        return self.product.value((i, j))

    def is_trivial(self) -> bool:
        return self.product.is_zero()

    def d_degree(self) -> int:
        return self.product.d_degree()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConformalAlgebra):
            return NotImplemented
        return self.carrier == other.carrier and self.product == other.product

    def __hash__(self) -> int:
        return hash((self.carrier, self.product))

    def __repr__(self) -> str:
        return f"ConformalAlgebra({self.name or self.carrier.label})"


class Bimodule:
    """Conformal bimodule: left action A × M → M and right action M × A → M."""

    def __init__(
        self,
        algebra: ConformalAlgebra,
        carrier: FreeCdModule,
        left: SesquilinearMap,
        right: SesquilinearMap,
        name: str = "",
    ):
        a = algebra.carrier
        if left.sources != (a, carrier) or left.target != carrier:
            raise ModuleMismatch("left action table has the wrong shape")
        if right.sources != (carrier, a) or right.target != carrier:
            raise ModuleMismatch("right action table has the wrong shape")
        self.algebra = algebra
        self.carrier = carrier
        self.left = left
        self.right = right
        self.name = name

    @classmethod
    def zero(cls, algebra: ConformalAlgebra, carrier: FreeCdModule, name: str = "") -> "Bimodule":
        a = algebra.carrier
        return cls(
            algebra,
            carrier,
            SesquilinearMap((a, carrier), carrier),
            SesquilinearMap((carrier, a), carrier),
            name,
        )

    def act_left(self, a: ModElement, v: ModElement, nu: Nu, arity: int) -> ModElement:
        return self.left.evaluate([a, v], [nu], arity)

    def act_right(self, v: ModElement, a: ModElement, nu: Nu, arity: int) -> ModElement:
        return self.right.evaluate([v, a], [nu], arity)

    def is_regular(self) -> bool:
        return (
            self.carrier == self.algebra.carrier
            and self.left == self.algebra.product
            and self.right == self.algebra.product
        )

    def d_degree(self) -> int:
        return max(self.left.d_degree(), self.right.d_degree())

    def __repr__(self) -> str:
        return f"Bimodule({self.name or self.carrier.label} over {self.algebra!r})"


class StructureKind(str, Enum):
    HOM = "hom"
    AUTOMORPHISM = "automorphism"
    DERIVATION = "derivation"


@dataclass(frozen=True)
class StructureMap:
    underlying: CdLinearMap
    kind: StructureKind


# -------------------------------------------------------------------
# Operations
# -------------------------------------------------------------------
Binary = Callable[[ModElement, ModElement, Poly], ModElement]


def binary_of(smap: SesquilinearMap, arity: int = 2) -> Binary:
    return lambda x, y, nu: smap.evaluate([x, y], [nu], arity)


def lambda_associator(
    outer_left: Binary,
    inner_left: Binary,
    outer_right: Binary,
    inner_right: Binary,
    x: ModElement,
    y: ModElement,
    z: ModElement,
) -> ModElement:
    """
    (x ·_λ y) ·_{λ+μ} z - x ·_λ (y ·_μ z) in the context λ = L1, μ = L2, with
    each of the four products chosen by the caller.
    """
    lam, mu = Poly.lam(1, 2), Poly.lam(2, 2)
    lhs = outer_left(inner_left(x, y, lam), z, lam + mu)
    rhs = outer_right(x, inner_right(y, z, mu), lam)
    return lhs - rhs


def lambda_product(
    alg: ConformalAlgebra, x: ModElement, y: ModElement, slot: Union[int, Poly] = 1, arity: Optional[int] = None
) -> ModElement:
    """x ∘_ν y where ν is λ_slot (or the given polynomial) in the output context."""
    if isinstance(slot, Poly):
        ctx = arity if arity is not None else max(x.arity, y.arity, slot.arity)
        return alg.mul(x.lift(ctx), y.lift(ctx), slot, ctx)
    ctx = arity if arity is not None else max(x.arity, y.arity, slot)
    return alg.mul(x.lift(ctx), y.lift(ctx), Poly.lam(slot, ctx), ctx)


def check_associativity(alg: ConformalAlgebra) -> CheckResult:
    result = CheckResult("associativity")
    m = binary_of(alg.product)
    names = alg.carrier.basis_names
    for i, j, k in all_tuples([alg.carrier] * 3):
        x, y, z = (alg.carrier.basis(t, 2) for t in (i, j, k))
        result.record("assoc", (names[i], names[j], names[k]), lambda_associator(m, m, m, m, x, y, z))
    logger.debug("associativity of %r: %d failures", alg, len(result.failures))
    return result


def cur_of(mult_table: Sequence[Sequence[Sequence[Union[int, Fraction]]]], basis_names: Optional[Sequence[str]] = None, name: str = "") -> ConformalAlgebra:
    """
    Current algebra of an associative k-algebra with e_i e_j = Σ_k T[i][j][k] e_k.
    """
    n = len(mult_table)
    names = tuple(basis_names) if basis_names else tuple(f"e{i + 1}" for i in range(n))
    t = [[[Fraction(c) for c in mult_table[i][j]] for j in range(n)] for i in range(n)]
    for i, j, k, l in itertools.product(range(n), repeat=4):
        lhs = sum(t[i][j][m] * t[m][k][l] for m in range(n))
        rhs = sum(t[j][k][m] * t[i][m][l] for m in range(n))
        if lhs != rhs:
            raise NotAssociativeBase(
                f"({names[i]}{names[j]}){names[k]} != {names[i]}({names[j]}{names[k]})"
            )
    carrier = FreeCdModule(names, name)
    table = {
        (i, j): ModElement(carrier, [Poly.const(c, 1) for c in t[i][j]], 1)
        for i in range(n)
        for j in range(n)
    }
    return ConformalAlgebra.from_table(carrier, table, name or f"Cur({', '.join(names)})")


def check_sesquilinearity(
    smap: SesquilinearMap, multipliers: Optional[Sequence[Poly]] = None, label: str = ""
) -> CheckResult:
    """(f(∂)x)·_λ y = f(-λ)(x·_λ y) and x·_λ(f(∂)y) = f(λ+∂)(x·_λ y) on basis pairs."""
    if multipliers is None:
        multipliers = [Poly.partial(), Poly.partial() ** 2]
    result = CheckResult(f"sesquilinearity {label}".strip())
    lam = Poly.lam(1, 1)
    d = Poly.partial(1)
    for i, j in all_tuples(smap.sources):
        x, y = smap.sources[0].basis(i, 1), smap.sources[1].basis(j, 1)
        base = smap.evaluate([x, y], [lam], 1)
        args = smap.arg_names((i, j))
        for f in multipliers:
            f1 = f.lift(1)
            lhs = smap.evaluate([x * f1, y], [lam], 1)
            result.record(f"{label}left-slot".strip(), args, lhs - base * f1.substitute({0: -lam}, 1))
            rhs = smap.evaluate([x, y * f1], [lam], 1)
            result.record(f"{label}right-slot".strip(), args, rhs - base * f1.substitute({0: lam + d}, 1))
    return result


def check_bimodule(m: Bimodule, multipliers: Optional[Sequence[Poly]] = None) -> CheckResult:
    """Left and right module axioms, their compatibility, and the four ∂-rules."""
    result = CheckResult("bimodule")
    alg = m.algebra
    mult = binary_of(alg.product)
    left = binary_of(m.left)
    right = binary_of(m.right)
    an = alg.carrier.basis_names
    mn = m.carrier.basis_names
    for i, j, k in all_tuples([alg.carrier, alg.carrier, m.carrier]):
        a, b, v = alg.carrier.basis(i, 2), alg.carrier.basis(j, 2), m.carrier.basis(k, 2)
        result.record("left-module", (an[i], an[j], mn[k]), lambda_associator(left, mult, left, left, a, b, v))
    for k, i, j in all_tuples([m.carrier, alg.carrier, alg.carrier]):
        v, a, b = m.carrier.basis(k, 2), alg.carrier.basis(i, 2), alg.carrier.basis(j, 2)
        result.record("right-module", (mn[k], an[i], an[j]), lambda_associator(right, right, right, mult, v, a, b))
    for i, k, j in all_tuples([alg.carrier, m.carrier, alg.carrier]):
        a, v, b = alg.carrier.basis(i, 2), m.carrier.basis(k, 2), alg.carrier.basis(j, 2)
        result.record("compatibility", (an[i], mn[k], an[j]), lambda_associator(right, left, left, right, a, v, b))
    result.merge(check_sesquilinearity(m.left, multipliers, "left-action "))
    result.merge(check_sesquilinearity(m.right, multipliers, "right-action "))
    return result


def check_structure_map(
    f: CdLinearMap,
    kind: Union[StructureKind, str],
    source: ConformalAlgebra,
    target: Optional[ConformalAlgebra] = None,
    bimodule: Optional[Bimodule] = None,
) -> CheckResult:
    """
    Check that f is a homomorphism, automorphism or derivation. Derivations may
    take values in a bimodule over the source. On success the result's value
    is the StructureMap.
    """
    kind = StructureKind(kind)
    result = CheckResult(f"{kind.value} check")
    a = source.carrier
    names = a.basis_names
    if kind is StructureKind.DERIVATION:
        if bimodule is not None:
            if f.source != a or f.target != bimodule.carrier:
                raise ModuleMismatch("derivation must map the algebra into the bimodule")
            for i, j in all_tuples([a, a]):
                x, y = a.basis(i, 1), a.basis(j, 1)
                lam = Poly.lam(1, 1)
                lhs = f.apply(source.mul(x, y, lam, 1))
                rhs = bimodule.act_right(f.apply(x), y, lam, 1) + bimodule.act_left(x, f.apply(y), lam, 1)
                result.record("derivation", (names[i], names[j]), lhs - rhs)
        else:
            if f.source != a or f.target != a:
                raise ModuleMismatch("derivation must be an endomorphism of the algebra")
            for i, j in all_tuples([a, a]):
                x, y = a.basis(i, 1), a.basis(j, 1)
                lam = Poly.lam(1, 1)
                lhs = f.apply(source.mul(x, y, lam, 1))
                rhs = source.mul(f.apply(x), y, lam, 1) + source.mul(x, f.apply(y), lam, 1)
                result.record("derivation", (names[i], names[j]), lhs - rhs)
    else:
        tgt = target or source
        if f.source != a or f.target != tgt.carrier:
            raise ModuleMismatch("homomorphism between the wrong carriers")
        if kind is StructureKind.AUTOMORPHISM:
            if tgt.carrier != a:
                raise NotInvertible("an automorphism must be an endomorphism")
            f.inverse()
        for i, j in all_tuples([a, a]):
            x, y = a.basis(i, 1), a.basis(j, 1)
            lam = Poly.lam(1, 1)
            lhs = f.apply(source.mul(x, y, lam, 1))
            rhs = tgt.mul(f.apply(x), f.apply(y), lam, 1)
            result.record("homomorphism", (names[i], names[j]), lhs - rhs)
    if result.ok:
        result.value = StructureMap(f, kind)
    return result


def direct_sum(a: ConformalAlgebra, b: ConformalAlgebra, name: str = "") -> ConformalAlgebra:
    """A ⊕ B with block-diagonal product; A's basis comes first."""
    carrier = a.carrier.direct_sum(b.carrier, name)
    table: Dict[Tuple[int, int], ModElement] = {}
    for (i, j), v in a.product.values.items():
        table[(i, j)] = inject(v, carrier, 0)
    off = a.rank
    for (i, j), v in b.product.values.items():
        table[(off + i, off + j)] = inject(v, carrier, off)
    return ConformalAlgebra.from_table(carrier, table, name or f"{a.name}+{b.name}")


def semidirect_product(b: ConformalAlgebra, m: Bimodule, name: str = "") -> ConformalAlgebra:
    """
    M ⊕ B with (u1, b1) ∘_λ (u2, b2) = (u1 ◁_λ b2 + b1 ▷_λ u2, b1 ∘_λ b2);
    the bimodule's basis comes first.
    """
    if m.algebra != b:
        raise InvalidBimodule("bimodule is over a different algebra")
    report = check_bimodule(m)
    if not report.ok:
        raise InvalidBimodule(f"bimodule axioms fail: {report.first()}")
    carrier = m.carrier.direct_sum(b.carrier, name)
    off = m.carrier.rank
    table: Dict[Tuple[int, int], ModElement] = {}
    for (i, j), v in b.product.values.items():
        table[(off + i, off + j)] = inject(v, carrier, off)
    for (i, k), v in m.left.values.items():
        table[(off + i, k)] = inject(v, carrier, 0)
    for (k, i), v in m.right.values.items():
        table[(k, off + i)] = inject(v, carrier, 0)
    return ConformalAlgebra.from_table(carrier, table, name or f"{m.name or 'M'}x{b.name}")


def regular_bimodule(alg: ConformalAlgebra) -> Bimodule:
    return Bimodule(alg, alg.carrier, alg.product, alg.product, f"reg({alg.name})")


def inner_derivation(m: Bimodule, v: ModElement) -> CdLinearMap:
    """a ↦ a ▷_{-∂} v - v ◁_0 a."""
    a = m.algebra.carrier
    images = []
    for j in range(a.rank):
        e = a.basis(j, 0)
        images.append(m.act_left(e, v.lift(0), -Poly.partial(), 0) - m.act_right(v.lift(0), e, 0, 0))
    return CdLinearMap.from_images(a, m.carrier, images)


def commutator(d: CdLinearMap, d2: CdLinearMap) -> CdLinearMap:
    return d.compose(d2) - d2.compose(d)
