# algebra/hochschild.py
"""
Hochschild cochains of an associative conformal algebra with coefficients in
a bimodule, the differential, and the Gerstenhaber bracket.

A cochain of degree n >= 1 is a SesquilinearMap A^n → M with values of arity
n-1. A degree-0 cochain is a representative of M/∂M.
"""

from __future__ import annotations
import itertools
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from algebra.cdmod import (
    CdLinearMap,
    Equation,
    ModElement,
    all_tuples,
    bounded_coefficient_solve,
    in_partial_image,
)
from algebra.checks import CheckResult, Failure
from algebra.conformal import Bimodule, ConformalAlgebra, SesquilinearMap, regular_bimodule
from algebra.errors import (
    DegreeMismatch,
    InvalidWitness,
    ModuleMismatch,
    NotACocycle,
    SlotOutOfRange,
    UndecidedWithinBounds,
)
from algebra.linear import rank
from algebra.symexpr import Exponents, Poly

logger = logging.getLogger(__name__)


class Cochain:
    """A conformal sesquilinear n-cochain on `algebra` with values in `bimodule`."""

    __slots__ = ("degree", "algebra", "bimodule", "values")

    def __init__(
        self,
        degree: int,
        algebra: ConformalAlgebra,
        bimodule: Bimodule,
        values: Union[SesquilinearMap, ModElement, None] = None,
    ):
        self.degree = degree
        self.algebra = algebra
        self.bimodule = bimodule
        a, m = algebra.carrier, bimodule.carrier
        if degree == 0:
            values = values if values is not None else m.zero(0)
            if not isinstance(values, ModElement) or values.module != m:
                raise ModuleMismatch("a degree-0 cochain is an element of the bimodule")
            self.values = values.lift(0)
        else:
            values = values if values is not None else SesquilinearMap((a,) * degree, m)
            if not isinstance(values, SesquilinearMap) or values.sources != (a,) * degree or values.target != m:
                raise ModuleMismatch(f"cochain table does not have shape A^{degree} -> M")
            self.values = values

    @classmethod
    def zero(cls, degree: int, algebra: ConformalAlgebra, bimodule: Bimodule) -> "Cochain":
        return cls(degree, algebra, bimodule)

    @classmethod
    def from_map(cls, f: CdLinearMap, algebra: ConformalAlgebra, bimodule: Bimodule) -> "Cochain":
        table = {(j,): img for j, img in enumerate(f.images())}
        return cls(1, algebra, bimodule, SesquilinearMap((algebra.carrier,), bimodule.carrier, table))

    def to_map(self) -> CdLinearMap:
        if self.degree != 1:
            raise DegreeMismatch("only degree-1 cochains are module maps")
        a = self.algebra.carrier
        return CdLinearMap.from_images(a, self.bimodule.carrier, [self.values.value((j,)) for j in range(a.rank)])

    def evaluate(self, args: Sequence[ModElement], nus: Optional[Sequence[Poly]] = None, arity: Optional[int] = None) -> ModElement:
        if self.degree == 0:
            raise DegreeMismatch("a degree-0 cochain takes no arguments")
        if len(args) != self.degree:
            raise DegreeMismatch(f"{len(args)} arguments for a cochain of degree {self.degree}")
        ctx = arity if arity is not None else max([self.degree - 1] + [a.arity for a in args])
        if nus is None:
            nus = [Poly.lam(i, ctx) for i in range(1, self.degree)]
        return self.values.evaluate(args, nus, ctx)

    def _check(self, other: "Cochain") -> None:
        if (
            other.degree != self.degree
            or other.algebra.carrier != self.algebra.carrier
            or other.bimodule.carrier != self.bimodule.carrier
        ):
            raise ModuleMismatch("cochains of different degree or spaces")

    def _new(self, values) -> "Cochain":
        return Cochain(self.degree, self.algebra, self.bimodule, values)

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        return self._new(self.values + other.values)

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        return self._new(self.values - other.values)

    def __neg__(self) -> "Cochain":
        return self._new(-self.values)

    def __mul__(self, scalar: Union[int, Fraction]) -> "Cochain":
        return self._new(self.values * scalar)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        if self.degree == 0:
            return in_partial_image(self.values)
        return self.values.is_zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        try:
            return (self - other).is_zero()
        except ModuleMismatch:
            return False

    def __hash__(self) -> int:
        return hash((self.degree, self.algebra.carrier, self.bimodule.carrier))

    def nonzero_values(self) -> List[Tuple[Tuple[str, ...], ModElement]]:
        if self.degree == 0:
            return [] if self.is_zero() else [((), self.values)]
        return [(self.values.arg_names(idx), v) for idx, v in self.values.nonzero_items()]

    def __repr__(self) -> str:
        return f"Cochain(degree={self.degree}, nonzero={len(self.nonzero_values())})"


def multiplication_cochain(alg: ConformalAlgebra, bimodule: Optional[Bimodule] = None) -> Cochain:
    return Cochain(2, alg, bimodule or regular_bimodule(alg), alg.product)


def identity_cochain(alg: ConformalAlgebra, bimodule: Optional[Bimodule] = None) -> Cochain:
    return Cochain.from_map(CdLinearMap.identity(alg.carrier), alg, bimodule or regular_bimodule(alg))


def evaluate_cochain(phi: Cochain, args: Sequence[ModElement]) -> ModElement:
    return phi.evaluate(args)


# -------------------------------------------------------------------
# Differential
# -------------------------------------------------------------------
def differential(phi: Cochain) -> Cochain:
    """The Hochschild differential d_n."""
    n = phi.degree
    alg, m = phi.algebra, phi.bimodule
    a = alg.carrier
    if n == 0:
        v = phi.values
        images = {}
        for j in range(a.rank):
            e = a.basis(j, 0)
            images[(j,)] = m.act_left(e, v, -Poly.partial(), 0) - m.act_right(v, e, 0, 0)
        return Cochain(1, alg, m, SesquilinearMap((a,), m.carrier, images))

    lams = [Poly.lam(i, n) for i in range(1, n + 1)]
    lam_total = Poly.lam_sum(range(1, n + 1), n)

    def entry(idx: Tuple[int, ...]) -> ModElement:
        args = [a.basis(j, n) for j in idx]
        total = m.act_left(args[0], phi.values.evaluate(args[1:], lams[1:], n), lams[0], n)
        for i in range(1, n + 1):
            prod = alg.mul(args[i - 1], args[i], lams[i - 1], n)
            merged = args[: i - 1] + [prod] + args[i + 1:]
            nus = []
            for k in range(1, n):
                if k < i:
                    nus.append(lams[k - 1])
                elif k == i:
                    nus.append(lams[i - 1] + lams[i])
                else:
                    nus.append(lams[k])
            term = phi.values.evaluate(merged, nus, n)
            total = total - term if i % 2 else total + term
        last = m.act_right(phi.values.evaluate(args[:n], lams[: n - 1], n), args[n], lam_total, n)
        return total + last if (n + 1) % 2 == 0 else total - last

    table = SesquilinearMap.tabulate((a,) * (n + 1), m.carrier, entry)
    return Cochain(n + 1, alg, m, table)


def is_cocycle(phi: Cochain) -> CheckResult:
    """Passes iff d(φ) = 0; failures list the nonzero values of d(φ)."""
    result = CheckResult(f"{phi.degree}-cocycle")
    dphi = differential(phi)
    result.checked = phi.algebra.carrier.rank ** (phi.degree + 1)
    for args, v in dphi.nonzero_values():
        result.failures.append(Failure("cocycle", args, v))
    return result


# -------------------------------------------------------------------
# Truncated cochain spaces
# -------------------------------------------------------------------
@dataclass(frozen=True)
class CochainBasisTruncation:
    """Cochains whose values have ∂-degree ≤ ddeg and λ-degree ≤ ldeg."""

    ldeg: int
    ddeg: int

    def monomials(self, arity: int) -> List[Exponents]:
        out = []
        for d in range(self.ddeg + 1):
            for lam in itertools.product(range(self.ldeg + 1), repeat=arity):
                if sum(lam) <= self.ldeg:
                    out.append((d,) + lam)
        return out

    def basis(self, degree: int, algebra: ConformalAlgebra, bimodule: Bimodule) -> List[Cochain]:
        m = bimodule.carrier
        if degree == 0:
            return [Cochain(0, algebra, bimodule, m.basis(k, 0)) for k in range(m.rank)]
        a = algebra.carrier
        ar = degree - 1
        out = []
        for idx in all_tuples((a,) * degree):
            for k in range(m.rank):
                for exps in self.monomials(ar):
                    value = m.basis(k, ar) * Poly({exps: 1}, ar)
                    table = SesquilinearMap((a,) * degree, m, {idx: value})
                    out.append(Cochain(degree, algebra, bimodule, table))
        return out


def coordinates(phi: Cochain) -> Dict[Tuple, Fraction]:
    """Rational coordinates of a cochain of degree >= 1 in the monomial basis."""
    out: Dict[Tuple, Fraction] = {}
    for idx, v in phi.values.values.items():
        for k, c in enumerate(v.coeffs):
            for exps, coeff in c.items():
                out[(idx, k, exps)] = coeff
    return out


def _rows(cochains: Iterable[Cochain]) -> Tuple[List[Dict[int, Fraction]], Dict[Tuple, int]]:
    index: Dict[Tuple, int] = {}
    rows = []
    for c in cochains:
        row = {}
        for key, v in coordinates(c).items():
            row[index.setdefault(key, len(index))] = v
        rows.append(row)
    return rows, index


def solve_coboundary(phi: Cochain, bounds: CochainBasisTruncation) -> Cochain:
    """
    Find ψ with d(ψ) = φ among cochains inside the bounds.

    Raises NotACocycle when d(φ) ≠ 0 and UndecidedWithinBounds when no
    preimage exists inside the bounds.
    """
    if phi.degree == 0:
        raise DegreeMismatch("degree-0 cochains have no coboundary preimage")
    if not is_cocycle(phi).ok:
        raise NotACocycle(f"degree-{phi.degree} cochain is not closed")
    basis = bounds.basis(phi.degree - 1, phi.algebra, phi.bimodule)
    images = [coordinates(differential(b)) for b in basis]
    target = coordinates(phi)
    keys = set(target)
    for img in images:
        keys.update(img)
    equations: List[Equation] = []
    for key in sorted(keys, key=repr):
        eq: Equation = {}
        for u, img in enumerate(images):
            if key in img:
                eq[(u,)] = img[key]
        if key in target:
            eq[()] = -target[key]
        equations.append(eq)
    solution = bounded_coefficient_solve(equations)
    if solution is None:
        raise UndecidedWithinBounds(f"degree-{phi.degree - 1} coboundary preimage", bounds.ddeg)
    psi = Cochain.zero(phi.degree - 1, phi.algebra, phi.bimodule)
    for u, value in solution.items():
        psi = psi + basis[u] * value
    if differential(psi) != phi:
        raise InvalidWitness("coboundary preimage failed re-verification", "coboundary")
    logger.debug("found coboundary preimage among %d basis cochains", len(basis))
    return psi


def is_cohomologous(phi: Cochain, other: Cochain, bounds: CochainBasisTruncation) -> Optional[Cochain]:
    """A cochain ψ with d(ψ) = φ - other, or None when none lies inside the bounds."""
    try:
        return solve_coboundary(phi - other, bounds)
    except UndecidedWithinBounds:
        return None


@dataclass(frozen=True)
class CohomologyDims:
    cochains: int
    cocycles: int
    coboundaries: int

    @property
    def quotient(self) -> int:
        return self.cocycles - self.coboundaries


def truncated_cohomology_dim(
    n: int, algebra: ConformalAlgebra, bimodule: Bimodule, bounds: CochainBasisTruncation
) -> CohomologyDims:
    """
    Dimensions of Z^n and B^n inside the bounded cochain space C^n.

    B^n here is d(bounded C^{n-1}) intersected with bounded C^n, computed as
    dim U + dim V - dim(U + V) on exact images.
    """
    space = bounds.basis(n, algebra, bimodule)
    if n == 0:
        images = [differential(c) for c in space]
        rows, _ = _rows(images)
        dim_c = len(space)
        return CohomologyDims(dim_c, dim_c - rank(rows), 0)
    rows, _ = _rows(differential(c) for c in space)
    dim_c = len(space)
    dim_z = dim_c - rank(rows)
    previous = bounds.basis(n - 1, algebra, bimodule)
    d_rows, index = _rows(differential(c) for c in previous)
    dim_u = rank(d_rows)
    v_rows = []
    for c in space:
        row = {}
        for key, v in coordinates(c).items():
            row[index.setdefault(key, len(index))] = v
        v_rows.append(row)
    dim_sum = rank(d_rows + v_rows)
    dim_b = dim_u + dim_c - dim_sum
    logger.debug("truncated H^%d: C=%d Z=%d B=%d", n, dim_c, dim_z, dim_b)
    return CohomologyDims(dim_c, dim_z, dim_b)


# -------------------------------------------------------------------
# Gerstenhaber structure
# -------------------------------------------------------------------
def _self_valued(f: Cochain) -> None:
    if f.degree < 1:
        raise DegreeMismatch("the bracket is defined on cochains of degree >= 1")
    if f.bimodule.carrier != f.algebra.carrier:
        raise ModuleMismatch("the bracket needs cochains valued in the algebra itself")


def circ_i(f: Cochain, g: Cochain, i: int) -> Cochain:
    """f •_i g: g inserted into slot i (0-based) of f."""
    _self_valued(f)
    _self_valued(g)
    m, n = f.degree, g.degree
    if not 0 <= i < m:
        raise SlotOutOfRange(i, m)
    a = f.algebra.carrier
    k = m + n - 1
    ar = k - 1
    lams = [Poly.lam(t, ar) for t in range(1, ar + 1)]

    def entry(idx: Tuple[int, ...]) -> ModElement:
        args = [a.basis(j, ar) for j in idx]
        inner = g.values.evaluate(args[i: i + n], lams[i: i + n - 1], ar)
        outer_args = args[:i] + [inner] + args[i + n:]
        nus = []
        for s in range(m - 1):
            if s < i:
                nus.append(lams[s])
            elif s == i:
                total = Poly.zero(ar)
                for lam in lams[i: i + n]:
                    total = total + lam
                nus.append(total)
            else:
                nus.append(lams[s + n - 1])
        return f.values.evaluate(outer_args, nus, ar)

    table = SesquilinearMap.tabulate((a,) * k, a, entry)
    return Cochain(k, f.algebra, f.bimodule, table)


def circ(f: Cochain, g: Cochain) -> Cochain:
    """f • g = Σ_i (-1)^{(n-1)i} f •_i g."""
    n = g.degree
    total = None
    for i in range(f.degree):
        term = circ_i(f, g, i)
        if ((n - 1) * i) % 2:
            term = -term
        total = term if total is None else total + term
    return total


def gbracket(f: Cochain, g: Cochain) -> Cochain:
    """[f, g] = f • g - (-1)^{(m-1)(n-1)} g • f."""
    fg = circ(f, g)
    gf = circ(g, f)
    if ((f.degree - 1) * (g.degree - 1)) % 2:
        return fg + gf
    return fg - gf


def dbar(f: Cochain) -> Cochain:
    """[𝔪_A, f], which equals (-1)^{n-1} d_n(f)."""
    return gbracket(multiplication_cochain(f.algebra, f.bimodule), f)


def _record(result: CheckResult, identity: str, diff: Cochain) -> None:
    values = diff.nonzero_values()
    result.checked += 1
    for args, v in values:
        result.failures.append(Failure(identity, args, v))


def dgla_axiom_check(f: Cochain, g: Cochain, h: Cochain) -> CheckResult:
    """Graded antisymmetry, graded Jacobi, d̄² = 0 and the graded Leibniz rule."""
    result = CheckResult("dgla")
    df, dg, dh = f.degree - 1, g.degree - 1, h.degree - 1
    sign_fg = -1 if (df * dg) % 2 else 1
    _record(result, "antisymmetry", gbracket(f, g) + gbracket(g, f) * sign_fg)
    jacobi = gbracket(f, gbracket(g, h)) - gbracket(gbracket(f, g), h) - gbracket(g, gbracket(f, h)) * sign_fg
    _record(result, "jacobi", jacobi)
    _record(result, "dbar-squared", dbar(dbar(f)))
    sign_f = -1 if df % 2 else 1
    leibniz = dbar(gbracket(f, g)) - gbracket(dbar(f), g) - gbracket(f, dbar(g)) * sign_f
    _record(result, "leibniz", leibniz)
    logger.debug("dgla check on degrees (%d, %d, %d): %d failures", f.degree, g.degree, h.degree, len(result.failures))
    return result


def check_bracket_differential(f: Cochain) -> CheckResult:
    """d_n(f) = (-1)^{n-1} [𝔪_A, f]."""
    result = CheckResult("differential via bracket")
    sign = -1 if (f.degree - 1) % 2 else 1
    _record(result, "bracket-differential", differential(f) - dbar(f) * sign)
    return result


def random_cochain(
    degree: int,
    algebra: ConformalAlgebra,
    bimodule: Bimodule,
    rng: random.Random,
    ddeg: int = 2,
    ldeg: int = 1,
    density: float = 0.5,
) -> Cochain:
    """Random small-integer cochain inside the given bounds."""
    m = bimodule.carrier
    if degree == 0:
        return Cochain(0, algebra, bimodule, m.element(
            {name: Poly({(d,): rng.randint(-2, 2) for d in range(ddeg + 1)}) for name in m.basis_names}
        ))
    a = algebra.carrier
    ar = degree - 1
    monos = CochainBasisTruncation(ldeg, ddeg).monomials(ar)
    table = {}
    for idx in all_tuples((a,) * degree):
        if rng.random() > density:
            continue
        coeffs = []
        for _ in range(m.rank):
            terms = {e: rng.randint(-2, 2) for e in rng.sample(monos, min(2, len(monos)))}
            coeffs.append(Poly(terms, ar))
        table[idx] = ModElement(m, coeffs, ar)
    return Cochain(degree, algebra, bimodule, SesquilinearMap((a,) * degree, m, table))
