# algebra/cdmod.py
"""
Free k[∂]-modules of finite rank, their elements and homomorphisms.

Elements carry one Poly coefficient per basis vector, all sharing one
λ-context. Homomorphisms are matrices of ∂-only polynomials; the Smith normal
form over Q[∂] backs inversion and exact solving. Unknown homomorphisms with
bounded ∂-degree turn witness searches into finite systems over Q.
"""

from __future__ import annotations
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import (
    Callable,
    Dict,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from algebra import linear
from algebra.errors import ModuleMismatch, NotAffine, NotInvertible
from algebra.symexpr import Exponents, Poly, parse

logger = logging.getLogger(__name__)

Matrix = List[List[Poly]]
Equation = Dict[Tuple[int, ...], Fraction]


# -------------------------------------------------------------------
# Modules and elements
# -------------------------------------------------------------------
@dataclass(frozen=True)
class FreeCdModule:
    """A free k[∂]-module with named basis."""

    basis_names: Tuple[str, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "basis_names", tuple(self.basis_names))
        if len(set(self.basis_names)) != len(self.basis_names):
            raise ModuleMismatch(f"duplicate basis names in {self.basis_names}")

    @property
    def rank(self) -> int:
        return len(self.basis_names)

    def index(self, basis_name: str) -> int:
        try:
            return self.basis_names.index(basis_name)
        except ValueError:
            raise ModuleMismatch(f"{basis_name!r} is not a basis vector of {self.label}") from None

    @property
    def label(self) -> str:
        return self.name or "(" + ", ".join(self.basis_names) + ")"

    def zero(self, arity: int = 0) -> "ModElement":
        return ModElement(self, [Poly.zero(arity)] * self.rank, arity)

    def basis(self, i: int, arity: int = 0) -> "ModElement":
        coeffs = [Poly.zero(arity)] * self.rank
        coeffs[i] = Poly.one(arity)
        return ModElement(self, coeffs, arity)

    def basis_elements(self, arity: int = 0) -> List["ModElement"]:
        return [self.basis(i, arity) for i in range(self.rank)]

    def element(self, coeffs: Mapping[str, Union[Poly, str]], arity: int = 0) -> "ModElement":
        """Build an element from {basis name: coefficient}; strings are parsed."""
        values = [Poly.zero(arity)] * self.rank
        for key, coeff in coeffs.items():
            values[self.index(key)] = parse(coeff, arity) if isinstance(coeff, str) else coeff.lift(arity)
        return ModElement(self, values, arity)

    def direct_sum(self, other: "FreeCdModule", name: str = "") -> "FreeCdModule":
        names = list(self.basis_names)
        for n in other.basis_names:
            candidate = n
            while candidate in names:
                candidate = candidate + "'"
            names.append(candidate)
        return FreeCdModule(tuple(names), name)


class ModElement:
    """Element of a free k[∂]-module with coefficients in Q[∂, λ1..λn]."""

    __slots__ = ("module", "coeffs", "arity")

    def __init__(self, module: FreeCdModule, coeffs: Sequence[Poly], arity: Optional[int] = None):
        if len(coeffs) != module.rank:
            raise ModuleMismatch(f"{len(coeffs)} coefficients for a module of rank {module.rank}")
        if arity is None:
            arity = coeffs[0].arity if coeffs else 0
        self.module = module
        self.arity = arity
        self.coeffs: Tuple[Poly, ...] = tuple(c.lift(arity) if c.arity != arity else c for c in coeffs)

    def _check(self, other: "ModElement") -> None:
        if not isinstance(other, ModElement) or other.module != self.module:
            raise ModuleMismatch(f"elements of {self.module.label} and {getattr(other, 'module', other)}")

    def _align(self, other: "ModElement") -> Tuple["ModElement", "ModElement"]:
        self._check(other)
        arity = max(self.arity, other.arity)
        return self.lift(arity), other.lift(arity)

    def __add__(self, other: "ModElement") -> "ModElement":
        a, b = self._align(other)
        return ModElement(a.module, [x + y for x, y in zip(a.coeffs, b.coeffs)], a.arity)

    def __sub__(self, other: "ModElement") -> "ModElement":
        a, b = self._align(other)
        return ModElement(a.module, [x - y for x, y in zip(a.coeffs, b.coeffs)], a.arity)

    def __neg__(self) -> "ModElement":
        return ModElement(self.module, [-c for c in self.coeffs], self.arity)

    def __mul__(self, scalar: Union[Poly, int, Fraction]) -> "ModElement":
        if isinstance(scalar, Poly):
            arity = max(self.arity, scalar.arity)
            s = scalar.lift(arity)
            return ModElement(self.module, [s * c.lift(arity) for c in self.coeffs], arity)
        return ModElement(self.module, [c * scalar for c in self.coeffs], self.arity)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModElement) or other.module != self.module:
            return NotImplemented
        a, b = self._align(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        return hash((self.module, self.arity, self.coeffs))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def lift(self, arity: int) -> "ModElement":
        if arity == self.arity:
            return self
        return ModElement(self.module, [c.lift(arity) for c in self.coeffs], arity)

    def substitute(self, assignment: Mapping[int, Poly], arity: Optional[int] = None) -> "ModElement":
        target = arity if arity is not None else (
            next(iter(assignment.values())).arity if assignment else self.arity
        )
        return ModElement(self.module, [c.substitute(assignment, target) for c in self.coeffs], target)

    def rename_lambdas(self, index_map, arity: int) -> "ModElement":
        return ModElement(self.module, [c.rename_lambdas(index_map, arity) for c in self.coeffs], arity)

    def with_module(self, module: FreeCdModule) -> "ModElement":
        """Reinterpret the coefficients in a module of the same rank."""
        return ModElement(module, self.coeffs, self.arity)

    def d_degree(self) -> int:
        return max((c.d_degree() for c in self.coeffs), default=-1)

    def lambda_slices(self) -> Dict[Exponents, "ModElement"]:
        """Split by λ-monomial into arity-0 elements: self = Σ λ^e · slice[e]."""
        slices: Dict[Exponents, List[Dict[Exponents, Fraction]]] = {}
        for k, c in enumerate(self.coeffs):
            for exps, v in c.items():
                lam = tuple(exps[1:])
                parts = slices.setdefault(lam, [dict() for _ in range(self.module.rank)])
                parts[k][(exps[0],)] = v
        return {
            lam: ModElement(self.module, [Poly(p, 0) for p in parts], 0)
            for lam, parts in slices.items()
        }

    @classmethod
    def from_slices(
        cls, module: FreeCdModule, slices: Mapping[Exponents, "ModElement"], arity: int
    ) -> "ModElement":
        total = module.zero(arity)
        for lam, elem in slices.items():
            mono = Poly({(0,) + tuple(lam): 1}, arity)
            total = total + elem.lift(arity) * mono
        return total

    def terms(self) -> List[Tuple[str, Poly]]:
        return [(n, c) for n, c in zip(self.module.basis_names, self.coeffs) if not c.is_zero()]

    def __str__(self) -> str:
        parts = []
        for name, c in self.terms():
            text = str(c)
            if text in ("1", "-1"):
                parts.append(text[:-1] + name)
            elif len(c.monomials()) == 1:
                parts.append(f"{text}*{name}")
            else:
                parts.append(f"({text})*{name}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        return f"ModElement({str(self)!r}, arity={self.arity})"


def inject(elem: ModElement, module: FreeCdModule, offset: int) -> ModElement:
    """Place elem's coefficients at positions offset.. of a larger module."""
    coeffs = [Poly.zero(elem.arity)] * module.rank
    for k, c in enumerate(elem.coeffs):
        coeffs[offset + k] = c
    return ModElement(module, coeffs, elem.arity)


def project(elem: ModElement, module: FreeCdModule, offset: int) -> ModElement:
    """Read the coefficients at positions offset..offset+rank as an element of module."""
    return ModElement(module, list(elem.coeffs[offset: offset + module.rank]), elem.arity)


# -------------------------------------------------------------------
# Matrices over Q[∂]
# -------------------------------------------------------------------
def identity_matrix(n: int) -> Matrix:
    return [[Poly.one() if i == j else Poly.zero() for j in range(n)] for i in range(n)]


def zero_matrix(rows: int, cols: int) -> Matrix:
    return [[Poly.zero() for _ in range(cols)] for _ in range(rows)]


def mat_mul(a: Sequence[Sequence[Poly]], b: Sequence[Sequence[Poly]]) -> Matrix:
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = zero_matrix(len(a), cols)
    for i, row in enumerate(a):
        for k in range(inner):
            if row[k].is_zero():
                continue
            for j in range(cols):
                if not b[k][j].is_zero():
                    out[i][j] = out[i][j] + row[k] * b[k][j]
    return out


class CdLinearMap:
    """k[∂]-linear map given by a target-rank × source-rank matrix of ∂-polynomials."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FreeCdModule, target: FreeCdModule, matrix: Sequence[Sequence[Poly]]):
        if len(matrix) != target.rank or any(len(r) != source.rank for r in matrix):
            raise ModuleMismatch(
                f"matrix shape does not match {source.label} -> {target.label}"
            )
        for row in matrix:
            for entry in row:
                if entry.arity != 0:
                    raise ModuleMismatch("map entries must not contain lambda variables")
        self.source = source
        self.target = target
        self.matrix: Tuple[Tuple[Poly, ...], ...] = tuple(tuple(r) for r in matrix)

    @classmethod
    def identity(cls, module: FreeCdModule) -> "CdLinearMap":
        return cls(module, module, identity_matrix(module.rank))

    @classmethod
    def zero(cls, source: FreeCdModule, target: FreeCdModule) -> "CdLinearMap":
        return cls(source, target, zero_matrix(target.rank, source.rank))

    @classmethod
    def from_images(cls, source: FreeCdModule, target: FreeCdModule, images: Sequence[ModElement]) -> "CdLinearMap":
        """Columns are the images of the source basis vectors."""
        if len(images) != source.rank:
            raise ModuleMismatch("one image per source basis vector is required")
        matrix = zero_matrix(target.rank, source.rank)
        for j, img in enumerate(images):
            if img.module != target or img.arity != 0:
                raise ModuleMismatch("images must be arity-0 elements of the target")
            for i, c in enumerate(img.coeffs):
                matrix[i][j] = c
        return cls(source, target, matrix)

    @classmethod
    def scalar(cls, module: FreeCdModule, p: Poly) -> "CdLinearMap":
        """Multiplication by a fixed ∂-polynomial."""
        return cls(module, module, [[p if i == j else Poly.zero() for j in range(module.rank)] for i in range(module.rank)])

    def column(self, j: int) -> ModElement:
        return ModElement(self.target, [self.matrix[i][j] for i in range(self.target.rank)], 0)

    def images(self) -> List[ModElement]:
        return [self.column(j) for j in range(self.source.rank)]

    def apply(self, v: ModElement) -> ModElement:
        if v.module != self.source:
            raise ModuleMismatch(f"map from {self.source.label} applied to an element of {v.module.label}")
        out = [Poly.zero(v.arity)] * self.target.rank
        for i, row in enumerate(self.matrix):
            acc = Poly.zero(v.arity)
            for entry, c in zip(row, v.coeffs):
                if not entry.is_zero() and not c.is_zero():
                    acc = acc + entry.lift(v.arity) * c
            out[i] = acc
        return ModElement(self.target, out, v.arity)

    __call__ = apply

    def compose(self, other: "CdLinearMap") -> "CdLinearMap":
        """self ∘ other."""
        if other.target != self.source:
            raise ModuleMismatch(f"cannot compose {self.source.label} <- {other.target.label}")
        return CdLinearMap(other.source, self.target, mat_mul(self.matrix, other.matrix))

    def _same_shape(self, other: "CdLinearMap") -> None:
        if other.source != self.source or other.target != self.target:
            raise ModuleMismatch("maps between different modules")

    def __add__(self, other: "CdLinearMap") -> "CdLinearMap":
        self._same_shape(other)
        return CdLinearMap(self.source, self.target, [
            [a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.matrix, other.matrix)
        ])

    def __sub__(self, other: "CdLinearMap") -> "CdLinearMap":
        return self + (-other)

    def __neg__(self) -> "CdLinearMap":
        return CdLinearMap(self.source, self.target, [[-a for a in r] for r in self.matrix])

    def __mul__(self, scalar: Union[int, Fraction, Poly]) -> "CdLinearMap":
        return CdLinearMap(self.source, self.target, [[a * scalar for a in r] for r in self.matrix])

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CdLinearMap):
            return NotImplemented
        return (self.source, self.target, self.matrix) == (other.source, other.target, other.matrix)

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.matrix))

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.matrix for e in r)

    def d_degree(self) -> int:
        return max((e.d_degree() for r in self.matrix for e in r), default=-1)

    def with_modules(self, source: FreeCdModule, target: FreeCdModule) -> "CdLinearMap":
        return CdLinearMap(source, target, self.matrix)

    def inverse(self) -> "CdLinearMap":
        """Inverse over k[∂]; raises NotInvertible unless the determinant is a nonzero scalar."""
        if self.source.rank != self.target.rank:
            raise NotInvertible("a map between modules of different rank is not invertible")
        snf = smith_normal_form(self.matrix)
        if snf.rank != self.source.rank or any(d != 1 for d in snf.diagonal):
            raise NotInvertible(f"Smith diagonal {[str(d) for d in snf.diagonal]} has non-unit entries")
        # left · M · right = I, so M^-1 = right · left
        return CdLinearMap(self.target, self.source, mat_mul(snf.right, snf.left))

    def is_invertible(self) -> bool:
        try:
            self.inverse()
        except NotInvertible:
            return False
        return True

    def __str__(self) -> str:
        return "; ".join(
            f"{name} -> {img}" for name, img in zip(self.source.basis_names, self.images())
        )

    def __repr__(self) -> str:
        return f"CdLinearMap({str(self)!r})"


def apply_map(f: CdLinearMap, v: ModElement) -> ModElement:
    return f.apply(v)


def compose(g: CdLinearMap, f: CdLinearMap) -> CdLinearMap:
    return g.compose(f)


# -------------------------------------------------------------------
# Smith normal form
# -------------------------------------------------------------------
@dataclass
class SmithDecomposition:
    """left · matrix · right = diag(diagonal), with diagonal[i] dividing diagonal[i+1]."""

    left: Matrix
    right: Matrix
    diagonal: List[Poly]
    rows: int
    cols: int

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if not d.is_zero())

    def diagonal_matrix(self) -> Matrix:
        out = zero_matrix(self.rows, self.cols)
        for i, d in enumerate(self.diagonal):
            out[i][i] = d
        return out

    def verify(self, matrix: Sequence[Sequence[Poly]]) -> bool:
        product = mat_mul(mat_mul(self.left, matrix), self.right)
        return product == self.diagonal_matrix()


def smith_normal_form(matrix: Sequence[Sequence[Poly]]) -> SmithDecomposition:
    """
    Diagonalize a matrix over Q[∂] by invertible row and column operations.

    The pivot is the nonzero entry of smallest ∂-degree, ties going to the
    first in row-major order. Diagonal entries are made monic.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    a = [list(r) for r in matrix]
    left = identity_matrix(rows)
    right = identity_matrix(cols)

    def row_op(target: int, source: int, factor: Poly) -> None:
        # row_target += factor * row_source
        a[target] = [x + factor * y for x, y in zip(a[target], a[source])]
        left[target] = [x + factor * y for x, y in zip(left[target], left[source])]

    def col_op(target: int, source: int, factor: Poly) -> None:
        for r in a:
            r[target] = r[target] + factor * r[source]
        for r in right:
            r[target] = r[target] + factor * r[source]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if not a[i][j].is_zero():
                        deg = a[i][j].d_degree()
                        if best is None or deg < best[0]:
                            best = (deg, i, j)
            if best is None:
                break
            _, i, j = best
            a[t], a[i] = a[i], a[t]
            left[t], left[i] = left[i], left[t]
            for r in a:
                r[t], r[j] = r[j], r[t]
            for r in right:
                r[t], r[j] = r[j], r[t]
            pivot = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if not a[i][t].is_zero():
                    q, r = a[i][t].divmod_d(pivot)
                    row_op(i, t, -q)
                    clean = clean and r.is_zero()
            for j in range(t + 1, cols):
                if not a[t][j].is_zero():
                    q, r = a[t][j].divmod_d(pivot)
                    col_op(j, t, -q)
                    clean = clean and r.is_zero()
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if not pivot.divides(a[i][j])),
                None,
            )
            if bad is None:
                break
            row_op(t, bad, Poly.one())
        if a[t][t].is_zero():
            break
        lc = a[t][t].leading_coefficient()
        if lc != 1:
            inv = Poly.const(1 / lc)
            a[t] = [x * inv for x in a[t]]
            left[t] = [x * inv for x in left[t]]

    diagonal = [a[i][i] for i in range(min(rows, cols))]
    logger.debug("smith form of %dx%d matrix: %s", rows, cols, [str(d) for d in diagonal])
    return SmithDecomposition(left, right, diagonal, rows, cols)


def solve_over_kd(
    matrix: Sequence[Sequence[Poly]], b: Sequence[Poly]
) -> Optional[Tuple[List[Poly], List[List[Poly]]]]:
    """
    Solve matrix · x = b over Q[∂].

    Returns (particular solution, kernel basis) or None when some diagonal
    divisibility fails.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    snf = smith_normal_form(matrix)
    lb = [sum((snf.left[i][k] * b[k] for k in range(rows)), Poly.zero()) for i in range(rows)]
    y: List[Poly] = [Poly.zero() for _ in range(cols)]
    for i in range(rows):
        d = snf.diagonal[i] if i < len(snf.diagonal) else Poly.zero()
        if d.is_zero():
            if not lb[i].is_zero():
                return None
            continue
        q, r = lb[i].divmod_d(d)
        if not r.is_zero():
            return None
        y[i] = q
    x = [sum((snf.right[j][k] * y[k] for k in range(cols)), Poly.zero()) for j in range(cols)]
    kernel = [[snf.right[j][k] for j in range(cols)] for k in range(snf.rank, cols)]
    return x, kernel


def in_partial_image(elem: ModElement) -> bool:
    """True when an arity-0 element lies in ∂M, i.e. ∂·x = elem is solvable."""
    rank = elem.module.rank
    d_times = [[Poly.partial() if i == j else Poly.zero() for j in range(rank)] for i in range(rank)]
    return solve_over_kd(d_times, list(elem.coeffs)) is not None


# -------------------------------------------------------------------
# Bounded-degree unknown maps
# -------------------------------------------------------------------
@dataclass(frozen=True)
class UnknownMap:
    """
    A map source → target whose entries are ∂-polynomials of degree ≤ degree
    with unknown rational coefficients. Symbol offset + ((k*rank_s)+j)*(degree+1)+t
    is the ∂^t coefficient of the (k, j) entry.
    """

    source: FreeCdModule
    target: FreeCdModule
    degree: int
    offset: int = 0

    @property
    def size(self) -> int:
        return self.target.rank * self.source.rank * (self.degree + 1)

    def symbols(self) -> range:
        return range(self.offset, self.offset + self.size)

    def locate(self, symbol: int) -> Tuple[int, int, int]:
        rel = symbol - self.offset
        t = rel % (self.degree + 1)
        rel //= self.degree + 1
        return rel // self.source.rank, rel % self.source.rank, t

    def basis_map(self, symbol: int) -> CdLinearMap:
        k, j, t = self.locate(symbol)
        matrix = zero_matrix(self.target.rank, self.source.rank)
        matrix[k][j] = Poly({(t,): 1})
        return CdLinearMap(self.source, self.target, matrix)

    def instantiate(self, assignment: Mapping[int, Fraction]) -> CdLinearMap:
        matrix = zero_matrix(self.target.rank, self.source.rank)
        for symbol in self.symbols():
            value = assignment.get(symbol, 0)
            if value:
                k, j, t = self.locate(symbol)
                matrix[k][j] = matrix[k][j] + Poly({(t,): value})
        return CdLinearMap(self.source, self.target, matrix)


Residual = Dict[str, ModElement]


def _residual_difference(a: Residual, b: Residual) -> Residual:
    out = dict(a)
    for key, v in b.items():
        out[key] = out[key] - v if key in out else -v
    return out


@dataclass
class ResidualSystem:
    """
    Coefficient expansion of a residual map X ↦ Dict[label, ModElement] that is
    at most quadratic in an unknown map X.

    terms[key][label] is the ModElement multiplying the product of the unknowns
    in key (empty key for the constant part).
    """

    unknown: UnknownMap
    terms: Dict[Tuple[int, ...], Residual] = field(default_factory=dict)

    @classmethod
    def expand(
        cls,
        unknown: UnknownMap,
        residual: Callable[[CdLinearMap], Residual],
        quadratic: Optional[Callable[[CdLinearMap, CdLinearMap], Residual]] = None,
    ) -> "ResidualSystem":
        """
        residual(X) must equal residual(0) + (linear in X) + quadratic(X, X),
        with quadratic bilinear.
        """
        system = cls(unknown)
        base = residual(CdLinearMap.zero(unknown.source, unknown.target))
        system.terms[()] = base
        basis = {u: unknown.basis_map(u) for u in unknown.symbols()}
        for u, e_u in basis.items():
            lin = _residual_difference(residual(e_u), base)
            if quadratic is not None:
                lin = _residual_difference(lin, quadratic(e_u, e_u))
            system.terms[(u,)] = lin
        if quadratic is not None:
            symbols = list(basis)
            for i, u in enumerate(symbols):
                for v in symbols[i:]:
                    q = quadratic(basis[u], basis[v])
                    if u != v:
                        q = _merge(q, quadratic(basis[v], basis[u]))
                    if any(not e.is_zero() for e in q.values()):
                        system.terms[(u, v)] = q
        logger.debug(
            "expanded residual over %d unknowns into %d coefficient blocks",
            unknown.size,
            len(system.terms),
        )
        return system

    def equations(self) -> List[Equation]:
        """One equation per (label, component, monomial): Σ coeff · Π unknowns = 0."""
        buckets: Dict[Tuple, Equation] = {}
        for key, residual in self.terms.items():
            for label, elem in residual.items():
                for k, c in enumerate(elem.coeffs):
                    for exps, v in c.items():
                        eq = buckets.setdefault((label, k, exps), {})
                        eq[key] = eq.get(key, Fraction(0)) + v
        out = []
        for eq in buckets.values():
            clean = {k: v for k, v in eq.items() if v}
            if clean:
                out.append(clean)
        return out

    def is_affine(self) -> bool:
        return all(len(k) <= 1 for k in self.terms)


def _merge(a: Residual, b: Residual) -> Residual:
    out = dict(a)
    for key, v in b.items():
        out[key] = out[key] + v if key in out else v
    return out


def bounded_coefficient_solve(equations: Iterable[Equation]) -> Optional[Dict[int, Fraction]]:
    """
    Solve a system affine in the unknown coefficients exactly over Q.

    Each equation maps () to its constant and (u,) to the coefficient of
    unknown u. Returns an assignment (free unknowns set to 0) or None.
    """
    rows: List[Dict[int, Fraction]] = []
    rhs: List[Fraction] = []
    for eq in equations:
        row: Dict[int, Fraction] = {}
        const = Fraction(0)
        for key, v in eq.items():
            if len(key) == 0:
                const += v
            elif len(key) == 1:
                row[key[0]] = row.get(key[0], 0) + v
            elif v:
                raise NotAffine(f"equation contains the product of unknowns {key}")
        rows.append(row)
        rhs.append(-const)
    return linear.solve(rows, rhs)


def default_degree_bound(polys: Iterable[Poly]) -> int:
    """Max ∂-degree among the given polynomials plus two."""
    return max((p.d_degree() for p in polys), default=0) + 2


def degree_schedule(bound: int, escalate: int) -> List[int]:
    return [bound] if escalate <= 0 else [bound, bound + escalate]


def all_tuples(modules: Sequence[FreeCdModule]) -> Iterable[Tuple[int, ...]]:
    return itertools.product(*(range(m.rank) for m in modules))
