# algebra/symexpr.py
"""
Exact polynomials over the rationals in ∂ and an ordered family of λ-variables.

A Poly of arity n lives in Q[∂, λ1, ..., λn]. Terms are stored as a map from
exponent tuples (∂-exponent, λ1-exponent, ..., λn-exponent) to nonzero
Fractions. Values are immutable once built and hash by content, so two equal
polynomials always compare and hash equal.

The text form follows a small grammar:

    expr   := term { ("+"|"-") term }
    term   := factor { "*" factor }
    factor := atom [ "^" uint ]
    atom   := rational | var | "(" expr ")" | "-" factor
    var    := "D" | "L" uint
    rational := uint [ "/" uint ]

`D` is ∂ and `Li` is λi.
"""

from __future__ import annotations
import re
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from algebra.errors import (
    ArityMismatch,
    ExpressionSyntaxError,
    IndexCollision,
    VariableOutOfRange,
)


Scalar = Fraction
Exponents = Tuple[int, ...]
Number = Union[int, Fraction]

# variable index 0 is ∂, index i >= 1 is λi
PARTIAL = 0


class Poly:
    """Immutable polynomial in ∂ and λ1..λn with rational coefficients."""

    __slots__ = ("arity", "_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Exponents, Number]] = None, arity: int = 0):
        self.arity = arity
        clean: Dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != arity + 1:
                raise ArityMismatch(len(exps) - 1, arity)
            c = Fraction(coeff)
            if c:
                clean[tuple(exps)] = c
        self._terms = clean
        self._hash: Optional[int] = None

    # -------------------------------------------------------------------
    # Constructors
    # -------------------------------------------------------------------
    @classmethod
    def _raw(cls, terms: Dict[Exponents, Fraction], arity: int) -> "Poly":
        p = cls.__new__(cls)
        p.arity = arity
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, arity: int = 0) -> "Poly":
        return cls._raw({}, arity)

    @classmethod
    def const(cls, value: Number, arity: int = 0) -> "Poly":
        c = Fraction(value)
        return cls._raw({(0,) * (arity + 1): c} if c else {}, arity)

    @classmethod
    def one(cls, arity: int = 0) -> "Poly":
        return cls.const(1, arity)

    @classmethod
    def variable(cls, index: int, arity: int = 0) -> "Poly":
        """∂ for index 0, λ_index otherwise."""
        if index < 0 or index > arity:
            raise VariableOutOfRange(index, arity)
        exps = [0] * (arity + 1)
        exps[index] = 1
        return cls._raw({tuple(exps): Fraction(1)}, arity)

    @classmethod
    def partial(cls, arity: int = 0) -> "Poly":
        return cls.variable(PARTIAL, arity)

    @classmethod
    def lam(cls, index: int, arity: int) -> "Poly":
        if index < 1:
            raise VariableOutOfRange(index, arity)
        return cls.variable(index, arity)

    @classmethod
    def lam_sum(cls, indices: Sequence[int], arity: int) -> "Poly":
        """λ_{i1} + λ_{i2} + ... in the given context."""
        total = cls.zero(arity)
        for i in indices:
            total = total + cls.lam(i, arity)
        return total

    # -------------------------------------------------------------------
    # Inspection
    # -------------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        return self._terms.get((0,) * (self.arity + 1), Fraction(0))

    def coefficient(self, exps: Exponents) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def items(self) -> Iterator[Tuple[Exponents, Fraction]]:
        """Terms in canonical order."""
        for exps in sorted(self._terms, key=_term_key):
            yield exps, self._terms[exps]

    def monomials(self) -> List[Exponents]:
        return sorted(self._terms, key=_term_key)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, index: int) -> int:
        return max((e[index] for e in self._terms), default=-1)

    def d_degree(self) -> int:
        return self.degree_in(PARTIAL)

    def lambda_degree(self) -> int:
        return max((sum(e[1:]) for e in self._terms), default=-1)

    def has_partial(self) -> bool:
        return any(e[0] for e in self._terms)

    # -------------------------------------------------------------------
    # Arithmetic
    # -------------------------------------------------------------------
    def _coerce(self, other: object) -> "Poly":
        if isinstance(other, Poly):
            if other.arity != self.arity:
                raise ArityMismatch(self.arity, other.arity)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.arity)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "Poly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        terms = dict(self._terms)
        for exps, c in o._terms.items():
            s = terms.get(exps, 0) + c
            if s:
                terms[exps] = s
            else:
                terms.pop(exps, None)
        return Poly._raw(terms, self.arity)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({e: -c for e, c in self._terms.items()}, self.arity)

    def __sub__(self, other: object) -> "Poly":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "Poly":
        return (-self) + other

    def __mul__(self, other: object) -> "Poly":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Poly.zero(self.arity)
            return Poly._raw({e: v * c for e, v in self._terms.items()}, self.arity)
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        terms: Dict[Exponents, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(key, 0) + c1 * c2
                if s:
                    terms[key] = s
                else:
                    terms.pop(key, None)
        return Poly._raw(terms, self.arity)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.one(self.arity)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.arity == other.arity and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Poly.const(other, self.arity)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self._terms.items())))
        return self._hash

    # -------------------------------------------------------------------
    # Variable handling
    # -------------------------------------------------------------------
    def substitute(self, assignment: Mapping[int, "Poly"], arity: Optional[int] = None) -> "Poly":
        """
        Replace variables by polynomials. Keys are variable indices (0 for ∂).
        Every image must have the target arity; unassigned variables map to
        themselves in the target context.
        """
        if arity is None:
            arity = next(iter(assignment.values())).arity if assignment else self.arity
        for image in assignment.values():
            if image.arity != arity:
                raise ArityMismatch(arity, image.arity)
        images: List[Poly] = []
        for index in range(self.arity + 1):
            if index in assignment:
                images.append(assignment[index])
            elif any(e[index] for e in self._terms):
                images.append(Poly.variable(index, arity))
            else:
                images.append(Poly.zero(arity))
        powers: Dict[Tuple[int, int], Poly] = {}

        def power(index: int, k: int) -> Poly:
            key = (index, k)
            if key not in powers:
                powers[key] = images[index] ** k
            return powers[key]

        result = Poly.zero(arity)
        for exps, c in self._terms.items():
            term = Poly.const(c, arity)
            for index, k in enumerate(exps):
                if k:
                    term = term * power(index, k)
            result = result + term
        return result

    def rename_lambdas(self, index_map: Union[Mapping[int, int], Sequence[int]], arity: int) -> "Poly":
        """
        Move λi to λ_{index_map[i]} inside a context of the given arity. A
        sequence is read as the images of λ1, λ2, ... in order.
        """
        if not isinstance(index_map, Mapping):
            index_map = {i + 1: t for i, t in enumerate(index_map)}
        full = {i: index_map.get(i, i) for i in range(1, self.arity + 1)}
        seen: Dict[int, int] = {}
        for source, target in full.items():
            if target < 1 or target > arity:
                raise VariableOutOfRange(target, arity)
            if target in seen:
                raise IndexCollision(target)
            seen[target] = source
        terms: Dict[Exponents, Fraction] = {}
        for exps, c in self._terms.items():
            new = [0] * (arity + 1)
            new[0] = exps[0]
            for source in range(1, self.arity + 1):
                if exps[source]:
                    new[full[source]] = exps[source]
            terms[tuple(new)] = c
        return Poly._raw(terms, arity)

    def lift(self, arity: int) -> "Poly":
        """Embed into a context with more λ-variables, keeping λi as λi."""
        if arity == self.arity:
            return self
        if arity < self.arity:
            if any(any(e[arity + 1:]) for e in self._terms):
                raise ArityMismatch(self.arity, arity)
            return Poly._raw({e[: arity + 1]: c for e, c in self._terms.items()}, arity)
        pad = (0,) * (arity - self.arity)
        return Poly._raw({e + pad: c for e, c in self._terms.items()}, arity)

    # -------------------------------------------------------------------
    # Univariate helpers (arity 0, polynomials in ∂ only)
    # -------------------------------------------------------------------
    def leading_coefficient(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        return self._terms[max(self._terms, key=lambda e: (e[0], e))]

    def monic(self) -> "Poly":
        lc = self.leading_coefficient()
        return self if not lc else self * (1 / lc)

    def divmod_d(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        """Euclidean division in Q[∂]; both operands must have arity 0."""
        if self.arity or other.arity:
            raise ArityMismatch(self.arity, other.arity)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        q = Poly.zero()
        r = self
        dv = other.d_degree()
        lc = other.leading_coefficient()
        while not r.is_zero() and r.d_degree() >= dv:
            shift = r.d_degree() - dv
            t = Poly({(shift,): r.leading_coefficient() / lc})
            q = q + t
            r = r - t * other
        return q, r

    def divides(self, other: "Poly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return other.divmod_d(self)[1].is_zero()

    # -------------------------------------------------------------------
    # Text form
    # -------------------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces: List[str] = []
        for exps, c in self.items():
            factors = []
            for index in list(range(1, self.arity + 1)) + [PARTIAL]:
                k = exps[index]
                if k:
                    name = "D" if index == PARTIAL else f"L{index}"
                    factors.append(name if k == 1 else f"{name}^{k}")
            mag = abs(c)
            if not factors:
                body = _format_rational(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([_format_rational(mag)] + factors)
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, arity={self.arity})"


def _term_key(exps: Exponents) -> Tuple:
    # graded lex on (λ1, ..., λn, ∂), highest first
    ordered = tuple(exps[1:]) + (exps[0],)
    return (-sum(exps),) + tuple(-e for e in ordered)


def _format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# -------------------------------------------------------------------
# Parser
# -------------------------------------------------------------------
_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>D|L\d+)|(?P<op>[-+*^/()]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens: List[Tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ExpressionSyntaxError(text, start, "a number, D, L<i> or an operator")
        kind = m.lastgroup or ""
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive descent over the token list, one method per grammar rule."""

    def __init__(self, text: str, arity: int):
        self.text = text
        self.arity = arity
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> Tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str) -> None:
        kind, value, pos = self.take()
        if kind != "op" or value != op:
            raise ExpressionSyntaxError(self.text, pos, repr(op))

    def expr(self) -> Poly:
        result = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Poly:
        result = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            result = result * self.factor()
        return result

    def factor(self) -> Poly:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, value, pos = self.take()
            if kind != "num":
                raise ExpressionSyntaxError(self.text, pos, "an unsigned integer exponent")
            base = base ** int(value)
        return base

    def atom(self) -> Poly:
        kind, value, pos = self.take()
        if kind == "num":
            num = int(value)
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                dkind, dvalue, dpos = self.take()
                if dkind != "num" or int(dvalue) == 0:
                    raise ExpressionSyntaxError(self.text, dpos, "a nonzero denominator")
                return Poly.const(Fraction(num, int(dvalue)), self.arity)
            return Poly.const(num, self.arity)
        if kind == "var":
            if value == "D":
                return Poly.partial(self.arity)
            index = int(value[1:])
            if index < 1 or index > self.arity:
                raise VariableOutOfRange(index, self.arity)
            return Poly.lam(index, self.arity)
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "op" and value == "-":
            return -self.factor()
        raise ExpressionSyntaxError(self.text, pos, "a number, D, L<i>, '(' or '-'")


def parse(text: str, arity: int = 0) -> Poly:
    """Parse an expression string into a canonical Poly of the given arity."""
    parser = _Parser(text, arity)
    result = parser.expr()
    kind, _, pos = parser.peek()
    if kind != "end":
        raise ExpressionSyntaxError(text, pos, "end of expression or an operator")
    return result


def arith(op: str, lhs: Poly, rhs: Union[Poly, int, None] = None) -> Poly:
    """Named entry point for the ring operations, used by the CLI and tests."""
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "pow":
        return lhs ** int(rhs)  # type: ignore[arg-type]
    if op == "neg":
        return -lhs
    raise ValueError(f"unknown operation {op!r}")
