# algebra/groebner.py
"""
Buchberger's algorithm over QQ and a decision procedure for the small
polynomial systems produced by the witness solvers.

Polynomials live in a sympy sparse ring; pairs are selected by the normal
strategy and pruned with the Gebauer-Moeller criteria.
"""

from __future__ import annotations
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Set, Tuple

import sympy as sp
from sympy.polys.domains import QQ
from sympy.polys.orderings import grevlex, lex
from sympy.polys.rings import ring

from algebra.cdmod import Equation

logger = logging.getLogger(__name__)

ORDERS = {"lex": lex, "grevlex": grevlex}

# smallest search radius for variables left free by the lex basis
MIN_FREE_RADIUS = 2


@dataclass
class PolySystem:
    """Equations Σ coeff · Π x_key = 0 over the unknowns x_0, ..., x_{n-1}."""

    unknowns: int
    equations: List[Equation] = field(default_factory=list)

    def names(self) -> List[str]:
        return [f"x{i}" for i in range(self.unknowns)]

    def to_ring(self, order: str = "lex"):
        R, *gens = ring(",".join(self.names()) if self.unknowns else "x0", QQ, ORDERS[order])
        polys = []
        for eq in self.equations:
            terms: Dict[Tuple[int, ...], object] = {}
            for key, coeff in eq.items():
                exps = [0] * len(gens)
                for u in key:
                    exps[u] += 1
                mono = tuple(exps)
                c = Fraction(coeff)
                terms[mono] = terms.get(mono, QQ(0)) + QQ(c.numerator, c.denominator)
            p = R.from_dict({m: c for m, c in terms.items() if c})
            if p:
                polys.append(p)
        return R, gens, polys

    def evaluate(self, assignment: Dict[int, Fraction]) -> List[Fraction]:
        out = []
        for eq in self.equations:
            total = Fraction(0)
            for key, coeff in eq.items():
                term = Fraction(coeff)
                for u in key:
                    term *= assignment.get(u, Fraction(0))
                total += term
            out.append(total)
        return out

    def satisfied_by(self, assignment: Dict[int, Fraction]) -> bool:
        return all(v == 0 for v in self.evaluate(assignment))


# -------------------------------------------------------------------
# Buchberger
# -------------------------------------------------------------------
def spoly(f, g, lmf=None, lmg=None):
    """S-polynomial of monic f and g."""
    lmf = f.LM if lmf is None else lmf
    lmg = g.LM if lmg is None else lmg
    R = f.ring
    lcm = R.monomial_lcm(lmf, lmg)
    s1 = f.mul_monom(R.monomial_div(lcm, lmf))
    s2 = g.mul_monom(R.monomial_div(lcm, lmg))
    return s1 - s2


def select(G, P):
    """Pair whose lead-monomial lcm is smallest in the ring order."""
    R = G[0].ring
    return min(P, key=lambda p: (R.order(R.monomial_lcm(G[p[0]].LM, G[p[1]].LM)), p))


def update(G, P: Set[Tuple[int, int]], f):
    """Add f to the basis and prune the pair set with the Gebauer-Moeller criteria."""
    lmf = f.LM
    lmG = [g.LM for g in G]
    R = f.ring
    lcm = R.monomial_lcm
    mul = R.monomial_mul
    div = R.monomial_div

    P = {
        p for p in P
        if (not div(lcm(lmG[p[0]], lmG[p[1]]), lmf)
            or lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[0]], lmf)
            or lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[1]], lmf))
    }
    lcm_dict: Dict[Tuple[int, ...], List[int]] = {}
    for i in range(len(G)):
        lcm_dict.setdefault(lcm(lmG[i], lmf), []).append(i)
    minimalized = []
    for L in sorted(lcm_dict.keys(), key=R.order):
        if all(not div(L, L_) for L_ in minimalized):
            minimalized.append(L)
    new_pairs = set()
    for L in minimalized:
        if not any(lcm(lmG[i], lmf) == mul(lmG[i], lmf) for i in lcm_dict[L]):
            new_pairs.add((min(lcm_dict[L]), len(G)))
    return G + [f], P | new_pairs


def minimalize(G):
    if not G:
        return []
    R = G[0].ring
    Gmin = []
    for f in sorted(G, key=lambda h: R.order(h.LM)):
        if all(not R.monomial_div(f.LM, g.LM) for g in Gmin):
            Gmin.append(f)
    return Gmin


def interreduce(G):
    out = []
    for i in range(len(G)):
        g = G[i].rem(G[:i] + G[i + 1:])
        out.append(g.monic())
    R = G[0].ring if G else None
    return sorted(out, key=lambda h: R.order(h.LM), reverse=True)


def buchberger(F) -> list:
    """Reduced Gröbner basis of the ideal generated by F."""
    G: list = []
    P: Set[Tuple[int, int]] = set()
    for f in F:
        if f:
            G, P = update(G, P, f.monic())
    steps = 0
    while P:
        i, j = select(G, P)
        P.remove((i, j))
        r = spoly(G[i], G[j]).rem(G)
        steps += 1
        if r:
            G, P = update(G, P, r.monic())
    logger.debug("buchberger finished after %d reductions with %d generators", steps, len(G))
    return interreduce(minimalize(G))


def is_groebner(G) -> bool:
    """Every S-polynomial reduces to zero."""
    return all(
        not spoly(G[i], G[j]).rem(G)
        for i in range(len(G))
        for j in range(i + 1, len(G))
    )


def groebner_basis(system: PolySystem, order: str = "lex") -> list:
    _, _, polys = system.to_ring(order)
    return buchberger(polys)


# -------------------------------------------------------------------
# Decision
# -------------------------------------------------------------------
class DecisionStatus(str, Enum):
    INCONSISTENT = "inconsistent-over-closure"
    RATIONAL = "rational-witness"
    NO_RATIONAL = "solvable-no-rational-witness"


@dataclass
class Decision:
    status: DecisionStatus
    assignment: Optional[Dict[int, Fraction]] = None


def _to_fraction(value) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def _rational_roots(p, gen) -> List[Fraction]:
    sym = gen.as_expr()
    roots = sp.roots(sp.Poly(p.as_expr(), sym), filter="Q")
    return sorted(_to_fraction(sp.Rational(r)) for r in roots)


def _involves(p, index: int) -> bool:
    return p.degrees()[index] > 0


def _free_values(radius: int) -> List[Fraction]:
    """0, 1, -1, 2, -2, ... up to ±radius."""
    values = [Fraction(0)]
    for n in range(1, radius + 1):
        values += [Fraction(n), Fraction(-n)]
    return values


def _free_radius(G) -> int:
    """
    A value for a free variable fails only where a leading coefficient of the
    remaining basis vanishes; there are at most total-degree many such values.
    """
    total = sum(max((sum(m) for m in g.monoms()), default=0) for g in G)
    return max(MIN_FREE_RADIUS, total)


def _back_substitute(
    G, gens, k: int, chosen: Dict[int, Fraction], radius: int = MIN_FREE_RADIUS
) -> Optional[Dict[int, Fraction]]:
    """Assign x_k, x_{k-1}, ... from the lex basis; variables are eliminated last first."""
    if k < 0:
        return dict(chosen)
    relevant = [g for g in G if all(not _involves(g, i) for i in range(k))]
    constraints = []
    for g in relevant:
        h = g
        if chosen:
            h = g.subs([(gens[i], QQ(v.numerator, v.denominator)) for i, v in chosen.items()])
        if not h:
            continue
        if h.is_ground:
            return None
        constraints.append(h)
    if constraints:
        candidates = [
            v for v in _rational_roots(constraints[0], gens[k])
            if all(not c.subs(gens[k], QQ(v.numerator, v.denominator)) for c in constraints)
        ]
    else:
        candidates = _free_values(radius)
    for value in candidates:
        chosen[k] = value
        found = _back_substitute(G, gens, k - 1, chosen, radius)
        if found is not None:
            return found
        del chosen[k]
    return None


def decide(system: PolySystem) -> Decision:
    """
    Decide whether the system has a solution over the algebraic closure and,
    when it does, look for a rational point by lex back-substitution.
    """
    R, gens, polys = system.to_ring("lex")
    if not polys:
        return Decision(DecisionStatus.RATIONAL, {})
    G = buchberger(polys)
    if any(g.is_ground and g for g in G):
        logger.debug("system with %d unknowns is inconsistent", system.unknowns)
        return Decision(DecisionStatus.INCONSISTENT)
    found = _back_substitute(G, gens, len(gens) - 1, {}, _free_radius(G))
    if found is not None:
        assignment = {i: v for i, v in found.items() if v}
        if system.satisfied_by(assignment):
            return Decision(DecisionStatus.RATIONAL, assignment)
    return Decision(DecisionStatus.NO_RATIONAL)
