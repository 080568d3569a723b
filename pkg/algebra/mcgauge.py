# algebra/mcgauge.py
"""
The sub-DGLA of cochains on A ⊕ B that take at least one B-argument and land
in A. Non-abelian 2-cocycles are its Maurer-Cartan elements and equivalences
of cocycles are gauge transformations by maps ξ: B → A.
"""

from __future__ import annotations
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from algebra.cdmod import CdLinearMap, ModElement, inject, project
from algebra.checks import CheckResult, Failure
from algebra.conformal import ConformalAlgebra, SesquilinearMap, direct_sum, regular_bimodule
from algebra.errors import ModuleMismatch
from algebra.hochschild import Cochain, dbar, gbracket, multiplication_cochain
from algebra.nonabelian import ASSOCIATOR_LABELS, NonAbelianCocycle
from algebra.symexpr import Poly

logger = logging.getLogger(__name__)


class LieContext:
    """The algebra A ⊕ B (A's basis first) and its regular bimodule."""

    def __init__(self, A: ConformalAlgebra, B: ConformalAlgebra):
        self.A = A
        self.B = B
        self.D = direct_sum(A, B)
        self.bimodule = regular_bimodule(self.D)

    @property
    def offset(self) -> int:
        return self.A.rank

    def is_b(self, index: int) -> bool:
        return index >= self.offset

    def pattern(self, idx: Sequence[int]) -> str:
        return "".join("B" if self.is_b(j) else "A" for j in idx)

    def a_part(self, value: ModElement) -> ModElement:
        return project(value, self.A.carrier, 0)

    def b_part(self, value: ModElement) -> ModElement:
        return project(value, self.B.carrier, self.offset)

    def background(self) -> Cochain:
        """𝔪_A + 𝔪_B as a 2-cochain on A ⊕ B."""
        return multiplication_cochain(self.D, self.bimodule)

    def cochain(self, degree: int, values: Dict[Tuple[int, ...], ModElement]) -> Cochain:
        d = self.D.carrier
        return Cochain(degree, self.D, self.bimodule, SesquilinearMap((d,) * degree, d, values))

    def gauge_parameter(self, xi: CdLinearMap) -> Cochain:
        """ξ: B → A as a 1-cochain on A ⊕ B vanishing on A."""
        if xi.source != self.B.carrier or xi.target != self.A.carrier:
            raise ModuleMismatch("gauge parameter must map B to A")
        values = {
            (self.offset + j,): inject(img, self.D.carrier, 0) for j, img in enumerate(xi.images())
        }
        return self.cochain(1, values)


@dataclass
class MixedCochain:
    """A cochain with m A-arguments and n B-arguments, valued in A."""

    context: LieContext
    cochain: Cochain
    m: int
    n: int

    @classmethod
    def from_cochain(cls, context: LieContext, cochain: Cochain, m: int, n: int) -> "MixedCochain":
        if m + n != cochain.degree or n <= 0:
            raise ModuleMismatch(f"bidegree ({m}, {n}) does not fit a degree-{cochain.degree} cochain")
        for idx, v in cochain.values.values.items():
            if context.pattern(idx).count("B") != n or not context.b_part(v).is_zero():
                raise ModuleMismatch(f"component on {idx} is outside bidegree ({m}, {n})")
        return cls(context, cochain, m, n)


@dataclass
class MCElement:
    context: LieContext
    cochain: Cochain


def mixed_components(context: LieContext, phi: Cochain) -> Dict[Tuple[int, int], Cochain]:
    """Split a cochain on A ⊕ B by the number of B-arguments; keys are (m, n)."""
    parts: Dict[Tuple[int, int], Dict] = {}
    for idx, v in phi.values.values.items():
        n = context.pattern(idx).count("B")
        parts.setdefault((phi.degree - n, n), {})[idx] = v
    return {key: context.cochain(phi.degree, values) for key, values in parts.items()}


def embed_cocycle(c: NonAbelianCocycle, context: LieContext = None) -> MCElement:
    """(▷, ◁, χ) ↦ the 2-cochain with components ▷ on B×A, ◁ on A×B, χ on B×B."""
    ctx = context or LieContext(c.A, c.B)
    off = ctx.offset
    d = ctx.D.carrier
    values: Dict[Tuple[int, ...], ModElement] = {}
    for (i, j), v in c.left.values.items():
        values[(off + i, j)] = inject(v, d, 0)
    for (i, j), v in c.right.values.items():
        values[(i, off + j)] = inject(v, d, 0)
    for (i, j), v in c.chi.values.items():
        values[(off + i, off + j)] = inject(v, d, 0)
    return MCElement(ctx, ctx.cochain(2, values))


def extract_cocycle(element: MCElement) -> NonAbelianCocycle:
    ctx = element.context
    a, b = ctx.A.carrier, ctx.B.carrier
    off = ctx.offset
    left, right, chi = {}, {}, {}
    for idx, v in element.cochain.values.values.items():
        pattern = ctx.pattern(idx)
        value = ctx.a_part(v)
        if pattern == "BA":
            left[(idx[0] - off, idx[1])] = value
        elif pattern == "AB":
            right[(idx[0], idx[1] - off)] = value
        elif pattern == "BB":
            chi[(idx[0] - off, idx[1] - off)] = value
        else:
            raise ModuleMismatch(f"component on {idx} lies outside the degree-1 part")
    return NonAbelianCocycle(
        ctx.A,
        ctx.B,
        SesquilinearMap((b, a), a, left),
        SesquilinearMap((a, b), a, right),
        SesquilinearMap((b, b), a, chi),
    )


def mc_residual(element: MCElement) -> Cochain:
    """[𝔪_A + 𝔪_B, 𝔠] + ½[𝔠, 𝔠]."""
    c = element.cochain
    background = element.context.background()
    return gbracket(background, c) + gbracket(c, c) * Fraction(1, 2)


def mc_check(element: MCElement) -> CheckResult:
    """Maurer-Cartan equation; failures carry the cocycle identity of their arrangement."""
    ctx = element.context
    result = CheckResult("maurer-cartan")
    residual = mc_residual(element)
    result.checked = ctx.D.rank ** 3
    for idx, v in residual.values.nonzero_items():
        pattern = ctx.pattern(idx)
        label = "coh5" if pattern == "BBB" else ASSOCIATOR_LABELS.get(pattern, "assocA")
        result.failures.append(Failure(label, residual.values.arg_names(idx), v))
    return result


def direct_transform(c: NonAbelianCocycle, delta: CdLinearMap) -> NonAbelianCocycle:
    """
    The cocycle equivalent to c through δ, read off from
    ▷' = ▷ + δ(b)∘a, ◁' = ◁ + a∘δ(b) and
    χ' = χ + b1▷'δ(b2) - δ(b1∘b2) + δ(b1)◁'b2 - δ(b1)∘δ(b2).
    """
    a, b = c.A.carrier, c.B.carrier
    lam = Poly.lam(1, 1)
    left = SesquilinearMap.tabulate(
        (b, a), a,
        lambda idx: c.left.value(idx) + c.A.mul(delta.apply(b.basis(idx[0], 1)), a.basis(idx[1], 1), lam, 1),
    )
    right = SesquilinearMap.tabulate(
        (a, b), a,
        lambda idx: c.right.value(idx) + c.A.mul(a.basis(idx[0], 1), delta.apply(b.basis(idx[1], 1)), lam, 1),
    )

    def chi(idx):
        y1, y2 = b.basis(idx[0], 1), b.basis(idx[1], 1)
        d1, d2 = delta.apply(y1), delta.apply(y2)
        return (
            c.chi.value(idx)
            + left.binary(y1, d2, lam, 1)
            - delta.apply(c.B.mul(y1, y2, lam, 1))
            + right.binary(d1, y2, lam, 1)
            - c.A.mul(d1, d2, lam, 1)
        )

    return c.replace(left=left, right=right, chi=SesquilinearMap.tabulate((b, b), a, chi))


def gauge_transform(element: MCElement, xi: CdLinearMap) -> MCElement:
    """
    e^{ad ξ} 𝔠 - (e^{ad ξ} - 1)/ad ξ · d̄ξ, with ad ξ nilpotent of order two:
    𝔠 + [ξ, 𝔠] - d̄ξ - ½[ξ, d̄ξ].
    """
    ctx = element.context
    x = ctx.gauge_parameter(xi)
    c = element.cochain
    dx = dbar(x)
    result = c + gbracket(x, c) - dx - gbracket(x, dx) * Fraction(1, 2)
    return MCElement(ctx, result)


def check_ad_nilpotent(element: MCElement, xi: CdLinearMap) -> CheckResult:
    """[ξ, [ξ, 𝔠]] = 0 and [ξ, [ξ, d̄ξ]] = 0."""
    ctx = element.context
    x = ctx.gauge_parameter(xi)
    result = CheckResult("ad-nilpotency")
    for label, phi in (
        ("ad2-c", gbracket(x, gbracket(x, element.cochain))),
        ("ad2-dxi", gbracket(x, gbracket(x, dbar(x)))),
    ):
        result.checked += 1
        for args, v in phi.nonzero_values():
            result.failures.append(Failure(label, args, v))
    return result


def check_degree_zero_abelian(context: LieContext, xi1: CdLinearMap, xi2: CdLinearMap) -> CheckResult:
    result = CheckResult("degree-zero bracket")
    phi = gbracket(context.gauge_parameter(xi1), context.gauge_parameter(xi2))
    result.checked = 1
    for args, v in phi.nonzero_values():
        result.failures.append(Failure("abelian", args, v))
    return result


def _check_bidegrees(context: LieContext, label: str, phi: Cochain, allowed: List[Tuple[int, int]], result: CheckResult) -> None:
    result.checked += 1
    for idx, v in phi.values.values.items():
        n = context.pattern(idx).count("B")
        if (phi.degree - n, n) not in allowed or not context.b_part(v).is_zero():
            result.failures.append(Failure(label, phi.values.arg_names(idx), v))


def check_subdgla_closure(samples: Sequence[MixedCochain]) -> CheckResult:
    """
    [𝓛^{m,n}, 𝓛^{m',n'}] ⊂ 𝓛^{m+m'-1, n+n'} and d̄ 𝓛^{m,n} ⊂ 𝓛^{m+1,n} ⊕ 𝓛^{m,n+1}.
    """
    result = CheckResult("sub-dgla closure")
    for s in samples:
        _check_bidegrees(s.context, "dbar", dbar(s.cochain), [(s.m + 1, s.n), (s.m, s.n + 1)], result)
    for s, t in ((s, t) for s in samples for t in samples):
        predicted = [(s.m + t.m - 1, s.n + t.n)]
        _check_bidegrees(s.context, "bracket", gbracket(s.cochain, t.cochain), predicted, result)
    logger.debug("closure check over %d samples: %d failures", len(samples), len(result.failures))
    return result
