# models/session.py
"""
Schema of a session file: named modules, algebras, bimodules, maps, cochains,
cocycles, extensions and homotopy data, with every polynomial written as an
expression string such as "D^2*L1 - 3/2".

Tables map comma-joined basis names ("e,f") to elements, and an element maps
basis names of the target module to coefficient expressions.
"""

from __future__ import annotations
import re
from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Element = Dict[str, str]
Table = Dict[str, Element]

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")
_RESERVED = re.compile(r"^(D|L\d+)$")


class SessionModel(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class SolverBounds(SessionModel):
    """
    Degree bounds for the witness solvers. A missing ddeg means
    "largest ∂-degree in the inputs + 2"; a failed search is retried once
    with the bound raised by `escalate`.
    """

    ddeg: Optional[int] = Field(None, ge=0)
    ldeg: int = Field(2, ge=0)
    escalate: int = Field(2, ge=0)

    def merged(self, ddeg: Optional[int] = None, ldeg: Optional[int] = None) -> "SolverBounds":
        """Command-line values win over the file."""
        return SolverBounds(
            ddeg=ddeg if ddeg is not None else self.ddeg,
            ldeg=ldeg if ldeg is not None else self.ldeg,
            escalate=self.escalate,
        )


class ModuleSpec(SessionModel):
    basis: List[str] = Field(default_factory=list)

    @field_validator("basis")
    @classmethod
    def check_names(cls, v: List[str]) -> List[str]:
        for name in v:
            if not _NAME.match(name) or _RESERVED.match(name):
                raise ValueError(f"{name!r} cannot be used as a basis name")
        if len(set(v)) != len(v):
            raise ValueError("basis names must be distinct")
        return v


class AlgebraSpec(SessionModel):
    """Either an explicit λ-product table or the structure constants of Cur(R)."""

    module: str
    product: Table = Field(default_factory=dict)
    cur: Optional[List[List[List[Union[int, str]]]]] = None

    @model_validator(mode="after")
    def one_source(self) -> "AlgebraSpec":
        if self.cur is not None and self.product:
            raise ValueError("give either 'product' or 'cur', not both")
        return self


class BimoduleSpec(SessionModel):
    algebra: str
    module: Optional[str] = None
    regular: bool = False
    left: Table = Field(default_factory=dict)
    right: Table = Field(default_factory=dict)

    @model_validator(mode="after")
    def module_or_regular(self) -> "BimoduleSpec":
        if self.regular == (self.module is not None):
            raise ValueError("a bimodule needs exactly one of 'module' or 'regular: true'")
        if self.regular and (self.left or self.right):
            raise ValueError("a regular bimodule takes its actions from the algebra")
        return self


class MapSpec(SessionModel):
    """Images of the source basis; missing basis vectors map to zero."""

    source: str
    target: str
    images: Dict[str, Element] = Field(default_factory=dict)


class CochainSpec(SessionModel):
    algebra: str
    bimodule: str
    degree: int = Field(..., ge=0, le=4)
    values: Table = Field(default_factory=dict)
    value: Optional[Element] = None

    @model_validator(mode="after")
    def degree_zero_value(self) -> "CochainSpec":
        if self.degree == 0 and self.values:
            raise ValueError("a degree-0 cochain is an element: use 'value'")
        if self.degree > 0 and self.value is not None:
            raise ValueError("'value' is only for degree-0 cochains")
        return self


class CocycleSpec(SessionModel):
    """(▷: B×A→A, ◁: A×B→A, χ: B×B→A)."""

    A: str
    B: str
    left: Table = Field(default_factory=dict)
    right: Table = Field(default_factory=dict)
    chi: Table = Field(default_factory=dict)


class ExtensionSpec(SessionModel):
    """Built from a cocycle, or an algebra on A ⊕ B given directly."""

    cocycle: Optional[str] = None
    algebra: Optional[str] = None
    A: Optional[str] = None
    B: Optional[str] = None
    section: Optional[Dict[str, Element]] = None

    @model_validator(mode="after")
    def one_source(self) -> "ExtensionSpec":
        direct = [self.algebra, self.A, self.B]
        if self.cocycle is not None and any(x is not None for x in direct):
            raise ValueError("give either 'cocycle' or 'algebra', 'A' and 'B'")
        if self.cocycle is None and any(x is None for x in direct):
            raise ValueError("an extension given directly needs 'algebra', 'A' and 'B'")
        return self


class PairSpec(SessionModel):
    """An automorphism pair (g, h) or a derivation pair (dA, dB), by map names."""

    kind: Literal["aut", "der"]
    a: str
    b: str


class CrossedSpec(SessionModel):
    X: str
    Y: str
    rho: str
    left: Table = Field(default_factory=dict)
    right: Table = Field(default_factory=dict)


class TwoTermSpec(SessionModel):
    """A1 --fd--> A0; a missing fd is the zero map."""

    A1: str
    A0: str
    fd: Optional[str] = None
    m00: Table = Field(default_factory=dict)
    m01: Table = Field(default_factory=dict)
    m10: Table = Field(default_factory=dict)
    m3: Table = Field(default_factory=dict)


class MorphismSpec(SessionModel):
    source: str
    target: str
    f0: str
    f1: str
    f2: Table = Field(default_factory=dict)


class CrossedExtensionSpec(SessionModel):
    """0 → M → Y → X → A → 0 on a named crossed module, with sections ϱ and ς."""

    A: str
    M: str
    crossed: str
    alpha: str
    gamma: str
    rho: str
    sigma_images: Optional[List[Element]] = None


class SessionFile(SessionModel):
    description: str = ""
    bounds: SolverBounds = Field(default_factory=SolverBounds)
    modules: Dict[str, ModuleSpec] = Field(default_factory=dict)
    algebras: Dict[str, AlgebraSpec] = Field(default_factory=dict)
    bimodules: Dict[str, BimoduleSpec] = Field(default_factory=dict)
    maps: Dict[str, MapSpec] = Field(default_factory=dict)
    cochains: Dict[str, CochainSpec] = Field(default_factory=dict)
    cocycles: Dict[str, CocycleSpec] = Field(default_factory=dict)
    extensions: Dict[str, ExtensionSpec] = Field(default_factory=dict)
    pairs: Dict[str, PairSpec] = Field(default_factory=dict)
    crossed: Dict[str, CrossedSpec] = Field(default_factory=dict)
    twoterm: Dict[str, TwoTermSpec] = Field(default_factory=dict)
    morphisms: Dict[str, MorphismSpec] = Field(default_factory=dict)
    crossed_extensions: Dict[str, CrossedExtensionSpec] = Field(default_factory=dict)

    @field_validator("modules")
    @classmethod
    def check_module_names(cls, v: Dict[str, ModuleSpec]) -> Dict[str, ModuleSpec]:
        for name in v:
            if not _NAME.match(name):
                raise ValueError(f"{name!r} is not a valid module name")
        return v
