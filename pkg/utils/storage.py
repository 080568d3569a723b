# utils/storage.py
"""
Loading session files and turning their named entries into algebra objects.

Every lookup goes through `Session`, which validates references lazily and
caches what it builds, so the same name always yields the same object.
"""

from __future__ import annotations
import json
import logging
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

from pydantic import ValidationError

from algebra.cdmod import CdLinearMap, FreeCdModule, ModElement
from algebra.conformal import Bimodule, ConformalAlgebra, SesquilinearMap, cur_of, regular_bimodule
from algebra.errors import ConfextError, SessionError
from algebra.hochschild import Cochain, CochainBasisTruncation
from algebra.homotopy import CrossedExtension, CrossedModule, ImageSection, TwoTermMorphism, TwoTermSHAC
from algebra.nonabelian import Extension, NonAbelianCocycle, build_extension, extension_from_algebra
from algebra.wells import AutPair, DerPair
from models.session import SessionFile, SolverBounds

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
SCHEMA_FILE = DATA_DIR / "session.schema.json"


def read_session_file(path: Union[str, Path]) -> SessionFile:
    """Parse and validate; JSON errors are reported with line and column."""
    path = Path(path)
    if not path.exists():
        raise SessionError(f"{path}: no such session file")
    with open(path, "r", encoding="utf-8") as f:
        try:
            raw = json.load(f)
        except json.JSONDecodeError as exc:
            raise SessionError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return SessionFile.model_validate(raw)


def load_session(path: Union[str, Path]) -> "Session":
    return Session(read_session_file(path), Path(path))


def bundled_sessions() -> List[Path]:
    return sorted(p for p in DATA_DIR.glob("*.json") if p.name != SCHEMA_FILE.name)


class Session:
    """Named objects of a session file, built on first use."""

    def __init__(self, spec: SessionFile, path: Optional[Path] = None):
        self.spec = spec
        self.path = path
        self._cache: Dict[Tuple[str, str], Any] = {}

    # -------------------------------------------------------------------
    # helpers
    # -------------------------------------------------------------------
    def _cached(self, kind: str, name: str, build: Callable[[], Any]) -> Any:
        key = (kind, name)
        if key not in self._cache:
            try:
                self._cache[key] = build()
            except SessionError:
                raise
            except ConfextError as exc:
                raise SessionError(f"{kind} {name!r}: {exc}") from exc
        return self._cache[key]

    def _entry(self, section: str, name: str):
        entries = getattr(self.spec, section)
        if name not in entries:
            known = ", ".join(sorted(entries)) or "none"
            raise SessionError(f"unknown {section[:-1] if section.endswith('s') else section} {name!r} (known: {known})")
        return entries[name]

    def element(self, module: FreeCdModule, coeffs: Dict[str, str], arity: int, where: str) -> ModElement:
        try:
            return module.element(coeffs, arity)
        except ConfextError as exc:
            raise SessionError(f"{where}: {exc}") from exc

    def table(
        self,
        sources: Tuple[FreeCdModule, ...],
        target: FreeCdModule,
        entries: Dict[str, Dict[str, str]],
        where: str,
    ) -> SesquilinearMap:
        arity = max(len(sources) - 1, 0)
        values: Dict[Tuple[int, ...], ModElement] = {}
        for key, coeffs in entries.items():
            names = [n.strip() for n in key.split(",")]
            if len(names) != len(sources):
                raise SessionError(f"{where}[{key!r}]: expected {len(sources)} basis names")
            try:
                idx = tuple(m.index(n) for m, n in zip(sources, names))
            except ConfextError as exc:
                raise SessionError(f"{where}[{key!r}]: {exc}") from exc
            values[idx] = self.element(target, coeffs, arity, f"{where}[{key!r}]")
        return SesquilinearMap(sources, target, values)

    def linear_map(self, source: FreeCdModule, target: FreeCdModule, images: Dict[str, Dict[str, str]], where: str) -> CdLinearMap:
        cols = [target.zero(0) for _ in range(source.rank)]
        for name, coeffs in images.items():
            try:
                j = source.index(name)
            except ConfextError as exc:
                raise SessionError(f"{where}: {exc}") from exc
            cols[j] = self.element(target, coeffs, 0, f"{where}[{name!r}]")
        return CdLinearMap.from_images(source, target, cols)

    # -------------------------------------------------------------------
    # named entries
    # -------------------------------------------------------------------
    def module(self, name: str) -> FreeCdModule:
        return self._cached("module", name, lambda: FreeCdModule(tuple(self._entry("modules", name).basis), name))

    def algebra(self, name: str) -> ConformalAlgebra:
        def build():
            spec = self._entry("algebras", name)
            carrier = self.module(spec.module)
            if spec.cur is not None:
                alg = cur_of(spec.cur, carrier.basis_names, carrier.name)
                alg.name = name
                return alg
            product = self.table((carrier, carrier), carrier, spec.product, f"algebras.{name}.product")
            return ConformalAlgebra(carrier, product, name)

        return self._cached("algebra", name, build)

    def bimodule(self, name: str) -> Bimodule:
        def build():
            spec = self._entry("bimodules", name)
            alg = self.algebra(spec.algebra)
            if spec.regular:
                m = regular_bimodule(alg)
                m.name = name
                return m
            carrier = self.module(spec.module)
            a = alg.carrier
            left = self.table((a, carrier), carrier, spec.left, f"bimodules.{name}.left")
            right = self.table((carrier, a), carrier, spec.right, f"bimodules.{name}.right")
            return Bimodule(alg, carrier, left, right, name)

        return self._cached("bimodule", name, build)

    def map(self, name: str) -> CdLinearMap:
        def build():
            spec = self._entry("maps", name)
            return self.linear_map(self.module(spec.source), self.module(spec.target), spec.images, f"maps.{name}")

        return self._cached("map", name, build)

    def cochain(self, name: str) -> Cochain:
        def build():
            spec = self._entry("cochains", name)
            alg = self.algebra(spec.algebra)
            m = self.bimodule(spec.bimodule)
            if m.algebra != alg:
                raise SessionError(f"cochain {name!r}: bimodule {spec.bimodule!r} is over another algebra")
            if spec.degree == 0:
                return Cochain(0, alg, m, self.element(m.carrier, spec.value or {}, 0, f"cochains.{name}.value"))
            table = self.table((alg.carrier,) * spec.degree, m.carrier, spec.values, f"cochains.{name}.values")
            return Cochain(spec.degree, alg, m, table)

        return self._cached("cochain", name, build)

    def cocycle(self, name: str) -> NonAbelianCocycle:
        def build():
            spec = self._entry("cocycles", name)
            A, B = self.algebra(spec.A), self.algebra(spec.B)
            a, b = A.carrier, B.carrier
            where = f"cocycles.{name}"
            return NonAbelianCocycle(
                A,
                B,
                self.table((b, a), a, spec.left, f"{where}.left"),
                self.table((a, b), a, spec.right, f"{where}.right"),
                self.table((b, b), a, spec.chi, f"{where}.chi"),
            )

        return self._cached("cocycle", name, build)

    def extension(self, name: str) -> Extension:
        def build():
            spec = self._entry("extensions", name)
            if spec.cocycle is not None:
                ext = build_extension(self.cocycle(spec.cocycle), check=False, name=name)
            else:
                ext = extension_from_algebra(self.algebra(spec.algebra), self.algebra(spec.A), self.algebra(spec.B), name=name)
            if spec.section is not None:
                gamma = self.linear_map(ext.B.carrier, ext.E.carrier, spec.section, f"extensions.{name}.section")
                ext = ext.with_section(gamma)
            return ext

        return self._cached("extension", name, build)

    def pair(self, name: str) -> Union[AutPair, DerPair]:
        def build():
            spec = self._entry("pairs", name)
            g, h = self.map(spec.a), self.map(spec.b)
            if g.source != g.target or h.source != h.target:
                raise SessionError(f"pair {name!r}: both components must be endomorphisms")
            return AutPair(g, h) if spec.kind == "aut" else DerPair(g, h)

        return self._cached("pair", name, build)

    def crossed(self, name: str) -> CrossedModule:
        def build():
            spec = self._entry("crossed", name)
            X, Y = self.algebra(spec.X), self.algebra(spec.Y)
            x, y = X.carrier, Y.carrier
            left = self.table((x, y), y, spec.left, f"crossed.{name}.left")
            right = self.table((y, x), y, spec.right, f"crossed.{name}.right")
            return CrossedModule(X, Y, self.map(spec.rho), left, right, name)

        return self._cached("crossed", name, build)

    def twoterm(self, name: str) -> TwoTermSHAC:
        def build():
            spec = self._entry("twoterm", name)
            a1, a0 = self.module(spec.A1), self.module(spec.A0)
            fd = self.map(spec.fd) if spec.fd is not None else CdLinearMap.zero(a1, a0)
            where = f"twoterm.{name}"
            return TwoTermSHAC(
                a1,
                a0,
                fd,
                self.table((a0, a0), a0, spec.m00, f"{where}.m00"),
                self.table((a0, a1), a1, spec.m01, f"{where}.m01"),
                self.table((a1, a0), a1, spec.m10, f"{where}.m10"),
                self.table((a0, a0, a0), a1, spec.m3, f"{where}.m3"),
                name=name,
            )

        return self._cached("twoterm", name, build)

    def morphism(self, name: str) -> Tuple[TwoTermMorphism, TwoTermSHAC, TwoTermSHAC]:
        def build():
            spec = self._entry("morphisms", name)
            s, t = self.twoterm(spec.source), self.twoterm(spec.target)
            f2 = self.table((s.A0, s.A0), t.A1, spec.f2, f"morphisms.{name}.f2")
            return TwoTermMorphism(self.map(spec.f0), self.map(spec.f1), f2), s, t

        return self._cached("morphism", name, build)

    def crossed_extension(self, name: str) -> CrossedExtension:
        def build():
            spec = self._entry("crossed_extensions", name)
            cm = self.crossed(spec.crossed)
            sigma = ImageSection.from_smith(cm.rho)
            if spec.sigma_images is not None:
                images = [
                    self.element(cm.Y.carrier, e, 0, f"crossed_extensions.{name}.sigma_images[{k}]")
                    for k, e in enumerate(spec.sigma_images)
                ]
                sigma = sigma.with_images(images)
            return CrossedExtension(
                self.algebra(spec.A),
                self.bimodule(spec.M),
                cm.Y,
                cm.X,
                cm.left,
                cm.right,
                self.map(spec.alpha),
                cm.rho,
                self.map(spec.gamma),
                self.map(spec.rho),
                sigma,
                name,
            )

        return self._cached("crossed_extension", name, build)

    # -------------------------------------------------------------------
    # bounds
    # -------------------------------------------------------------------
    def max_d_degree(self) -> int:
        degrees = [0]
        for name in self.spec.algebras:
            degrees.append(self.algebra(name).d_degree())
        for name in self.spec.bimodules:
            degrees.append(self.bimodule(name).d_degree())
        for name in self.spec.maps:
            degrees.append(self.map(name).d_degree())
        for name in self.spec.cocycles:
            degrees.append(self.cocycle(name).d_degree())
        return max(degrees)

    def bounds(self, ddeg: Optional[int] = None, ldeg: Optional[int] = None) -> SolverBounds:
        """File bounds with command-line overrides and the default ∂-degree filled in."""
        merged = self.spec.bounds.merged(ddeg, ldeg)
        if merged.ddeg is None:
            merged = SolverBounds(ddeg=self.max_d_degree() + 2, ldeg=merged.ldeg, escalate=merged.escalate)
        logger.debug("solver bounds: %s", merged)
        return merged

    def truncation(self, ddeg: Optional[int] = None, ldeg: Optional[int] = None) -> CochainBasisTruncation:
        b = self.bounds(ddeg, ldeg)
        return CochainBasisTruncation(ldeg=b.ldeg, ddeg=b.ddeg)

    def map_from_dict(self, data: Dict[str, Any], source: FreeCdModule, target: FreeCdModule) -> CdLinearMap:
        """Reload a witness written by `map_to_dict`."""
        return self.linear_map(source, target, data.get("images", {}), "witness")


def validation_message(exc: ValidationError) -> str:
    """One line per error with its location in the file."""
    lines = []
    for err in exc.errors():
        loc = ".".join(str(p) for p in err["loc"])
        lines.append(f"{loc}: {err['msg']}")
    return "\n".join(lines)
