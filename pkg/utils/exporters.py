# utils/exporters.py
"""
Write algebraic objects back out in session-file notation, and write reports
to disk as JSON or Markdown.
"""

from __future__ import annotations
from pathlib import Path
from typing import Any, Dict

from algebra.cdmod import CdLinearMap, ModElement
from algebra.conformal import ConformalAlgebra, SesquilinearMap
from algebra.hochschild import Cochain
from algebra.homotopy import CrossedModule, TwoTermSHAC
from algebra.nonabelian import NonAbelianCocycle
from models.report import Report


def element_to_dict(elem: ModElement) -> Dict[str, str]:
    return {name: str(c) for name, c in elem.terms()}


def table_to_dict(table: SesquilinearMap) -> Dict[str, Dict[str, str]]:
    return {",".join(table.arg_names(idx)): element_to_dict(v) for idx, v in table.nonzero_items()}


def map_to_dict(f: CdLinearMap) -> Dict[str, Any]:
    """Same layout as a `maps` entry; unnamed modules are written by basis."""
    images = {}
    for name, img in zip(f.source.basis_names, f.images()):
        if not img.is_zero():
            images[name] = element_to_dict(img)
    return {"source": f.source.name or list(f.source.basis_names), "target": f.target.name or list(f.target.basis_names), "images": images}


def cochain_to_dict(phi: Cochain) -> Dict[str, Any]:
    out: Dict[str, Any] = {"algebra": phi.algebra.name, "bimodule": phi.bimodule.name, "degree": phi.degree}
    if phi.degree == 0:
        out["value"] = element_to_dict(phi.values)
    else:
        out["values"] = table_to_dict(phi.values)
    return out


def cocycle_to_dict(c: NonAbelianCocycle) -> Dict[str, Any]:
    return {
        "A": c.A.name,
        "B": c.B.name,
        "left": table_to_dict(c.left),
        "right": table_to_dict(c.right),
        "chi": table_to_dict(c.chi),
    }


def algebra_to_dict(alg: ConformalAlgebra) -> Dict[str, Any]:
    return {"basis": list(alg.carrier.basis_names), "product": table_to_dict(alg.product)}


def twoterm_to_dict(t: TwoTermSHAC) -> Dict[str, Any]:
    return {
        "A1": list(t.A1.basis_names),
        "A0": list(t.A0.basis_names),
        "fd": map_to_dict(t.fd),
        "m00": table_to_dict(t.m00),
        "m01": table_to_dict(t.m01),
        "m10": table_to_dict(t.m10),
        "m3": table_to_dict(t.m3),
    }


def crossed_to_dict(c: CrossedModule) -> Dict[str, Any]:
    return {
        "X": algebra_to_dict(c.X),
        "Y": algebra_to_dict(c.Y),
        "rho": map_to_dict(c.rho),
        "left": table_to_dict(c.left),
        "right": table_to_dict(c.right),
    }


def export_report(report: Report, path: Path) -> Path:
    """Markdown for a .md suffix, JSON otherwise."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = report.to_markdown() if path.suffix.lower() == ".md" else report.to_json() + "\n"
    with path.open("w", encoding="utf-8") as f:
        f.write(text)
    return path
