# cli/extensions.py
"""
Non-abelian extension and Maurer-Cartan commands: ext build, ext cocycle-of,
ext equivalent, mc check, mc gauge.
"""

from __future__ import annotations
from pathlib import Path
from typing import Optional

import click

from algebra.checks import CheckResult
from algebra.conformal import check_associativity
from algebra.errors import NoRationalWitness, UndecidedWithinBounds
from algebra.mcgauge import direct_transform, embed_cocycle, extract_cocycle, gauge_transform, mc_check
from algebra.nonabelian import (
    associator_labels,
    build_extension,
    check_equivalence_witness,
    check_extension,
    cocycle_of_extension,
    solve_equivalence,
)
from cli.common import bound_options, emit, guarded, report_options, session_argument, undecided
from models.report import Report
from utils.exporters import algebra_to_dict, cocycle_to_dict, map_to_dict
from utils.storage import load_session


@click.group()
def ext():
    """Build extensions from cocycles, read cocycles back, compare cocycles."""
    pass


@ext.command("build")
@session_argument
@click.argument("cocycle")
@report_options
@guarded
def ext_build(session_path: Path, cocycle: str, as_json: bool, out: Optional[Path]):
    """
    Build the algebra on A ⊕ B from a cocycle and check its associativity.
    Failing triples are translated into the cocycle identities they violate.
    """
    session = load_session(session_path)
    c = session.cocycle(cocycle)
    e = build_extension(c, check=False, name=f"E_{cocycle}")
    result = check_associativity(e.E)
    notes = []
    if not result.ok:
        notes.append("violated cocycle identities: " + ", ".join(associator_labels(e, result)))
    report = Report.from_check("ext build", cocycle, result, {"extension": algebra_to_dict(e.E)}, notes)
    emit(report, as_json, out)


@ext.command("cocycle-of")
@session_argument
@click.argument("extension")
@report_options
@guarded
def ext_cocycle_of(session_path: Path, extension: str, as_json: bool, out: Optional[Path]):
    """The cocycle (▷, ◁, χ) induced by the stored section of an extension."""
    session = load_session(session_path)
    e = session.extension(extension)
    result = check_extension(e)
    witnesses = {"cocycle": cocycle_to_dict(cocycle_of_extension(e))} if result.ok else {}
    emit(Report.from_check("ext cocycle-of", extension, result, witnesses), as_json, out)


@ext.command("equivalent")
@session_argument
@click.argument("first")
@click.argument("second")
@click.option("--witness", help="Map B → A to verify instead of searching.")
@bound_options
@report_options
@guarded
def ext_equivalent(
    session_path: Path,
    first: str,
    second: str,
    witness: Optional[str],
    ddeg: Optional[int],
    ldeg: Optional[int],
    as_json: bool,
    out: Optional[Path],
):
    """Decide whether two cocycles are equivalent through some δ: B → A."""
    session = load_session(session_path)
    c1, c2 = session.cocycle(first), session.cocycle(second)
    subject = f"{first} ~ {second}"
    if witness is not None:
        delta = session.map(witness)
        result = check_equivalence_witness(c1, c2, delta)
        emit(Report.from_check("ext equivalent", subject, result, {"delta": map_to_dict(delta)}), as_json, out)
    bounds = session.bounds(ddeg, ldeg)
    try:
        delta, used = solve_equivalence(c1, c2, bounds.ddeg, bounds.escalate)
    except UndecidedWithinBounds as exc:
        emit(undecided("ext equivalent", subject, exc.bound, str(exc)), as_json, out)
    except NoRationalWitness as exc:
        emit(undecided("ext equivalent", subject, bounds.ddeg + bounds.escalate, str(exc)), as_json, out)
    result = check_equivalence_witness(c1, c2, delta)
    result.bound = used
    emit(Report.from_check("ext equivalent", subject, result, {"delta": map_to_dict(delta)}), as_json, out)


# -------------------------------------------------------------------
# MC
# -------------------------------------------------------------------
@click.group()
def mc():
    """Cocycles as Maurer-Cartan elements of the sub-DGLA on A ⊕ B."""
    pass


@mc.command("check")
@session_argument
@click.argument("cocycle")
@report_options
@guarded
def mc_check_command(session_path: Path, cocycle: str, as_json: bool, out: Optional[Path]):
    """Maurer-Cartan equation for the embedded cocycle."""
    session = load_session(session_path)
    result = mc_check(embed_cocycle(session.cocycle(cocycle)))
    emit(Report.from_check("mc check", cocycle, result), as_json, out)


@mc.command("gauge")
@session_argument
@click.argument("cocycle")
@click.option("--xi", required=True, help="Map B → A generating the gauge transformation.")
@report_options
@guarded
def mc_gauge(session_path: Path, cocycle: str, xi: str, as_json: bool, out: Optional[Path]):
    """
    Gauge-transform a cocycle by ξ, compare with the equivalence transform
    by -ξ, and check the result is again Maurer-Cartan.
    """
    session = load_session(session_path)
    c = session.cocycle(cocycle)
    x = session.map(xi)
    element = embed_cocycle(c)
    moved = gauge_transform(element, x)
    result = CheckResult("gauge transform")
    result.merge(mc_check(moved))
    gauged = extract_cocycle(moved)
    direct = direct_transform(c, -x)
    for label, mine, theirs in (("gauge-left", gauged.left, direct.left), ("gauge-right", gauged.right, direct.right), ("gauge-chi", gauged.chi, direct.chi)):
        diff = mine - theirs
        result.checked += 1
        for idx, v in diff.nonzero_items():
            result.record(label, diff.arg_names(idx), v)
    emit(Report.from_check("mc gauge", f"{cocycle} by {xi}", result, {"cocycle": cocycle_to_dict(gauged)}), as_json, out)
