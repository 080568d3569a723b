# cli/wells.py
"""
Inducibility of automorphism and derivation pairs: wells aut, wells der.
"""

from __future__ import annotations
from pathlib import Path
from typing import Optional

import click

from algebra.cdmod import CdLinearMap
from algebra.checks import CheckResult
from algebra.errors import SessionError
from algebra.nonabelian import Extension, cocycle_of_extension
from algebra.wells import (
    AutPair,
    DerPair,
    WellsClass,
    WellsStatus,
    bimodule_of,
    check_aut_pair,
    check_omega,
    check_pair_in_g,
    extend_derivation,
    induce_automorphism,
    wells_aut,
    wells_der,
)
from cli.common import bound_options, emit, guarded, report_options, session_argument, undecided
from models.report import Report
from utils.exporters import map_to_dict
from utils.storage import load_session


@click.group()
def wells():
    """Wells maps: can a pair on (A, B) be lifted to the extension?"""
    pass


def _restrict(p: AutPair, e: Extension, partial: Optional[str]) -> AutPair:
    if partial == "A":
        return AutPair(p.g, CdLinearMap.identity(e.B.carrier))
    if partial == "B":
        return AutPair(CdLinearMap.identity(e.A.carrier), p.h)
    return p


def _class_differences(wc: WellsClass, result: CheckResult) -> None:
    rep, base = wc.representative, wc.base
    for label, mine, theirs in (("wells-left", rep.left, base.left), ("wells-right", rep.right, base.right), ("wells-chi", rep.chi, base.chi)):
        diff = mine - theirs
        for idx, v in diff.nonzero_items():
            result.record(label, diff.arg_names(idx), v)


@wells.command("aut")
@session_argument
@click.option("--extension", "extension_name", required=True, help="Extension name.")
@click.option("--pair", "pair_name", required=True, help="Automorphism pair name.")
@click.option("--partial", type=click.Choice(["A", "B"]), help="Use only the A or only the B component.")
@bound_options
@report_options
@guarded
def wells_aut_command(
    session_path: Path,
    extension_name: str,
    pair_name: str,
    partial: Optional[str],
    ddeg: Optional[int],
    ldeg: Optional[int],
    as_json: bool,
    out: Optional[Path],
):
    """
    Transform the cocycle of the extension by (g, h) and look for the ω
    making it equivalent to the original. A zero class comes with the lifted
    automorphism of E.
    """
    session = load_session(session_path)
    e = session.extension(extension_name)
    p = session.pair(pair_name)
    if not isinstance(p, AutPair):
        raise SessionError(f"pair {pair_name!r} is not an automorphism pair")
    p = _restrict(p, e, partial)
    subject = f"{pair_name} on {extension_name}" + (f" (partial {partial})" if partial else "")

    result = CheckResult("wells aut")
    result.merge(check_aut_pair(p, e.A, e.B))
    if not result.ok:
        emit(Report.from_check("wells aut", subject, result), as_json, out)

    bounds = session.bounds(ddeg, ldeg)
    wc = wells_aut(p, e, bounds.ddeg, bounds.escalate)
    if wc.status is WellsStatus.UNDECIDED:
        emit(undecided("wells aut", subject, wc.bound, "the bounded system has no rational solution"), as_json, out)
    result.bound = wc.bound
    if wc.status is WellsStatus.NONZERO:
        _class_differences(wc, result)
        notes = [f"no ω with ∂-degree ≤ {wc.bound} relates the transformed cocycle to the original"]
        emit(Report.from_check("wells aut", subject, result, notes=notes), as_json, out)

    result.merge(check_omega(p, wc.witness, cocycle_of_extension(e)))
    lifted = induce_automorphism(p, wc.witness, e)
    witnesses = {"omega": map_to_dict(wc.witness), "automorphism": map_to_dict(lifted.underlying)}
    emit(Report.from_check("wells aut", subject, result, witnesses), as_json, out)


@wells.command("der")
@session_argument
@click.option("--extension", "extension_name", required=True, help="Abelian extension name.")
@click.option("--pair", "pair_name", required=True, help="Derivation pair name.")
@bound_options
@report_options
@guarded
def wells_der_command(
    session_path: Path,
    extension_name: str,
    pair_name: str,
    ddeg: Optional[int],
    ldeg: Optional[int],
    as_json: bool,
    out: Optional[Path],
):
    """Solve d(f) = Θ(dA, dB)χ for f: B → A and extend the pair to E."""
    session = load_session(session_path)
    e = session.extension(extension_name)
    d = session.pair(pair_name)
    if not isinstance(d, DerPair):
        raise SessionError(f"pair {pair_name!r} is not a derivation pair")
    subject = f"{pair_name} on {extension_name}"

    result = check_pair_in_g(d, bimodule_of(cocycle_of_extension(e)), e.A)
    if not result.ok:
        emit(Report.from_check("wells der", subject, result), as_json, out)

    bounds = session.bounds(ddeg, ldeg)
    wc = wells_der(d, e, bounds.ddeg, bounds.escalate)
    result.bound = wc.bound
    if wc.status is WellsStatus.NONZERO:
        for args, v in wc.representative.nonzero_values():
            result.record("theta-chi", args, v)
        notes = [f"Θ(d)χ is not d(f) for any f with ∂-degree ≤ {wc.bound}"]
        emit(Report.from_check("wells der", subject, result, notes=notes), as_json, out)

    extended = extend_derivation(d, wc.witness, e)
    witnesses = {"f": map_to_dict(wc.witness), "derivation": map_to_dict(extended.underlying)}
    emit(Report.from_check("wells der", subject, result, witnesses), as_json, out)
