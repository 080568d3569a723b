# cli/homotopy.py
"""
Crossed modules, crossed extensions and 2-term structures:
crossed {check|to-shac|from-shac|theta}, shac {check|to-cocycle|from-cocycle|morphism|equivalent}.
"""

from __future__ import annotations
from pathlib import Path
from typing import Optional

import click

from algebra.checks import CheckResult
from algebra.conformal import SesquilinearMap
from algebra.errors import NotACocycle, UndecidedWithinBounds
from algebra.hochschild import Cochain, CochainBasisTruncation, is_cocycle
from algebra.homotopy import (
    check_crossed,
    check_morphism,
    check_skeletal_equivalence,
    check_twoterm,
    cocycle_to_skeletal,
    crossed_extension_theta,
    crossed_to_shac,
    section_change_correction,
    shac_to_crossed,
    skeletal_to_cocycle,
    solve_skeletal_equivalence,
)
from cli.common import bound_options, emit, guarded, report_options, session_argument, undecided
from models.report import Report
from utils.exporters import cochain_to_dict, crossed_to_dict, twoterm_to_dict
from utils.storage import load_session


@click.group()
def crossed():
    """Crossed modules and crossed extensions."""
    pass


@crossed.command("check")
@session_argument
@click.argument("name")
@report_options
@guarded
def crossed_check(session_path: Path, name: str, as_json: bool, out: Optional[Path]):
    """Actions, crossed identities and ρ being a homomorphism."""
    session = load_session(session_path)
    emit(Report.from_check("crossed check", name, check_crossed(session.crossed(name))), as_json, out)


@crossed.command("to-shac")
@session_argument
@click.argument("name")
@report_options
@guarded
def crossed_to_shac_command(session_path: Path, name: str, as_json: bool, out: Optional[Path]):
    """The strict 2-term structure Y --ρ--> X of a crossed module."""
    session = load_session(session_path)
    c = session.crossed(name)
    result = check_crossed(c)
    witnesses = {}
    if result.ok:
        t = crossed_to_shac(c)
        result.merge(check_twoterm(t))
        witnesses["shac"] = twoterm_to_dict(t)
    emit(Report.from_check("crossed to-shac", name, result, witnesses), as_json, out)


@crossed.command("from-shac")
@session_argument
@click.argument("name")
@report_options
@guarded
def crossed_from_shac(session_path: Path, name: str, as_json: bool, out: Optional[Path]):
    """The crossed module of a strict 2-term structure."""
    session = load_session(session_path)
    t = session.twoterm(name)
    result = check_twoterm(t)
    witnesses = {}
    if result.ok:
        c = shac_to_crossed(t)
        result.merge(check_crossed(c))
        witnesses["crossed"] = crossed_to_dict(c)
    emit(Report.from_check("crossed from-shac", name, result, witnesses), as_json, out)


@crossed.command("theta")
@session_argument
@click.argument("name")
@click.option("--section", "section_name", help="Second section of γ; report the 2-cochain relating the two classes.")
@bound_options
@report_options
@guarded
def crossed_theta(
    session_path: Path,
    name: str,
    section_name: Optional[str],
    ddeg: Optional[int],
    ldeg: Optional[int],
    as_json: bool,
    out: Optional[Path],
):
    """The 3-cocycle in C³(A, M) of a crossed extension."""
    session = load_session(session_path)
    s = session.crossed_extension(name)
    result = crossed_extension_theta(s)
    witnesses = {}
    if result.value is not None:
        witnesses["theta"] = cochain_to_dict(result.value)
    if result.ok and section_name is not None:
        rho_bar = session.map(section_name)
        other = crossed_extension_theta(s.with_rho(rho_bar))
        result.merge(other)
        if other.value is not None:
            witnesses["theta_section"] = cochain_to_dict(other.value)
            correction = section_change_correction(s, rho_bar, session.truncation(ddeg, ldeg))
            witnesses["correction"] = cochain_to_dict(correction)
    emit(Report.from_check("crossed theta", name, result, witnesses), as_json, out)


# -------------------------------------------------------------------
# SHAC
# -------------------------------------------------------------------
@click.group()
def shac():
    """2-term strongly homotopy associative conformal algebras."""
    pass


@shac.command("check")
@session_argument
@click.argument("name")
@report_options
@guarded
def shac_check(session_path: Path, name: str, as_json: bool, out: Optional[Path]):
    """The eight defining identities of a 2-term structure."""
    session = load_session(session_path)
    emit(Report.from_check("shac check", name, check_twoterm(session.twoterm(name))), as_json, out)


@shac.command("to-cocycle")
@session_argument
@click.argument("name")
@report_options
@guarded
def shac_to_cocycle(session_path: Path, name: str, as_json: bool, out: Optional[Path]):
    """Read a skeletal structure as (A0, A1, m3) with m3 a 3-cocycle."""
    session = load_session(session_path)
    t = session.twoterm(name)
    _, _, zeta = skeletal_to_cocycle(t)
    result = check_twoterm(t)
    emit(Report.from_check("shac to-cocycle", name, result, {"m3": cochain_to_dict(zeta)}), as_json, out)


@shac.command("from-cocycle")
@session_argument
@click.argument("cochain")
@report_options
@guarded
def shac_from_cocycle(session_path: Path, cochain: str, as_json: bool, out: Optional[Path]):
    """The skeletal structure A1 --0--> A0 with m3 a given 3-cocycle."""
    session = load_session(session_path)
    zeta = session.cochain(cochain)
    try:
        t = cocycle_to_skeletal(zeta.algebra, zeta.bimodule, zeta)
    except NotACocycle:
        if zeta.degree != 3:
            raise
        emit(Report.from_check("shac from-cocycle", cochain, is_cocycle(zeta)), as_json, out)
    result = check_twoterm(t)
    emit(Report.from_check("shac from-cocycle", cochain, result, {"shac": twoterm_to_dict(t)}), as_json, out)


@shac.command("morphism")
@session_argument
@click.argument("name")
@report_options
@guarded
def shac_morphism(session_path: Path, name: str, as_json: bool, out: Optional[Path]):
    """Check (f0, f1, f2) is a morphism between two 2-term structures."""
    session = load_session(session_path)
    m, s, t = session.morphism(name)
    emit(Report.from_check("shac morphism", name, check_morphism(m, s, t)), as_json, out)


@shac.command("equivalent")
@session_argument
@click.argument("first")
@click.argument("second")
@click.option("--sigma", help="2-cochain to verify instead of searching.")
@bound_options
@report_options
@guarded
def shac_equivalent(
    session_path: Path,
    first: str,
    second: str,
    sigma: Optional[str],
    ddeg: Optional[int],
    ldeg: Optional[int],
    as_json: bool,
    out: Optional[Path],
):
    """Decide whether two skeletal structures differ by d(σ) in m3."""
    session = load_session(session_path)
    t, other = session.twoterm(first), session.twoterm(second)
    subject = f"{first} ~ {second}"
    if sigma is not None:
        witness = session.cochain(sigma)
        result = check_skeletal_equivalence(t, other, witness)
        emit(Report.from_check("shac equivalent", subject, result, {"sigma": cochain_to_dict(witness)}), as_json, out)

    base = t.m3_cochain()
    zero = Cochain(2, base.algebra, base.bimodule, SesquilinearMap((t.A0, t.A0), t.A1))
    full = check_skeletal_equivalence(t, other, zero)
    m2 = CheckResult("skeletal equivalence", [f for f in full.failures if f.identity == "m2"], full.checked)
    if not m2.ok:
        emit(Report.from_check("shac equivalent", subject, m2, notes=["the binary products differ"]), as_json, out)

    bounds = session.bounds(ddeg, ldeg)
    degrees = [bounds.ddeg] + ([bounds.ddeg + bounds.escalate] if bounds.escalate else [])
    for degree in degrees:
        try:
            found = solve_skeletal_equivalence(t, other, CochainBasisTruncation(ldeg=bounds.ldeg, ddeg=degree))
        except UndecidedWithinBounds:
            continue
        result = check_skeletal_equivalence(t, other, found)
        result.bound = degree
        emit(Report.from_check("shac equivalent", subject, result, {"sigma": cochain_to_dict(found)}), as_json, out)
    emit(undecided("shac equivalent", subject, degrees[-1], f"no σ with ∂-degree ≤ {degrees[-1]} and λ-degree ≤ {bounds.ldeg}"), as_json, out)
