# cli/core.py
"""
Structure validation and Hochschild commands: validate, diff, cocycle,
cohomology.
"""

from __future__ import annotations
from pathlib import Path
from typing import Optional

import click

from algebra.checks import CheckResult, Failure
from algebra.conformal import check_associativity, check_bimodule, check_sesquilinearity
from algebra.errors import NotACocycle, SessionError, UndecidedWithinBounds
from algebra.hochschild import CochainBasisTruncation, differential, is_cocycle, solve_coboundary, truncated_cohomology_dim
from algebra.homotopy import check_crossed, check_crossed_extension, check_morphism, check_twoterm
from algebra.nonabelian import check_cocycle, check_extension
from cli.common import bound_options, emit, guarded, report_options, session_argument, undecided
from models.report import Report, Verdict
from utils.exporters import cochain_to_dict
from utils.storage import Session, load_session


def _prefixed(result: CheckResult, name: str, into: CheckResult) -> None:
    into.checked += result.checked
    for f in result.failures:
        into.failures.append(Failure(f"{name}/{f.identity}", f.args, f.difference))


def validate_session(session: Session) -> CheckResult:
    """Every axiom that applies to a named entry of the session."""
    spec = session.spec
    result = CheckResult("validate")
    for name in spec.algebras:
        alg = session.algebra(name)
        _prefixed(check_associativity(alg), name, result)
        _prefixed(check_sesquilinearity(alg.product, label="product "), name, result)
    for name in spec.bimodules:
        _prefixed(check_bimodule(session.bimodule(name)), name, result)
    for name in spec.cochains:
        session.cochain(name)
    for name in spec.maps:
        session.map(name)
    for name in spec.cocycles:
        _prefixed(check_cocycle(session.cocycle(name)), name, result)
    for name in spec.extensions:
        _prefixed(check_extension(session.extension(name)), name, result)
    for name in spec.pairs:
        session.pair(name)
    for name in spec.crossed:
        _prefixed(check_crossed(session.crossed(name)), name, result)
    for name in spec.twoterm:
        _prefixed(check_twoterm(session.twoterm(name)), name, result)
    for name in spec.morphisms:
        m, s, t = session.morphism(name)
        _prefixed(check_morphism(m, s, t), name, result)
    for name in spec.crossed_extensions:
        _prefixed(check_crossed_extension(session.crossed_extension(name)), name, result)
    return result


@click.command("validate")
@session_argument
@report_options
@guarded
def validate(session_path: Path, as_json: bool, out: Optional[Path]):
    """Check every axiom of every object in a session file."""
    session = load_session(session_path)
    result = validate_session(session)
    emit(Report.from_check("validate", session_path.name, result), as_json, out)


@click.command("diff")
@session_argument
@click.argument("cochain")
@report_options
@guarded
def diff(session_path: Path, cochain: str, as_json: bool, out: Optional[Path]):
    """Apply the Hochschild differential to a named cochain."""
    session = load_session(session_path)
    phi = session.cochain(cochain)
    dphi = differential(phi)
    notes = ["the cochain is a cocycle"] if dphi.is_zero() else []
    report = Report(
        command="diff",
        subject=cochain,
        verdict=Verdict.passed,
        checked=1,
        witnesses={"differential": cochain_to_dict(dphi)},
        notes=notes,
    )
    emit(report, as_json, out)


# -------------------------------------------------------------------
# COCYCLE
# -------------------------------------------------------------------
@click.group()
def cocycle():
    """Cocycle conditions and coboundary preimages."""
    pass


@cocycle.command("check")
@session_argument
@click.argument("name", required=False)
@report_options
@guarded
def cocycle_check(session_path: Path, name: Optional[str], as_json: bool, out: Optional[Path]):
    """
    Check a cochain for d(φ) = 0 or a non-abelian cocycle for coh1 to coh5.
    Without a name every non-abelian cocycle in the file is checked.
    """
    session = load_session(session_path)
    spec = session.spec
    if name is None:
        result = CheckResult("cocycles")
        for key in spec.cocycles:
            _prefixed(check_cocycle(session.cocycle(key)), key, result)
        emit(Report.from_check("cocycle check", session_path.name, result), as_json, out)
    if name in spec.cocycles:
        result = check_cocycle(session.cocycle(name))
    elif name in spec.cochains:
        result = is_cocycle(session.cochain(name))
    else:
        raise SessionError(f"{name!r} is neither a cochain nor a cocycle")
    emit(Report.from_check("cocycle check", name, result), as_json, out)


@cocycle.command("coboundary")
@session_argument
@click.argument("name")
@bound_options
@report_options
@guarded
def cocycle_coboundary(session_path: Path, name: str, ddeg: Optional[int], ldeg: Optional[int], as_json: bool, out: Optional[Path]):
    """Search for ψ with d(ψ) = φ inside the degree bounds."""
    session = load_session(session_path)
    phi = session.cochain(name)
    bounds = session.bounds(ddeg, ldeg)
    degrees = [bounds.ddeg] + ([bounds.ddeg + bounds.escalate] if bounds.escalate else [])
    for degree in degrees:
        try:
            psi = solve_coboundary(phi, CochainBasisTruncation(ldeg=bounds.ldeg, ddeg=degree))
        except NotACocycle:
            emit(Report.from_check("cocycle coboundary", name, is_cocycle(phi)), as_json, out)
        except UndecidedWithinBounds:
            continue
        report = Report(
            command="cocycle coboundary",
            subject=name,
            verdict=Verdict.passed,
            checked=1,
            bound=degree,
            witnesses={"preimage": cochain_to_dict(psi)},
        )
        emit(report, as_json, out)
    emit(undecided("cocycle coboundary", name, degrees[-1], f"no preimage with ∂-degree ≤ {degrees[-1]} and λ-degree ≤ {bounds.ldeg}"), as_json, out)


@click.command("cohomology")
@session_argument
@click.option("--algebra", "algebra_name", required=True, help="Algebra name.")
@click.option("--bimodule", "bimodule_name", required=True, help="Bimodule name.")
@click.option("--n", "degree", type=click.IntRange(min=0, max=3), required=True, help="Cohomological degree.")
@bound_options
@report_options
@guarded
def cohomology(
    session_path: Path,
    algebra_name: str,
    bimodule_name: str,
    degree: int,
    ddeg: Optional[int],
    ldeg: Optional[int],
    as_json: bool,
    out: Optional[Path],
):
    """Dimensions of cochains, cocycles and coboundaries in a truncated cochain space."""
    session = load_session(session_path)
    alg, m = session.algebra(algebra_name), session.bimodule(bimodule_name)
    if m.algebra != alg:
        raise SessionError(f"bimodule {bimodule_name!r} is not over {algebra_name!r}")
    truncation = session.truncation(ddeg, ldeg)
    dims = truncated_cohomology_dim(degree, alg, m, truncation)
    report = Report(
        command="cohomology",
        subject=f"H^{degree}({algebra_name}, {bimodule_name})",
        verdict=Verdict.passed,
        checked=dims.cochains,
        bound=truncation.ddeg,
        witnesses={
            "ddeg": truncation.ddeg,
            "ldeg": truncation.ldeg,
            "cochains": dims.cochains,
            "cocycles": dims.cocycles,
            "coboundaries": dims.coboundaries,
            "cohomology": dims.quotient,
        },
    )
    emit(report, as_json, out)
