# cli/suite.py
"""
Session helpers and randomized property runs: schema, examples, check-all.
"""

from __future__ import annotations
import json
import random
from pathlib import Path
from typing import Optional

import click
from rich.table import Table

from algebra.cdmod import CdLinearMap
from algebra.checks import CheckResult, Failure
from algebra.conformal import ConformalAlgebra, regular_bimodule
from algebra.hochschild import check_bracket_differential, dgla_axiom_check, differential, random_cochain
from algebra.mcgauge import direct_transform, embed_cocycle, extract_cocycle, gauge_transform, mc_check
from algebra.nonabelian import check_cocycle
from algebra.symexpr import Poly
from cli.common import console, emit, guarded, report_options, session_argument
from models.report import Report
from models.session import SessionFile
from utils.storage import SCHEMA_FILE, bundled_sessions, load_session


@click.command("schema")
@click.option("--write", is_flag=True, help=f"Regenerate {SCHEMA_FILE.name} from the model.")
def schema(write: bool):
    """Print the JSON schema of session files."""
    text = json.dumps(SessionFile.model_json_schema(), indent=2)
    if write:
        SCHEMA_FILE.write_text(text + "\n", encoding="utf-8")
        console.print(f"[green]✓[/green] schema written to {SCHEMA_FILE}")
        return
    click.echo(text)


@click.command("examples")
def examples():
    """List the bundled session files."""
    table = Table(title="Bundled sessions")
    table.add_column("File", style="bold cyan")
    table.add_column("Description")
    for path in bundled_sessions():
        table.add_row(path.name, load_session(path).spec.description)
    console.print(table)


def random_map(source_alg: ConformalAlgebra, target_alg: ConformalAlgebra, rng: random.Random, ddeg: int = 1) -> CdLinearMap:
    src, tgt = source_alg.carrier, target_alg.carrier
    images = [
        tgt.element({name: Poly({(d,): rng.randint(-2, 2) for d in range(ddeg + 1)}) for name in tgt.basis_names})
        for _ in src.basis_names
    ]
    return CdLinearMap.from_images(src, tgt, images)


def _prefixed(result: CheckResult, prefix: str, into: CheckResult) -> None:
    into.checked += result.checked
    for f in result.failures:
        into.failures.append(Failure(f"{prefix}/{f.identity}", f.args, f.difference))


@click.command("check-all")
@session_argument
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for the random samples.")
@click.option("--samples", type=click.IntRange(min=1), default=3, show_default=True, help="Samples per property.")
@report_options
@guarded
def check_all(session_path: Path, seed: int, samples: int, as_json: bool, out: Optional[Path]):
    """
    Randomized checks on a session: d∘d = 0, the differential as a bracket
    with the multiplication, the DGLA axioms on regular bimodules, the
    Maurer-Cartan reading of every valid cocycle, and gauge transforms
    against the equivalence transform by -ξ.
    """
    session = load_session(session_path)
    rng = random.Random(seed)
    result = CheckResult("check-all")

    for name in session.spec.algebras:
        alg = session.algebra(name)
        m = regular_bimodule(alg)
        for _ in range(samples):
            for degree in (0, 1, 2):
                phi = random_cochain(degree, alg, m, rng)
                dd = differential(differential(phi))
                result.checked += 1
                for args, v in dd.nonzero_values():
                    result.failures.append(Failure(f"{name}/d-squared", args, v))
            for degree in (1, 2):
                _prefixed(check_bracket_differential(random_cochain(degree, alg, m, rng)), name, result)
            f, g, h = (random_cochain(rng.choice((1, 2)), alg, m, rng, ddeg=1, ldeg=1) for _ in range(3))
            _prefixed(dgla_axiom_check(f, g, h), name, result)

    for name in session.spec.cocycles:
        c = session.cocycle(name)
        if not check_cocycle(c).ok:
            continue
        _prefixed(mc_check(embed_cocycle(c)), name, result)
        for _ in range(samples):
            xi = random_map(c.B, c.A, rng)
            moved = gauge_transform(embed_cocycle(c), xi)
            _prefixed(mc_check(moved), f"{name}/gauge", result)
            gauged, direct = extract_cocycle(moved), direct_transform(c, -xi)
            for label, mine, theirs in (("gauge-left", gauged.left, direct.left), ("gauge-right", gauged.right, direct.right), ("gauge-chi", gauged.chi, direct.chi)):
                diff = mine - theirs
                result.checked += 1
                for idx, v in diff.nonzero_items():
                    result.failures.append(Failure(f"{name}/{label}", diff.arg_names(idx), v))

    notes = [f"seed {seed}, {samples} samples per property"]
    emit(Report.from_check("check-all", session_path.name, result, notes=notes), as_json, out)
