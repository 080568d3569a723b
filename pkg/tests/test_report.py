# tests/test_report.py
"""
Tests for models/report.py
Verdicts, exit codes and the two output renderings.
"""

import json
import pytest
from pydantic import ValidationError

from algebra.cdmod import FreeCdModule
from algebra.checks import CheckResult
from algebra.symexpr import Poly
from models.report import FailureRecord, Report, Verdict


@pytest.fixture
def failing():
    return Report(
        command="cocycle",
        subject="bad",
        verdict=Verdict.failed,
        checked=8,
        details=[FailureRecord(identity="coh5", args=["f", "f", "f"], difference="L1*e")],
    )


# -------------------------------------------------------------------
# VERDICTS
# -------------------------------------------------------------------
@pytest.mark.parametrize(
    "verdict, code",
    [(Verdict.passed, 0), (Verdict.failed, 1), (Verdict.undecided, 3)],
)
def test_exit_codes(verdict, code):
    assert verdict.exit_code == code


def test_failing_report_needs_a_difference():
    with pytest.raises(ValidationError):
        Report(command="cocycle", verdict=Verdict.failed)
    with pytest.raises(ValidationError):
        Report(
            command="cocycle",
            verdict=Verdict.failed,
            details=[FailureRecord(identity="coh1", difference="0")],
        )


def test_undecided_report_needs_a_bound():
    with pytest.raises(ValidationError):
        Report(command="equiv", verdict=Verdict.undecided)
    assert Report(command="equiv", verdict=Verdict.undecided, bound=4).exit_code == 3


def test_from_check_passes_when_no_failures():
    result = CheckResult("assoc", checked=5)
    report = Report.from_check("assoc", "curk", result)
    assert report.verdict is Verdict.passed
    assert report.checked == 5
    assert report.details == []


def test_from_check_records_failures():
    k = FreeCdModule(("e",), "K")
    result = CheckResult("assoc")
    result.record("assoc", ("e", "e", "e"), k.element({"e": Poly.lam(1, 2) ** 2}, 2))
    report = Report.from_check("assoc", "scaled", result)
    assert report.exit_code == 1
    assert report.identities() == ["assoc"]
    assert report.details[0].args == ["e", "e", "e"]


# -------------------------------------------------------------------
# RENDERING
# -------------------------------------------------------------------
def test_to_dict_drops_missing_bound(failing):
    d = failing.to_dict()
    assert "bound" not in d
    assert d["verdict"] == "fail"
    assert json.loads(failing.to_json())["details"][0]["identity"] == "coh5"


def test_to_markdown_lists_failures(failing):
    text = failing.to_markdown()
    assert text.startswith("# cocycle bad\n")
    assert "**Verdict:** ❌ fail" in text
    assert "| coh5 | f, f, f | `L1*e` |" in text


def test_to_markdown_shows_bound_and_witnesses():
    report = Report(
        command="equiv",
        verdict=Verdict.passed,
        bound=3,
        witnesses={"delta": {"images": {"f": {"e": "1"}}}},
        notes=["found at the first bound"],
    )
    text = report.to_markdown()
    assert "**Bound:** ∂-degree 3" in text
    assert "## Witnesses" in text
    assert text.rstrip().endswith("- found at the first bound")
