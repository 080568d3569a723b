# tests/test_exporter.py
"""
Tests for utils/exporters.py

Objects written back in session-file notation, and reports written to disk
as Markdown or JSON.
"""

import json
import pytest

from algebra.cdmod import CdLinearMap
from models.report import FailureRecord, Report, Verdict
from utils import exporters
from utils.storage import DATA_DIR, load_session


@pytest.fixture
def curk():
    return load_session(DATA_DIR / "cur_k.json")


@pytest.fixture
def sample_report():
    return Report(
        command="cocycle",
        subject="bad",
        verdict=Verdict.failed,
        checked=4,
        details=[FailureRecord(identity="coh5", args=["f", "f", "f"], difference="L1*e")],
    )


# -------------------------------------------------------------------
# SESSION NOTATION
# -------------------------------------------------------------------
def test_element_skips_zero_coefficients(curk):
    k = curk.module("K")
    assert exporters.element_to_dict(k.element({"e": "D^2 + 1"})) == {"e": "D^2 + 1"}
    assert exporters.element_to_dict(k.zero()) == {}


def test_map_layout_matches_session_maps(curk):
    assert exporters.map_to_dict(curk.map("deriv")) == {
        "source": "K",
        "target": "K",
        "images": {"e": {"e": "D"}},
    }


def test_unnamed_modules_are_written_by_basis(curk):
    k = curk.module("K")
    plane = k.direct_sum(k)
    d = exporters.map_to_dict(CdLinearMap.zero(plane, k))
    assert d["source"] == ["e", "e'"]
    assert d["images"] == {}


def test_map_reloads_through_session(curk):
    k = curk.module("K")
    f = curk.map("deriv")
    assert curk.map_from_dict(exporters.map_to_dict(f), k, k) == f


def test_cochain_layout(curk):
    assert exporters.cochain_to_dict(curk.cochain("lam")) == {
        "algebra": "curk",
        "bimodule": "reg",
        "degree": 2,
        "values": {"e,e": {"e": "L1"}},
    }
    assert exporters.cochain_to_dict(curk.cochain("unit"))["value"] == {"e": "1"}


def test_cocycle_layout():
    na = load_session(DATA_DIR / "nonabelian.json")
    d = exporters.cocycle_to_dict(na.cocycle("c2"))
    assert (d["A"], d["B"]) == ("A", "B")
    assert d["chi"] == {"f,f": {"e": "2"}}
    assert d["left"] == {"f,e": {"e": "2"}}


def test_twoterm_layout():
    sk = load_session(DATA_DIR / "skeletal.json")
    d = exporters.twoterm_to_dict(sk.twoterm("sk1"))
    assert d["A0"] == ["e"]
    assert d["m3"] == {"e,e,e": {"v": "-L1"}}
    assert d["fd"]["images"] == {}


def test_crossed_layout():
    cr = load_session(DATA_DIR / "crossed.json")
    d = exporters.crossed_to_dict(cr.crossed("inclusion"))
    assert d["rho"]["images"] == {"i": {"x": "1"}}
    assert d["Y"] == {"basis": ["i"], "product": {}}


# -------------------------------------------------------------------
# REPORT FILES
# -------------------------------------------------------------------
def test_export_report_markdown(tmp_path, sample_report):
    path = exporters.export_report(sample_report, tmp_path / "out" / "report.md")
    assert path.exists()
    text = path.read_text(encoding="utf-8")
    assert text.startswith("# cocycle bad")
    assert "| coh5 |" in text


def test_export_report_json(tmp_path, sample_report):
    path = exporters.export_report(sample_report, tmp_path / "report.json")
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["verdict"] == "fail"
    assert data["details"][0]["difference"] == "L1*e"
