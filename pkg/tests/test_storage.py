# tests/test_storage.py
"""
Tests for utils/storage.py
Verifies reading session files, resolving named entries and solver bounds.
"""

import json
import pytest
from pydantic import ValidationError

from algebra.errors import SessionError
from utils import storage
from utils.storage import DATA_DIR, SCHEMA_FILE, load_session, read_session_file, validation_message


@pytest.fixture
def curk():
    return load_session(DATA_DIR / "cur_k.json")


def write_session(tmp_path, data, name="session.json"):
    """Helper to write a session dict to a temporary file."""
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


# -------------------------------------------------------------------
# READING FILES
# -------------------------------------------------------------------
def test_bundled_sessions_are_valid():
    paths = storage.bundled_sessions()
    assert DATA_DIR / "cur_k.json" in paths
    assert storage.SCHEMA_FILE not in paths
    for path in paths:
        read_session_file(path)


def test_data_directory_holds_only_json():
    assert {p.suffix for p in DATA_DIR.iterdir() if p.is_file()} == {".json"}
    assert SCHEMA_FILE.exists()


def test_missing_file(tmp_path):
    with pytest.raises(SessionError, match="no such session file"):
        read_session_file(tmp_path / "nope.json")


def test_broken_json_reports_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"modules": {', encoding="utf-8")
    with pytest.raises(SessionError, match=r"broken.json:1:"):
        read_session_file(path)


def test_schema_errors_carry_location(tmp_path):
    path = write_session(tmp_path, {"modules": {"K": {"basis": ["e", "e"]}}})
    with pytest.raises(ValidationError) as info:
        read_session_file(path)
    assert validation_message(info.value).startswith("modules.K.basis")


def test_reserved_basis_names_are_rejected(tmp_path):
    path = write_session(tmp_path, {"modules": {"K": {"basis": ["D"]}}})
    with pytest.raises(ValidationError):
        read_session_file(path)


def test_unknown_keys_are_rejected(tmp_path):
    path = write_session(tmp_path, {"modules": {}, "tasks": []})
    with pytest.raises(ValidationError):
        read_session_file(path)


# -------------------------------------------------------------------
# NAMED ENTRIES
# -------------------------------------------------------------------
def test_entries_are_cached(curk):
    assert curk.algebra("curk") is curk.algebra("curk")
    assert curk.module("K").basis_names == ("e",)


def test_unknown_name_lists_known_ones(curk):
    with pytest.raises(SessionError, match=r"unknown map 'missing' \(known: deriv, ident\)"):
        curk.map("missing")


def test_cochain_degrees(curk):
    assert curk.cochain("unit").degree == 0
    assert curk.cochain("lam").degree == 2
    assert str(curk.cochain("lam").values.value((0, 0)).coeffs[0]) == "L1"


def test_bad_expression_names_the_entry(tmp_path):
    data = {
        "modules": {"K": {"basis": ["e"]}},
        "maps": {"f": {"source": "K", "target": "K", "images": {"e": {"e": "D +"}}}},
    }
    s = load_session(write_session(tmp_path, data))
    with pytest.raises(SessionError, match=r"maps.f\['e'\]"):
        s.map("f")


def test_unknown_basis_name_in_table(tmp_path):
    data = {
        "modules": {"K": {"basis": ["e"]}},
        "algebras": {"a": {"module": "K", "product": {"e,x": {"e": "1"}}}},
    }
    s = load_session(write_session(tmp_path, data))
    with pytest.raises(SessionError, match="algebras.a.product"):
        s.algebra("a")


def test_cochain_bimodule_must_match_algebra(tmp_path):
    data = {
        "modules": {"K": {"basis": ["e"]}},
        "algebras": {"a": {"module": "K", "cur": [[[1]]]}, "b": {"module": "K", "cur": [[[2]]]}},
        "bimodules": {"reg": {"algebra": "b", "regular": True}},
        "cochains": {"phi": {"algebra": "a", "bimodule": "reg", "degree": 1}},
    }
    s = load_session(write_session(tmp_path, data))
    with pytest.raises(SessionError, match="another algebra"):
        s.cochain("phi")


# -------------------------------------------------------------------
# BOUNDS
# -------------------------------------------------------------------
def test_default_bound_is_max_degree_plus_two(curk):
    assert curk.max_d_degree() == 1
    b = curk.bounds()
    assert (b.ddeg, b.ldeg, b.escalate) == (3, 2, 2)


def test_command_line_bounds_win(tmp_path):
    data = {"bounds": {"ddeg": 4, "ldeg": 1}}
    s = load_session(write_session(tmp_path, data))
    assert s.bounds().ddeg == 4
    assert s.bounds(ddeg=6).ddeg == 6
    t = s.truncation(ldeg=0)
    assert (t.ddeg, t.ldeg) == (4, 0)


def test_map_from_dict_round_trip(curk):
    k = curk.module("K")
    f = curk.map_from_dict({"images": {"e": {"e": "D"}}}, k, k)
    assert f == curk.map("deriv")
