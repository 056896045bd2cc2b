"""
命令行测试
"""

import io
import json

import pytest

from core.errors import ParseError
from ui.console import EXIT_OK, EXIT_USAGE, parse_level, parse_q_list, run
from utils.file_utils import read_tsv


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_parse_helpers():
    assert parse_level("13/6") == (13, 6)
    assert parse_level("4/2") == (4, 2)
    assert parse_level("5") == (5, 1)
    assert parse_q_list("2, 3,6") == [2, 3, 6]
    with pytest.raises(ParseError):
        parse_level("x/2")
    with pytest.raises(ParseError):
        parse_q_list("0")


def test_invariants_json():
    code, out, _ = invoke("invariants", "G2", "--orbit", "A1", "--level", "5/2", "--format", "json")
    assert code == EXIT_OK
    record = json.loads(out)
    assert record["ok_orbit"] == "Ã1"
    assert record["central_charge"] == "3/5"
    assert record["growth"] == "12/5"
    assert record["natural_type"] == "A1"


def test_invariants_outside_closure_reports_reason():
    code, out, _ = invoke("invariants", "G2", "--orbit", "G2", "--level", "5/2", "--format", "json")
    assert code == EXIT_OK
    record = json.loads(out)
    assert "reason" in record
    assert "growth" not in record
    assert "asymptotic_dimension" not in record
    assert record["central_charge"]


def test_invariants_rejects_non_coprime_level():
    code, _, err = invoke("invariants", "A1", "--level", "4/2")
    assert code == EXIT_USAGE
    assert err.startswith("Error")


def test_search_unsupported_denominator():
    code, out, _ = invoke("search", "E6", "--q", "8", "--format", "json")
    assert code == EXIT_OK
    records = json.loads(out)
    assert len(records) == 20
    assert {r["verdict"] for r in records} == {"unsupported"}


def test_search_beyond_tabulated_denominators():
    code, out, _ = invoke("search", "G2", "--q", "99", "--format", "json")
    assert code == EXIT_OK
    records = json.loads(out)
    assert sorted(r["orbit"] for r in records) == ["A1", "G2", "G2(a1)", "Ã1"]
    assert {r["verdict"] for r in records} == {"unsupported"}
    assert all("q=99" in r["reason"] for r in records)


def test_search_writes_tsv(tmp_path):
    target = tmp_path / "g2.tsv"
    code, out, err = invoke("search", "G2", "--q", "2", "--format", "tsv", "--out", str(target))
    assert code == EXIT_OK
    assert out.splitlines()[0].split("\t")[:3] == ["O_k", "f", "p/q"]
    rows = read_tsv(target)
    assert any(row[1] == "A1" and row[2] == "5/2" and row[-1] == "finite_extension" for row in rows)
    assert str(target) in err


def test_table_commands():
    code, out, _ = invoke("table", "G2-centralizers")
    assert code == EXIT_OK
    assert "Ã1" in out and "3k+5" in out

    code, out, _ = invoke("table", "data-simple", "--format", "json")
    assert code == EXIT_OK
    g2 = next(r for r in json.loads(out) if r["type"] == "G2")
    assert g2["dim"] == "14"
    assert g2["|P/Q^v|"] == "3"

    code, _, err = invoke("table", "Z9")
    assert code == EXIT_USAGE
    assert "Z9" in err


def test_verify_rejects_unknown_suite():
    code, _, err = invoke("verify", "none")
    assert code == EXIT_USAGE
    assert "none" in err


def test_verify_identities():
    code, out, _ = invoke("verify", "--suite", "identities", "--format", "json")
    records = json.loads(out)
    assert records[0]["suite"] == "identities"
    assert records[0]["checked"] > 0
    assert records[0]["failures"] == []
    assert code == EXIT_OK


def test_usage_errors_exit_with_one():
    assert invoke("frobnicate")[0] == EXIT_USAGE
    assert invoke("invariants", "G2")[0] == EXIT_USAGE
