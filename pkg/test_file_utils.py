"""
数据文件读写测试
"""

from fractions import Fraction

import mpmath

from utils.file_utils import (
    export_to_json,
    golden_value,
    load_from_json,
    load_golden,
    read_tsv,
    write_tsv,
)
from utils.language import LanguageManager


def test_tsv_round_trip(tmp_path):
    target = tmp_path / "rows.tsv"
    assert write_tsv([["a", 1, ""], ["b", Fraction(1, 2), "x"]], target, header=["name", "value", "note"])
    assert target.read_text(encoding="utf-8").startswith("# name\tvalue\tnote\n")
    assert read_tsv(target) == [["a", "1", ""], ["b", "1/2", "x"]]


def test_missing_file_reads_empty(tmp_path):
    assert read_tsv(tmp_path / "missing.tsv") == []
    assert load_from_json(tmp_path / "missing.json") == []


def test_json_round_trip(tmp_path):
    target = tmp_path / "certs.json"
    records = [{"orbit": "Ã1", "p": 5, "q": 2}]
    assert export_to_json(records, target)
    assert load_from_json(target) == records
    assert export_to_json(records[0], target)
    assert load_from_json(target) == records
    assert not export_to_json([object()], tmp_path / "bad.json")


def test_golden_value():
    with mpmath.workprec(128):
        expected = 1 / (3 * mpmath.sqrt(3))
        assert abs(golden_value("1/(3*sqrt(3))") - expected) < mpmath.mpf(10) ** -30


def test_load_golden_g2():
    rows = load_golden("G2")
    extension = next(r for r in rows if r.orbit_label == "A1" and (r.p, r.q) == (5, 2))
    assert extension.ok_label == "Ã1"
    assert extension.c == Fraction(3, 5)
    assert extension.g == Fraction(12, 5)
    assert extension.knat == (Fraction(5, 2),)
    assert extension.verdict == "finite_extension"
    assert extension.multiplicity == 2
    trivial = next(r for r in rows if r.orbit_label == "G2(a1)")
    assert trivial.multiplicity == 1


def test_language_manager():
    lang = LanguageManager("zh_CN")
    assert lang.get_text("verdict_finite_extension") == "有限扩张"
    assert lang.get_text("missing_key") == "missing_key"
    assert lang.set_language("en_US")
    assert lang.get_text("error") == "Error"
    assert not lang.set_language("fr_FR")
