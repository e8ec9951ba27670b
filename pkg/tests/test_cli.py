import json
from pathlib import Path

import random

import pytest

from eqcut.checker import analyze, check
from eqcut.cli import main
from eqcut.document import load, print_document
from eqcut.generate import random_eq_derivation

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_corpus(capsys):
    code, out, _ = run(capsys, "check", str(CORPUS))
    assert code == 0
    assert out.count(": ok in") == len(list(CORPUS.glob("*.drv")))


def test_check_with_override(capsys):
    code, out, _ = run(capsys, "check", str(CORPUS / "fafb_eq2.drv"), "--system", "cf.EQ12")
    assert code == 0 and "ok in cf.EQ12" in out
    code, out, _ = run(capsys, "check", str(CORPUS / "fafb_eq2.drv"), "--system", "cf.EQ1", "--format", "json")
    assert code == 1
    assert json.loads(out)["ok"] is False


def test_check_parse_error_is_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.drv"
    bad.write_text("format 1\nfrob |- P => P\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 2 and "2:1" in err


def test_unknown_system_is_exit_2(capsys):
    code, _, err = run(capsys, "check", str(CORPUS / "fafb_eq2.drv"), "--system", "NOPE")
    assert code == 2 and "NOPE" in err


def test_transform_pipeline(capsys, tmp_path):
    out = tmp_path / "o.drv"
    code, _, err = run(capsys, "transform", str(CORPUS / "cut_example.drv"),
                       "--pipeline", "to_atomic,separate,eliminate_cuts_full", "-o", str(out))
    assert code == 0, err
    doc = load(out)
    assert doc.system_name == "cf.LK="
    assert check(doc.derivation, doc.system).ok


@pytest.fixture
def eq_file(tmp_path):
    rng = random.Random(5)
    d = random_eq_derivation(rng)
    while not analyze(d).cutCount:
        d = random_eq_derivation(rng)
    path = tmp_path / "eq.drv"
    path.write_text(print_document(d, "EQ"))
    return path


@pytest.fixture
def eq12_file(tmp_path):
    path = tmp_path / "eq12.drv"
    path.write_text(print_document(random_eq_derivation(random.Random(6), left_rules=True), "EQ12"))
    return path


def test_transform_json_report(capsys, tmp_path, eq_file):
    out = tmp_path / "o.drv"
    code, stdout, _ = run(capsys, "transform", str(eq_file),
                          "--pipeline", "eliminate_cuts_eq,transpose_eq2", "-o", str(out), "--format", "json")
    assert code == 0
    rep = json.loads(stdout)
    assert [s["ok"] for s in rep["stages"]] == [True, True]
    assert rep["traceNonDecreasing"] == 0


def test_transform_semishorten_needs_order(capsys, eq12_file):
    code, _, err = run(capsys, "transform", str(eq12_file), "--pipeline", "semishorten")
    assert code == 2 and "--order" in err
    code, out, _ = run(capsys, "transform", str(eq12_file),
                       "--pipeline", "semishorten", "--order", "size")
    assert code == 0 and "cf.EQ12@semishort(size)" in out


def test_transform_unknown_stage(capsys):
    code, _, err = run(capsys, "transform", str(CORPUS / "fafb_eq1.drv"), "--pipeline", "polish")
    assert code == 2 and "polish" in err


def test_transform_precondition_is_exit_1(capsys):
    code, _, err = run(capsys, "transform", str(CORPUS / "cut_example.drv"), "--pipeline", "embed_pure")
    assert code == 1 and "cut-free" in err
    # cuts against hypothesis leaves are outside the elimination procedures
    code, _, err = run(capsys, "transform", str(CORPUS / "leftsym_eq1.drv"), "--pipeline", "eliminate_cuts_eq")
    assert code == 1 and "hyp" in err


def test_search_found_and_exhausted(capsys):
    code, out, _ = run(capsys, "search", "--goal", "a=b => f(a)=f(b)", "--system", "cf.EQ12")
    assert code == 0 and out.startswith("Found at depth")
    code, out, _ = run(capsys, "search", "--goal", "a=c, b=c => a=b", "--system", "cf.{eq1,eq2l}",
                       "--format", "json")
    assert code == 1
    cert = json.loads(out)
    assert cert["result"] == "ExhaustedWithinBudget" and cert["exhausted"]
    assert cert["universe"] == ["a", "b", "c"]


def test_search_bad_budget(capsys):
    code, _, err = run(capsys, "search", "--goal", "=> a=a", "--system", "cf.EQ", "--depth", "0")
    assert code == 2 and "max_depth" in err


def test_stats(capsys):
    code, out, _ = run(capsys, "stats", str(CORPUS / "cut_example.drv"), "--format", "json")
    assert code == 0
    assert json.loads(out)["cutCount"] == 1


def test_usage_error(capsys):
    assert main([]) == 2
