import io
import json
import subprocess
import sys

import pytest

from fctool.cli import main
from fctool.coxeter import ball, find_braid, system_from_subscript


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_enumerate_D4():
    code, text = run("enumerate", "--family", "D", "--rank", "4", "--fc-only", "--format", "json")
    assert code == 0
    doc = json.loads(text)
    assert doc["count"] == 48


def test_enumerate_identity_only():
    code, text = run("enumerate", "--family", "Btilde", "--rank", "5", "--max-length", "0", "--format", "json")
    doc = json.loads(text)
    assert code == 0 and doc["count"] == 1 and doc["rows"][0]["word"] == []


def test_enumerate_matches_oracle():
    code, text = run("enumerate", "--family", "Dtilde", "--rank", "5", "--max-length", "6", "--fc-only",
                     "--format", "json", "--series")
    doc = json.loads(text)
    sy = system_from_subscript("Dtilde", 5)
    oracle = [w for _, w in ball(sy, 6) if find_braid(sy, w) is None]
    assert doc["count"] == len(oracle)
    assert sum(doc["series"]["length"]) == len(oracle)


def test_enumerate_is_deterministic():
    a = run("enumerate", "--family", "Ctilde", "--rank", "3", "--max-length", "4", "--format", "json")
    b = run("enumerate", "--family", "Ctilde", "--rank", "3", "--max-length", "4", "--format", "json")
    assert a == b


def test_enumerate_needs_bound():
    code, _ = run("enumerate", "--family", "Btilde", "--rank", "4")
    assert code == 2


def test_budget(monkeypatch):
    monkeypatch.setenv("FCTOOL_BUDGET", "10")
    code, _ = run("enumerate", "--family", "Btilde", "--rank", "4", "--max-length", "6")
    assert code == 3


def test_unsupported_rank():
    code, _ = run("enumerate", "--family", "Btilde", "--rank", "3", "--max-length", "3", "--fc-only")
    assert code == 2


def test_map_Ln():
    code, text = run("map", "--op", "Ln", "--rank", "3", "--word", "t")
    doc = json.loads(text)
    assert doc["image"]["word"] == ["s3", "t", "s3"]
    assert (doc["source"]["length"], doc["image"]["length"]) == (1, 3)


def test_map_Qn():
    code, text = run("map", "--op", "Qn", "--rank", "4", "--word", "t")
    doc = json.loads(text)
    assert code == 0 and doc["terms"] == 2


def test_map_Pn_tl():
    code, text = run("map", "--op", "Pn", "--rank", "3", "--word", "sb2", "--algebra", "tl")
    assert json.loads(text)["terms"] == 13


def test_map_I_second_type():
    code, text = run("map", "--op", "I", "--rank", "4", "--word", "sb1 s2 s3 t s1 s2 s3 t")
    doc = json.loads(text)
    assert doc["image"]["class"] == "second" and doc["image"]["length"] == 10


def test_map_J_affine_D():
    code, text = run("map", "--op", "J", "--rank", "4", "--word", "s2 sb3")
    doc = json.loads(text)
    assert doc["image"]["family"] == "Dtilde" and doc["image"]["length"] == 4


@pytest.mark.parametrize("word,op", [("x", "Ln"), ("s1 s2 s1", "I"), ("s1 s2 s1", "Qn")])
def test_map_bad_input(word, op):
    args = ["map", "--op", op, "--rank", "4", "--word", word]
    if op == "Qn":
        args += ["--algebra", "tl"]
    code, _ = run(*args)
    assert code == 2


def test_bad_option_exit_code():
    with pytest.raises(SystemExit) as exc:
        run("map", "--op", "nope", "--rank", "3", "--word", "t")
    assert exc.value.code == 2


def test_verify_appendix_a():
    code, text = run("verify", "--suite", "appendixA")
    assert code == 0
    assert "48/48 matched" in text
    assert json.loads(text.strip().splitlines()[-1])["pass"]


def test_verify_reduced_words_small():
    code, text = run("verify", "--suite", "reduced-words", "--rank", "4", "--max-length", "4", "--format", "json")
    assert code == 0 and json.loads(text)["pass"]


def test_console_script():
    res = subprocess.run(
        [sys.executable, "-m", "fctool.cli", "map", "--op", "Ln", "--rank", "3", "--word", "t", "--format", "text"],
        capture_output=True, text=True,
    )
    assert res.returncode == 0
    assert res.stdout.startswith("s3 t s3")
