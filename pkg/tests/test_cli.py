from __future__ import annotations

from importlib import resources

import pytest

from gentlecat.cli import CASES, main

DATA = resources.files("gentlecat").joinpath("data")


def q(name):
    return str(DATA.joinpath(f"{name}.quiv"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", q("a3rel"))
    assert code == 0 and out.startswith("OK gentle: 3 vertices, 2 arrows, dim 5")


def test_indecs_a2_harp(capsys):
    code, out, _ = run(capsys, "indecs", q("a2"), "--category", "harp")
    assert code == 0 and len(out.splitlines()) == 5


@pytest.mark.parametrize("cat,n", [("mod", 3), ("perp", 11), ("walks", 8)])
def test_indecs_other_categories(capsys, cat, n):
    code, out, _ = run(capsys, "indecs", q("a2"), "--category", cat)
    assert code == 0 and len(out.splitlines()) == n


def test_indecs_eperp(capsys):
    code, out, _ = run(capsys, "indecs", q("e62"), "--category", "eperp", "--idempotent", "1,2")
    assert code == 0 and len(out.splitlines()) == 4


def test_hom_with_multiplicities(capsys):
    code, out, _ = run(capsys, "hom", q("a2"), "--category", "harp", "X3+2*X5", "X4")
    assert code == 0 and out.splitlines() == ["dim Hom(X3+2*X5, X4) = 2", "dim E(X3+2*X5, X4) = 0"]
    code, out, _ = run(capsys, "hom", q("a2"), "--category", "harp", "X4", "X2")
    assert "dim E(X4, X2) = 1" in out


def test_ar_dot(capsys, tmp_path):
    dot = tmp_path / "out.dot"
    code, out, _ = run(capsys, "ar", q("n3"), "--category", "harp", "--dot", str(dot))
    text = dot.read_text()
    assert code == 0 and text.count("tooltip") == 9 and text.count("->") == 12


def test_ar_quotient(capsys):
    code, out, _ = run(capsys, "ar", q("a3rel"), "--category", "walks", "--quotient", "inj-to-proj")
    assert code == 0 and len(out.splitlines()) == 8


def test_silting_mutation_graph(capsys, tmp_path):
    g = tmp_path / "m.dot"
    code, out, _ = run(capsys, "silting", q("a2"), "--category", "harp", "--mutation-graph", str(g))
    assert code == 0 and len(out.splitlines()) == 5 and g.read_text().count("--") == 5


def test_blossom_output(capsys, tmp_path):
    o = tmp_path / "b.quiv"
    code, _, _ = run(capsys, "blossom", q("a2"), "-o", str(o))
    assert code == 0 and o.read_text().count("blossom") == 6


def test_verify_walks(capsys):
    code, out, _ = run(capsys, "verify", q("a3rel"), "--check", "walks")
    assert code == 0 and "EQUIV walks/a3rel PASS objects=12->8" in out


@pytest.mark.parametrize("check", ["gentle", "0auslander", "quotient", "functor-f"])
def test_verify_checks_pass(capsys, check):
    code, out, _ = run(capsys, "verify", q("a2"), "--check", check)
    assert code == 0 and out.splitlines()[-1] == f"VERIFY {check} PASS"


def test_verify_frobenius_pass_and_fail(capsys):
    code, out, _ = run(capsys, "verify", q("pia2"), "--check", "frobenius")
    assert code == 0
    code, out, _ = run(capsys, "verify", q("n3"), "--check", "index")
    assert code == 1 and "VERIFY index FAIL" in out


@pytest.mark.parametrize("argv", [
    ["validate", "/nonexistent.quiv"],
    ["--field-char", "4", "validate", "X"],
    ["frobnicate"],
    ["hom", "A2", "--category", "harp", "X1", "X9"],
])
def test_input_errors_exit_2(capsys, argv, tmp_path):
    argv = [q("a2") if a == "A2" else a for a in argv]
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_bad_files_exit_2(capsys, tmp_path):
    for text in ("vertex 1\nnonsense\n", "vertex 1\narrow a : 1 -> 1\n"):
        f = tmp_path / "bad.quiv"
        f.write_text(text)
        code, _, err = run(capsys, "validate", str(f))
        assert code == 2 and err.startswith("error:")
    code, _, err = run(capsys, "indecs", q("kronecker"), "--category", "harp")
    assert code == 2 and "band" in err


def test_field_char_changes_nothing_combinatorial(capsys):
    _, a, _ = run(capsys, "indecs", q("n3"), "--category", "harp")
    _, b, _ = run(capsys, "--field-char", "101", "indecs", q("n3"), "--category", "harp")
    assert a == b


@pytest.mark.parametrize("case", CASES)
def test_reproduce_matches_golden_and_is_deterministic(capsys, case):
    code, out1, _ = run(capsys, "reproduce-paper", "--case", case)
    code2, out2, _ = run(capsys, "reproduce-paper", "--case", case)
    assert code == code2 == 0
    assert out1 == out2
    assert f"GOLDEN {case} MATCH" in out1 and f"RESULT {case} PASS" in out1
