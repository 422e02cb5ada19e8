from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from gentlecat.quiver import (
    BandError, InfiniteAlgebraError, NotGentleError, QuiverSyntaxError, blossom, enumerate_path_basis,
    enumerate_strings, format_quiver, kill_vertices, opposite, parse_quiver, random_gentle, validate_gentle,
)
from conftest import algebra
from oracles import count_paths, count_strings


def test_parse_a2():
    p = parse_quiver("vertex 1\nvertex 2\narrow a : 1 -> 2\n", "a2")
    assert p.vertices == ("1", "2") and p.arrows[0].name == "a" and not p.relations


def test_comments_and_flags():
    p = parse_quiver("# c\nvertex 1 frozen\nvertex x blossom  # trailing\narrow a : 1 -> x\n")
    assert p.frozen_vertices == {"1"} and p.blossom_vertices == {"x"}


@pytest.mark.parametrize("text,line", [
    ("vertex 1\nbogus\n", 2),
    ("vertex 1\narrow a : 1 -> 9\n", 2),
    ("vertex 1\nvertex 1\n", 2),
    ("vertex 1\narrow a 1 -> 1\n", 2),
    ("vertex 1\nvertex 2\narrow a : 1 -> 2\nrelation a z\n", 4),
])
def test_syntax_errors_carry_line(text, line):
    with pytest.raises(QuiverSyntaxError) as e:
        parse_quiver(text)
    assert e.value.line == line


def test_not_gentle_reports_axiom():
    text = "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a : 1 -> 2\narrow b : 2 -> 3\narrow c : 2 -> 4\n"
    report = validate_gentle(parse_quiver(text))
    assert any("right non-relations" in r for r in report)
    with pytest.raises(NotGentleError):
        blossom(parse_quiver(text))


def test_three_out_arrows():
    text = "vertex 1\nvertex 2\narrow a : 1 -> 2\narrow b : 1 -> 2\narrow c : 1 -> 2\n"
    assert any("out-degree" in r for r in validate_gentle(parse_quiver(text)))


def test_band_detected_on_kronecker():
    with pytest.raises(BandError):
        enumerate_strings(algebra("kronecker").pres)


def test_infinite_algebra_detected():
    with pytest.raises(InfiniteAlgebraError):
        enumerate_path_basis(parse_quiver("vertex 1\narrow a : 1 -> 1\n"))


@pytest.mark.parametrize("name,paths,strings", [
    ("a2", 3, 3), ("n3", 6, 6), ("a3rel", 5, 5), ("e62", 7, 7), ("pia2", 4, 4), ("a3", 6, 6),
])
def test_counts_against_oracle(name, paths, strings):
    # frozen from the brute-force oracles
    pres = algebra(name).pres
    assert len(enumerate_path_basis(pres)) == paths == count_paths(pres)
    assert len(enumerate_strings(pres)) == strings == count_strings(pres)


def test_blossom_a3rel_shape():
    b = blossom(algebra("a3rel").pres)
    q = b.quiver
    for v in ("1", "2", "3"):
        assert len(q.in_arrows(v)) == 2 and len(q.out_arrows(v)) == 2
    assert not validate_gentle(b)
    assert len(b.blossom_vertices) == len(b.vertices) - 3


def test_kill_vertices():
    p = kill_vertices(algebra("e62").pres, {"1", "2"})
    assert p.vertices == ("a",) and not p.arrows


seeds = st.integers(0, 10_000)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_random_presentation_roundtrip(seed):
    p = random_gentle(random.Random(seed), 5)
    q = parse_quiver(format_quiver(p))
    assert q == p
    assert not validate_gentle(p)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_opposite_is_involution(seed):
    p = random_gentle(random.Random(seed), 5)
    assert opposite(opposite(p)) == p
    assert len(enumerate_path_basis(opposite(p))) == len(enumerate_path_basis(p))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_blossom_is_gentle_and_two_regular(seed):
    p = random_gentle(random.Random(seed), 4)
    b = blossom(p)
    assert not validate_gentle(b)
    for v in p.vertices:
        assert len(b.quiver.in_arrows(v)) == 2 and len(b.quiver.out_arrows(v)) == 2
    # original composites keep their zero/non-zero status
    names = {a.name for a in p.arrows}
    assert {r for r in b.relations if set(r) <= names} == set(p.relations)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_string_and_path_counts_match_oracle(seed):
    p = random_gentle(random.Random(seed), 4)
    assert len(enumerate_path_basis(p)) == count_paths(p)
    assert len(enumerate_strings(p)) == count_strings(p)
