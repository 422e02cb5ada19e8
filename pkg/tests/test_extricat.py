from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from gentlecat.algebra import PathAlgebra, enumerate_indec_modules
from gentlecat.extricat import (
    Decomposer, IntersectionIdeal, ModuleAmbient, ar_quiver, approximation_property, build_category,
    enumerate_silting, graph_isomorphic, ideal_J, ideal_is_zero, ideal_through, in_add, is_silting,
    left_approximation, module_category, mutate, mutation_graph, quotient, residue_functional,
    right_approximation, tilting_certificate, to_dot, verify_0_auslander, verify_six_term,
)
from gentlecat.quiver import random_gentle
from gentlecat.twoterm import HarpAmbient, stalk
from conftest import EXAMPLE_ALGEBRAS, algebra
from oracles import silting_subsets


def harp(name):
    return build_category(algebra(name))


@pytest.mark.parametrize("name", EXAMPLE_ALGEBRAS)
def test_J_is_zero_on_harp(name):
    h = harp(name)
    assert ideal_is_zero(h, ideal_J(h))
    assert len(quotient(h, ideal_J(h)).objs) == len(h.objs)


def test_harp_a2_marks():
    h = harp("a2")
    assert [h.dump(i) for i in sorted(h.proj)] == ["[0 | 0 | 2]", "[0 | 0 | 1]"]
    assert [h.dump(i) for i in sorted(h.inj)] == ["[1 | 0 | 0]", "[2 | 0 | 0]"]


def test_ar_quiver_a2_is_path():
    h = harp("a2")
    arrows = ar_quiver(h)
    assert sum(arrows.values()) == 4
    assert graph_isomorphic(5, arrows, 5, {(k, k + 1): 1 for k in range(4)}) is not None
    dot = to_dot(h, arrows)
    assert dot.count("->") == 4 and dot.startswith("digraph {")


def test_ar_quiver_n3():
    h = harp("n3")
    arrows = ar_quiver(h)
    assert sum(arrows.values()) == 12
    # each projective has one arrow in and one out; every vertex has in/out degree 1 or 2
    assert all(1 <= sum(1 for (i, j) in arrows if j == v) <= 2 for v in range(9))


def test_graph_isomorphism_rejects():
    assert graph_isomorphic(3, {(0, 1): 1, (1, 2): 1}, 3, {(0, 1): 1, (0, 2): 1}) is None
    assert graph_isomorphic(2, {}, 3, {}) is None


def test_n3_negative_control_fails_at_documented_sequence():
    h = harp("n3")
    bad = quotient(h, IntersectionIdeal([ideal_through(h, h.inj), ideal_through(h, h.proj)]))
    lines = verify_six_term(bad)
    assert lines[-1] == "CHECK six-term FAIL 258/270"
    assert any("[0 | 0 | 1] -> ? -> [1 | c | 2] test [3 | a | 1] cov" in l for l in lines)


@pytest.mark.parametrize("name", ["a2", "n3", "a3rel"])
def test_six_term_exact_in_quotient(name):
    h = harp(name)
    assert verify_six_term(quotient(h, ideal_J(h)))[-1].split()[2] == "PASS"


@pytest.mark.parametrize("name", EXAMPLE_ALGEBRAS)
def test_harp_is_0_auslander(name):
    ok, lines = verify_0_auslander(harp(name))
    assert ok, [l for l in lines if "FAIL" in l]


def test_module_category_of_preprojective_is_not_0_auslander():
    # Frobenius, not hereditary: the checker must notice
    h = module_category(algebra("pia2"))
    assert h.proj == h.inj and len(h.proj) == 2
    assert not verify_0_auslander(h)[0]


@pytest.mark.parametrize("name,count", [("a2", 5), ("n3", 14), ("a3rel", 12), ("e62", 16)])
def test_silting_counts_against_exhaustive_search(name, count):
    h = harp(name)
    S = enumerate_silting(h)
    rigid = lambda a, b: h.ext(h.objs[a], h.objs[b]).dim == 0
    assert S == silting_subsets(len(h.objs), rigid, len(h.proj))
    assert len(S) == count
    assert all(is_silting(h, s) and tilting_certificate(h, s) for s in S)


def test_a2_mutation_graph_is_5_cycle():
    g = mutation_graph(harp("a2"))
    assert len(g) == 5 and all(len(v) == 2 for v in g.values())


def test_mutation_is_involutive():
    h = harp("n3")
    for S in enumerate_silting(h):
        for x in S:
            T, side = mutate(h, S, x)
            y = next(iter(set(T) - set(S)))
            back, side2 = mutate(h, T, y)
            assert back == tuple(sorted(S)) and {side, side2} == {"left", "right"}


def test_residue_guard_small_field():
    A = PathAlgebra(algebra("n3").pres, 3)
    amb = HarpAmbient(A)
    S, _, _ = amb.direct_sum([stalk(A, 0), stalk(A, 0)])
    H = amb.hom(S, S)
    with pytest.raises(ValueError):
        residue_functional(H, lambda g, f: amb.compose(g, f, S, S, S), 3)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_decomposition_recovers_multiplicities(seed):
    A = PathAlgebra(random_gentle(random.Random(seed), 4))
    h = build_category(A)
    rng = random.Random(seed)
    picks = [rng.randrange(len(h.objs)) for _ in range(rng.randint(1, 3))]
    S, _, _ = h.amb.direct_sum([h.objs[i] for i in picks])
    mult = Decomposer(h.amb, h.objs).multiplicities(S)
    assert mult == [picks.count(i) for i in range(len(h.objs))]


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_approximations_have_the_factorization_property(seed):
    A = PathAlgebra(random_gentle(random.Random(seed), 4))
    h = build_category(A)
    rng = random.Random(seed)
    X = rng.choice(h.objs)
    targets = rng.sample(h.objs, min(3, len(h.objs)))
    left = left_approximation(h.amb, X, targets)
    right = right_approximation(h.amb, X, targets)
    assert approximation_property(h.amb, X, left, targets, left=True)
    assert approximation_property(h.amb, X, right, targets, left=False)
    assert in_add(h.amb, left.obj, targets) and in_add(h.amb, right.obj, targets)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000))
def test_module_decomposition(seed):
    A = PathAlgebra(random_gentle(random.Random(seed), 4))
    amb = ModuleAmbient(A)
    mods = enumerate_indec_modules(A)
    rng = random.Random(seed)
    picks = [rng.randrange(len(mods)) for _ in range(rng.randint(1, 3))]
    S, _, _ = amb.direct_sum([mods[i] for i in picks])
    assert Decomposer(amb, mods).multiplicities(S) == [picks.count(i) for i in range(len(mods))]
