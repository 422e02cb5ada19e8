from __future__ import annotations

import numpy as np
import pytest

from gentlecat.algebra import enumerate_indec_modules, projective
from gentlecat.extricat import E_PERP, ModuleAmbient, build_category, verify_0_auslander
from gentlecat.frobexact import (
    check_cluster_tilting, cluster_tilting_data, coindex, coindex_additivity_report, end_quiver,
    find_cluster_tilting, frobenius_report, index, index_additivity_report, presentation_isomorphism,
    psi, relative_handle, relative_membership, verify_frobenius_pipeline,
)
from conftest import algebra
from oracles import count_paths


@pytest.fixture(scope="module")
def setup():
    lam = algebra("pia2")
    mods = enumerate_indec_modules(lam)
    by_dims = {M.dims: M for M in mods if M.total == 1}
    P1, P2 = projective(lam, 0), projective(lam, 1)
    S1, S2 = by_dims[(1, 0)], by_dims[(0, 1)]
    T = [P1, P2, S1]
    return lam, mods, T, P1, P2, S1, S2


def test_four_indecomposables(setup):
    lam, mods, *_ = setup
    assert len(mods) == 4


def test_cluster_tilting_and_negative_controls(setup):
    lam, mods, T, P1, P2, S1, S2 = setup
    assert check_cluster_tilting(lam, T)[0]
    assert check_cluster_tilting(lam, [P1, P2, S2])[0]
    assert not check_cluster_tilting(lam, [P1, P2])[0]
    assert not check_cluster_tilting(lam, mods)[0]


def test_n3_has_no_cluster_tilting_module():
    assert find_cluster_tilting(algebra("n3")) is None
    ok, lines = frobenius_report(algebra("n3"))
    assert not ok and "FAIL" in lines[0]


def test_end_quiver_is_e62(setup):
    lam, mods, T, *_ = setup
    eq = end_quiver(ModuleAmbient(lam), T, ["1", "2", "a"])
    B = algebra("e62")
    assert presentation_isomorphism(eq.pres, B.pres) is not None
    assert count_paths(eq.pres) == 7 == B.dim


def test_presentation_isomorphism_rejects():
    assert presentation_isomorphism(algebra("e62").pres, algebra("n3").pres) is None


def test_coindex_values(setup):
    lam, mods, T, P1, P2, S1, S2 = setup
    amb = ModuleAmbient(lam)
    assert coindex(amb, S2, T).tolist() == [1, 0, -1]
    assert index(amb, S2, T).tolist() == [0, 1, -1]
    for M in T:
        e = [int(M is X) for X in T]
        assert coindex(amb, M, T).tolist() == e == index(amb, M, T).tolist()
    for X in mods:
        assert np.array_equal(coindex(amb, X, T, pad=P2), coindex(amb, X, T))
        assert np.array_equal(index(amb, X, T, pad=S1), index(amb, X, T))


def test_additivity_matches_relative_structure(setup):
    lam, mods, T, P1, P2, S1, S2 = setup
    ct = cluster_tilting_data(lam, T, algebra("e62"))
    co = {(Z.dims, X.dims): rest for Z, X, *rest in coindex_additivity_report(ct)}
    # S1 -> P2 -> S2 is outside E^T and breaks coindex additivity; S2 -> P1 -> S1 is inside
    assert co[((0, 1), (1, 0))] == [False, False, False]
    assert co[((1, 0), (0, 1))] == [True, True, True]
    for Z, X, in_sub, lift, add in coindex_additivity_report(ct) + index_additivity_report(ct):
        assert in_sub == lift
        assert add or not in_sub


def test_relative_membership_split_class_is_in(setup):
    lam, mods, T, P1, P2, S1, S2 = setup
    amb = ModuleAmbient(lam)
    E = amb.ext(S1, S2)
    assert relative_membership(amb, S1, S2, E.reps[0] * 0, T, "injective")


def test_psi_images(setup):
    lam, mods, T, P1, P2, S1, S2 = setup
    ct = cluster_tilting_data(lam, T, algebra("e62"))
    assert psi(ct, S2).obj.dump() == "[1 | p | a]"
    assert psi(ct, S1).obj.dump() == "[a | 0 | 0]"
    E = build_category(algebra("e62"), E_PERP, ["1", "2"])
    assert len(E) == 4
    assert {E.dump(i) for i in range(4)} == {"[1 | p | a]", "[1 | 0 | 0]", "[2 | 0 | 0]", "[a | 0 | 0]"}
    assert E.dump(sorted(E.proj - E.inj)[0]) == "[1 | p | a]"


def test_pipeline_and_wrong_idempotent(setup):
    lam, mods, T, *_ = setup
    ct = cluster_tilting_data(lam, T, algebra("e62"))
    ok, lines = verify_frobenius_pipeline(ct)
    assert ok, lines
    bad, lines = verify_frobenius_pipeline(ct, killed=["1"])
    assert not bad and any("kernel-equals-J FAIL" in l for l in lines)


def test_relative_handles_are_0_auslander(setup):
    lam, mods, T, *_ = setup
    for side in ("injective", "projective"):
        assert verify_0_auslander(relative_handle(lam, T, side))[0]
