from __future__ import annotations

import numpy as np
from hypothesis import given, strategies as st

from gentlecat import gf
from oracles import rank_mod_p

P = 32003

matrices = st.integers(0, 5).flatmap(
    lambda r: st.integers(0, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, P - 1), min_size=c, max_size=c), min_size=r, max_size=r)
        .map(lambda rows, c=c: np.array(rows, dtype=np.int64).reshape(len(rows), c))))

small = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=n, max_size=n)
    .map(lambda rows: np.array(rows, dtype=np.int64) % P))


def test_is_prime():
    assert gf.is_prime(32003) and gf.is_prime(2) and not gf.is_prime(1) and not gf.is_prime(32001)


@given(matrices)
def test_rank_matches_oracle(a):
    assert gf.rank(a, P) == (rank_mod_p(a.tolist(), P) if a.size else 0)


@given(matrices)
def test_rank_nullity(a):
    if a.shape[1] == 0:
        return
    k = gf.nullspace(a, P)
    assert gf.rank(a, P) + k.shape[0] == a.shape[1]
    if k.size and a.shape[0]:
        assert not np.any(gf.mul(a, k.T, P))


@given(matrices, st.data())
def test_solve_consistent_systems(a, data):
    if a.size == 0:
        return
    x = np.array(data.draw(st.lists(st.integers(0, P - 1), min_size=a.shape[1], max_size=a.shape[1])))
    b = gf.mul(a, x.reshape(-1, 1), P)[:, 0]
    y = gf.solve(a, b, P)
    assert y is not None and np.array_equal(gf.mul(a, y.reshape(-1, 1), P)[:, 0], b)


def test_solve_inconsistent():
    a = np.array([[1, 0], [0, 0]])
    assert gf.solve(a, np.array([0, 1]), P) is None


@given(small)
def test_inverse_when_invertible(a):
    if gf.rank(a, P) < a.shape[0]:
        return
    assert np.array_equal(gf.mul(a, gf.inverse(a, P), P), np.eye(a.shape[0], dtype=np.int64))


@given(matrices)
def test_rref_idempotent(a):
    if a.size == 0:
        return
    r, piv = gf.rref(a, P)
    r2, piv2 = gf.rref(r, P)
    assert piv == piv2 and np.array_equal(r, r2)


def test_intersect_and_span():
    u = np.array([[1, 0, 0], [0, 1, 0]])
    w = np.array([[0, 1, 0], [0, 0, 1]])
    i = gf.intersect(u, w, P)
    assert i.shape[0] == 1 and gf.in_span(i, np.array([0, 5, 0]), P)
    assert not gf.in_span(u, np.array([0, 0, 1]), P)


def test_quotient_coordinates():
    q = gf.Quotient(3, np.array([[1, 1, 0]]), P)
    assert q.dim == 2
    assert not np.any(q.coords(np.array([2, 2, 0])))
    v = np.array([3, 1, 4])
    assert np.array_equal(q.coords(q.lift(q.coords(v))), q.coords(v))
    assert gf.Quotient(0, np.zeros((0, 0), dtype=np.int64), P).dim == 0
