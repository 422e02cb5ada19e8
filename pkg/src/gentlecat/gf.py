"""Dense linear algebra over a prime field GF(p).

Matrices are numpy int64 arrays with entries in [0, p).  Products of two
residues stay below 2**31 for the primes used here, so a single matmul
followed by a reduction is exact as long as inner dimensions stay small.
"""
from __future__ import annotations

import numpy as np

DEFAULT_CHAR = 32003


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def mat(rows, p: int, ncols: int | None = None) -> np.ndarray:
    a = np.array(rows, dtype=np.int64)
    if a.size == 0:
        return np.zeros((len(rows), ncols or 0), dtype=np.int64)
    return a % p


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[-1] == 0 or b.shape[0] == 0:
        return np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    return (a @ b) % p


def inv_scalar(x: int, p: int) -> int:
    x %= p
    if x == 0:
        raise ZeroDivisionError("zero has no inverse")
    return pow(int(x), p - 2, p)


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = (m[r] * inv_scalar(m[r, c], p)) % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning {x : a @ x = 0}."""
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, piv = rref(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for j, pc in enumerate(piv):
            out[i, pc] = (-r[j, f]) % p
    return out


def row_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Independent rows spanning the row space of a (in rref)."""
    if a.shape[0] == 0:
        return np.zeros((0, a.shape[1]), dtype=np.int64)
    return rref(a, p)[0]


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One x with a @ x = b (b a vector or matrix), or None."""
    vec = b.ndim == 1
    bb = b.reshape(-1, 1) if vec else b
    n = a.shape[1]
    aug = np.concatenate([a % p, bb % p], axis=1)
    r, piv = rref(aug, p)
    if any(c >= n for c in piv):
        return None
    x = np.zeros((n, bb.shape[1]), dtype=np.int64)
    for j, c in enumerate(piv):
        x[c] = r[j, n:]
    return x[:, 0] if vec else x


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    x = solve(a, np.eye(n, dtype=np.int64), p)
    if x is None or a.shape != (n, n):
        raise ValueError("matrix is singular")
    return x


def in_span(rows: np.ndarray, v: np.ndarray, p: int) -> bool:
    if rows.shape[0] == 0:
        return not np.any(v % p)
    return rank(np.vstack([rows, v]), p) == rank(rows, p)


def intersect(u: np.ndarray, w: np.ndarray, p: int) -> np.ndarray:
    """Row basis of span(u) & span(w)."""
    n = u.shape[1]
    if u.shape[0] == 0 or w.shape[0] == 0:
        return np.zeros((0, n), dtype=np.int64)
    # x u = y w  <=>  [u; -w]^T [x; y] = 0
    k = nullspace(np.concatenate([u, (-w) % p], axis=0).T, p)
    return row_basis(mul(k[:, : u.shape[0]], u, p), p)


class Quotient:
    """Coordinates on V / U for a subspace U of k^n.

    ``reps`` rows are representatives of a basis of the quotient; ``coords``
    projects any vector of V to quotient coordinates.
    """

    def __init__(self, n: int, sub: np.ndarray, p: int):
        self.p = p
        self.n = n
        if n == 0:
            self.sub = self.reps = self._proj = np.zeros((0, 0), dtype=np.int64)
            return
        sub = row_basis(sub.reshape(-1, n), p)
        self.sub = sub
        _, piv = rref(sub, p) if sub.shape[0] else (None, [])
        pset = set(piv)
        free = [c for c in range(n) if c not in pset]
        self.reps = np.zeros((len(free), n), dtype=np.int64)
        for i, c in enumerate(free):
            self.reps[i, c] = 1
        basis = np.concatenate([sub, self.reps], axis=0)
        self._proj = inverse(basis.T, p)[sub.shape[0]:]

    @property
    def dim(self) -> int:
        return self.reps.shape[0]

    def coords(self, v: np.ndarray) -> np.ndarray:
        if self.n == 0:
            return np.zeros(v.shape[:-1] + (0,), dtype=np.int64)
        if v.ndim == 1:
            return mul(self._proj, v.reshape(-1, 1), self.p)[:, 0]
        return mul(v, self._proj.T, self.p)

    def lift(self, c: np.ndarray) -> np.ndarray:
        return mul(np.asarray(c, dtype=np.int64).reshape(1, -1), self.reps, self.p)[0]


class Subquotient:
    """Coordinates on span(top) / span(sub), sub contained in span(top).

    ``coords`` only makes sense for vectors lying in span(top).
    """

    def __init__(self, top: np.ndarray, sub: np.ndarray, p: int):
        n = top.shape[1]
        self.p = p
        self.n = n
        if top.shape[0]:
            self.top, self.pivots = rref(top, p)
        else:
            self.top, self.pivots = np.zeros((0, n), dtype=np.int64), []
        sub = sub.reshape(-1, n) if sub.size else np.zeros((0, n), dtype=np.int64)
        subc = sub[:, self.pivots] if sub.shape[0] else np.zeros((0, len(self.pivots)), dtype=np.int64)
        self.q = Quotient(len(self.pivots), subc, p)
        self.reps = mul(self.q.reps, self.top, p)
        self.sub = mul(self.q.sub, self.top, p)

    @property
    def dim(self) -> int:
        return self.q.dim

    def coords(self, v: np.ndarray) -> np.ndarray:
        if v.ndim == 1:
            return self.q.coords(v[self.pivots])
        return self.q.coords(v[:, self.pivots])

    def lift(self, c) -> np.ndarray:
        return mul(np.asarray(c, dtype=np.int64).reshape(1, -1), self.reps, self.p)[0]

    def contains(self, v: np.ndarray) -> bool:
        """Whether v lies in span(top)."""
        return in_span(self.top, v, self.p)
