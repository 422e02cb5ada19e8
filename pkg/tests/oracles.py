"""Brute-force oracles, written without touching the package's linear algebra.

Everything here uses plain Python integers and exhaustive enumeration so the
results can be frozen into tests and compared with the package.
"""
from __future__ import annotations

import itertools


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    m = [[x % p for x in r] for r in rows]
    rank, ncols = 0, (len(m[0]) if m else 0)
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def hom_dim(M, N) -> int:
    """dim Hom(M, N) from the commutation equations N_a F_s = F_t M_a, one unknown per entry."""
    A = M.alg
    p = A.p
    offs, n = {}, 0
    for v in range(A.nv):
        offs[v] = n
        n += N.dims[v] * M.dims[v]
    if n == 0:
        return 0
    rows = []
    for a in A.pres.arrows:
        s, t = A.vidx[a.source], A.vidx[a.target]
        Ma, Na = M.mats[a.name].tolist(), N.mats[a.name].tolist()
        # entry (i, j) of N_a F_s - F_t M_a, with F_v[r][c] at offs[v] + r * M.dims[v] + c
        for i in range(N.dims[t]):
            for j in range(M.dims[s]):
                row = [0] * n
                for k in range(N.dims[s]):
                    row[offs[s] + k * M.dims[s] + j] += Na[i][k]
                for k in range(M.dims[t]):
                    row[offs[t] + i * M.dims[t] + k] -= Ma[k][j]
                rows.append(row)
    return n - (rank_mod_p(rows, p) if rows else 0)


def count_paths(pres) -> int:
    """Paths of the bound quiver, by extending words until every extension hits a relation."""
    total = len(pres.vertices)
    frontier = [(a.name,) for a in pres.arrows]
    out = {}
    for a in pres.arrows:
        out.setdefault(a.source, []).append(a)
    tgt = {a.name: a.target for a in pres.arrows}
    while frontier:
        total += len(frontier)
        nxt = []
        for w in frontier:
            for b in out.get(tgt[w[-1]], []):
                if (w[-1], b.name) not in pres.relations:
                    nxt.append(w + (b.name,))
        if len(nxt) > 10_000:
            raise RuntimeError("infinite")
        frontier = nxt
    return total


def count_strings(pres, limit: int = 12) -> int:
    """Strings up to inversion, by walking direct and inverse letters with the gentle rules."""
    arrows = {a.name: a for a in pres.arrows}
    rels = set(pres.relations)

    def ends(x):
        a = arrows[x[0]]
        return (a.source, a.target) if x[1] > 0 else (a.target, a.source)

    def ok(x, y):
        if ends(x)[1] != ends(y)[0]:
            return False
        if x[0] == y[0] and x[1] != y[1]:
            return False
        if x[1] > 0 and y[1] > 0 and (x[0], y[0]) in rels:
            return False
        if x[1] < 0 and y[1] < 0 and (y[0], x[0]) in rels:
            return False
        return True

    letters = [(a, s) for a in arrows for s in (1, -1)]
    seen = set()
    frontier = [(x,) for x in letters]
    while frontier:
        nxt = []
        for w in frontier:
            inv = tuple((a, -s) for a, s in reversed(w))
            seen.add(min(w, inv))
            if len(w) < limit:
                nxt += [w + (y,) for y in letters if ok(w[-1], y)]
        frontier = nxt
    return len(pres.vertices) + len(seen)


def silting_subsets(n: int, rigid, size: int) -> list[tuple[int, ...]]:
    """All size-element subsets with every ordered pair rigid (exhaustive)."""
    return [S for S in itertools.combinations(range(n), size)
            if all(rigid(a, b) for a in S for b in S)]
