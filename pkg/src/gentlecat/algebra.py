"""Path algebras of gentle quivers, right modules, Hom and Ext.

Right-module convention: a module is a representation of the quiver with
one matrix per arrow, acting on column vectors.  An element m at the source
of arrow ``a`` is sent to ``mats[a] @ m``; walking ``a`` then ``b`` acts by
``mats[b] @ mats[a]``.  This is the only place that order is decided.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import gf
from .quiver import (
    GentlePresentation, Path, StringWord, enumerate_path_basis,
    enumerate_strings, letter_ends, validate_gentle,
)

RIGHT_ACTION = "column"  # arrow a acts as m -> mats[a] @ m


class PathAlgebra:
    """kQ/(R) with basis the paths avoiding relations."""

    def __init__(self, pres: GentlePresentation, p: int = gf.DEFAULT_CHAR):
        if not gf.is_prime(p):
            raise ValueError(f"field characteristic {p} is not prime")
        self.pres = pres
        self.p = p
        self.basis: list[Path] = enumerate_path_basis(pres)
        self.index = {b: i for i, b in enumerate(self.basis)}
        self.vertices = list(pres.vertices)
        self.vidx = {v: i for i, v in enumerate(self.vertices)}
        self.nv = len(self.vertices)
        n = len(self.basis)
        self.prod = -np.ones((n, n), dtype=np.int64)
        for i, x in enumerate(self.basis):
            for j, y in enumerate(self.basis):
                z = self._concat(x, y)
                if z is not None:
                    self.prod[i, j] = self.index[z]
        self.struct = np.zeros((n, n, n), dtype=np.int64)
        ii, jj = np.nonzero(self.prod >= 0)
        self.struct[ii, jj, self.prod[ii, jj]] = 1
        # paths from vertex w to vertex v, as basis indices
        self.between: dict[tuple[int, int], list[int]] = {}
        for i, b in enumerate(self.basis):
            key = (self.vidx[b.source], self.vidx[b.target])
            self.between.setdefault(key, []).append(i)
        self.trivial = [self.index[Path(v, v)] for v in self.vertices]

    def _concat(self, x: Path, y: Path) -> Path | None:
        if x.target != y.source:
            return None
        if x.arrows and y.arrows and self.pres.is_relation(x.arrows[-1], y.arrows[0]):
            return None
        return Path(x.source, y.target, x.arrows + y.arrows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def paths(self, w: int, v: int) -> list[int]:
        return self.between.get((w, v), [])

    def vertex(self, v) -> int:
        if isinstance(v, (int, np.integer)):
            if not 0 <= v < self.nv:
                raise ValueError(f"unknown vertex index {v}")
            return int(v)
        if v not in self.vidx:
            raise ValueError(f"unknown vertex {v}")
        return self.vidx[v]

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Product x*y (traversal order) of two coefficient vectors."""
        return np.einsum("i,j,ijk->k", x, y, self.struct) % self.p

    def matmul(self, g: np.ndarray, f: np.ndarray) -> np.ndarray:
        """Compose algebra-element matrices: (g o f)[u,s] = sum_t g[u,t] f[t,s]."""
        nu, nt, d = g.shape
        nt2, ns, _ = f.shape
        assert nt == nt2
        if nu == 0 or ns == 0 or nt == 0:
            return np.zeros((nu, ns, d), dtype=np.int64)
        tmp = np.einsum("uti,tsj->usij", g, f) % self.p
        out = tmp.reshape(nu * ns, d * d) @ self.struct.reshape(d * d, d)
        return (out % self.p).reshape(nu, ns, d)

    def hom_mask(self, src: tuple[int, ...], tgt: tuple[int, ...]) -> np.ndarray:
        """Boolean mask of allowed coefficients for maps (+)P_src -> (+)P_tgt."""
        m = np.zeros((len(tgt), len(src), self.dim), dtype=bool)
        for t, w in enumerate(tgt):
            for s, v in enumerate(src):
                m[t, s, self.paths(w, v)] = True
        return m

    def path_name(self, i: int) -> str:
        return str(self.basis[i])

    def element_str(self, x: np.ndarray) -> str:
        terms = []
        for i in np.nonzero(x % self.p)[0]:
            c = int(x[i])
            coef = "" if c == 1 else ("-" if c == self.p - 1 else f"{c}*")
            terms.append(f"{coef}{self.path_name(i)}")
        return "+".join(terms) if terms else "0"


# ---------------------------------------------------------------- modules

@dataclass(frozen=True, eq=False)
class Module:
    alg: PathAlgebra
    dims: tuple[int, ...]
    mats: dict

    def __post_init__(self):
        A = self.alg
        for a in A.pres.arrows:
            m = self.mats[a.name]
            expect = (self.dims[A.vidx[a.target]], self.dims[A.vidx[a.source]])
            if m.shape != expect:
                raise ValueError(f"arrow {a.name}: matrix shape {m.shape} != {expect}")
        for a, b in A.pres.relations:
            if np.any(gf.mul(self.mats[b], self.mats[a], A.p)):
                raise ValueError(f"relation {a} {b} does not act as zero")

    @property
    def total(self) -> int:
        return sum(self.dims)

    @cached_property
    def key(self) -> bytes:
        parts = [np.array(self.dims, dtype=np.int64).tobytes()]
        parts += [self.mats[a.name].tobytes() for a in self.alg.pres.arrows]
        return b"|".join(parts)

    def sort_key(self) -> tuple:
        entries = tuple(int(x) for a in self.alg.pres.arrows for x in self.mats[a.name].ravel())
        return (self.total, self.dims, entries)

    def act(self, vec: np.ndarray, path_idx: int) -> np.ndarray:
        """Right action of a basis path on a vector at the path's source."""
        out = vec
        for a in self.alg.basis[path_idx].arrows:
            out = gf.mul(self.mats[a], out, self.alg.p)
        return out

    def act_element(self, vec: np.ndarray, x: np.ndarray, w: int, v: int) -> np.ndarray:
        """vec * x for vec at vertex w and x in e_w A e_v."""
        out = np.zeros(self.dims[v], dtype=np.int64)
        for i in self.alg.paths(w, v):
            if x[i] % self.alg.p:
                out = (out + x[i] * self.act(vec, i)) % self.alg.p
        return out

    def is_zero(self) -> bool:
        return self.total == 0

    def dump(self) -> str:
        A = self.alg
        lines = ["dims " + " ".join(f"{v}:{d}" for v, d in zip(A.vertices, self.dims))]
        for a in A.pres.arrows:
            lines.append(f"{a.name}: {self.mats[a.name].tolist()}")
        return "\n".join(lines)


def offsets(dims) -> list[int]:
    out, acc = [], 0
    for d in dims:
        out.append(acc)
        acc += d
    return out


def module_from_blocks(alg: PathAlgebra, dims, mats) -> Module:
    return Module(alg, tuple(int(d) for d in dims), {k: np.asarray(v, dtype=np.int64) % alg.p
                                                     for k, v in mats.items()})


def zero_module(alg: PathAlgebra) -> Module:
    return module_from_blocks(alg, [0] * alg.nv, {
        a.name: np.zeros((0, 0), dtype=np.int64) for a in alg.pres.arrows})


def direct_sum(alg: PathAlgebra, mods: list[Module]) -> Module:
    dims = [sum(m.dims[v] for m in mods) for v in range(alg.nv)]
    mats = {}
    for a in alg.pres.arrows:
        s, t = alg.vidx[a.source], alg.vidx[a.target]
        big = np.zeros((dims[t], dims[s]), dtype=np.int64)
        r = c = 0
        for m in mods:
            big[r:r + m.dims[t], c:c + m.dims[s]] = m.mats[a.name]
            r += m.dims[t]
            c += m.dims[s]
        mats[a.name] = big
    return module_from_blocks(alg, dims, mats)


def projective_sum(alg: PathAlgebra, verts) -> Module:
    """(+) e_v A over the listed vertices; basis at j is (summand, path v->j)."""
    verts = [alg.vertex(v) for v in verts]
    dims = [0] * alg.nv
    pos: dict[tuple[int, int], int] = {}
    for s, v in enumerate(verts):
        for j in range(alg.nv):
            for i in alg.paths(v, j):
                pos[(s, i)] = dims[j]
                dims[j] += 1
    mats = {a.name: np.zeros((dims[alg.vidx[a.target]], dims[alg.vidx[a.source]]), dtype=np.int64)
            for a in alg.pres.arrows}
    arrow_idx = {a.name: alg.index[Path(a.source, a.target, (a.name,))] for a in alg.pres.arrows}
    for (s, i), r in pos.items():
        for a in alg.pres.arrows:
            if alg.basis[i].target != a.source:
                continue
            k = alg.prod[i, arrow_idx[a.name]]
            if k >= 0:
                mats[a.name][pos[(s, k)], r] = 1
    return module_from_blocks(alg, dims, mats)


def projective(alg: PathAlgebra, v) -> Module:
    return projective_sum(alg, [v])


def proj_position(alg: PathAlgebra, verts) -> dict[tuple[int, int], tuple[int, int]]:
    """(summand, path) -> (vertex, row) in projective_sum(verts)."""
    verts = [alg.vertex(v) for v in verts]
    dims = [0] * alg.nv
    pos = {}
    for s, v in enumerate(verts):
        for j in range(alg.nv):
            for i in alg.paths(v, j):
                pos[(s, i)] = (j, dims[j])
                dims[j] += 1
    return pos


def string_module(alg: PathAlgebra, w: StringWord) -> Module:
    """Basis vector per position of the walk; letters act along the walk."""
    pres = alg.pres
    verts = [w.start]
    for x in w.letters:
        verts.append(letter_ends(pres, x)[1])
    dims = [0] * alg.nv
    local = []
    for v in verts:
        j = alg.vidx[v]
        local.append(dims[j])
        dims[j] += 1
    mats = {a.name: np.zeros((dims[alg.vidx[a.target]], dims[alg.vidx[a.source]]), dtype=np.int64)
            for a in pres.arrows}
    for k, (a, s) in enumerate(w.letters):
        if s > 0:
            mats[a][local[k + 1], local[k]] = 1
        else:
            mats[a][local[k], local[k + 1]] = 1
    return module_from_blocks(alg, dims, mats)


# ---------------------------------------------------------------- maps

class ModuleHom:
    """Basis of Hom_A(M, N); maps are flat vectors of per-vertex blocks."""

    def __init__(self, M: Module, N: Module):
        if M.alg is not N.alg:
            raise ValueError("modules over different algebras")
        A = M.alg
        self.M, self.N = M, N
        self.blocks = []
        off = 0
        for v in range(A.nv):
            self.blocks.append((off, N.dims[v], M.dims[v]))
            off += N.dims[v] * M.dims[v]
        self.raw = off
        rows = []
        for a in A.pres.arrows:
            s, t = A.vidx[a.source], A.vidx[a.target]
            # f_t Ma - Na f_s = 0 on row-major flattened blocks
            Ma, Na = M.mats[a.name], N.mats[a.name]
            nt, ms = N.dims[t], M.dims[s]
            if nt == 0 or ms == 0:
                continue
            eq = np.zeros((nt * ms, off), dtype=np.int64)
            o_t, rt, ct = self.blocks[t]
            o_s, rs, cs = self.blocks[s]
            if ct:
                eq[:, o_t:o_t + rt * ct] += np.kron(np.eye(nt, dtype=np.int64), Ma.T)
            if rs:
                eq[:, o_s:o_s + rs * cs] -= np.kron(Na, np.eye(cs, dtype=np.int64))
            rows.append(eq % A.p)
        eqs = np.concatenate(rows, axis=0) if rows else np.zeros((0, off), dtype=np.int64)
        self.basis = gf.nullspace(eqs, A.p) if off else np.zeros((0, 0), dtype=np.int64)
        self.space = gf.Subquotient(self.basis, np.zeros((0, off), dtype=np.int64), A.p)
        self.basis = self.space.reps

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def reps(self) -> np.ndarray:
        return self.basis

    def coords(self, v: np.ndarray) -> np.ndarray:
        return self.space.coords(v)

    def blocks_of(self, vec: np.ndarray) -> list[np.ndarray]:
        return [vec[o:o + r * c].reshape(r, c) for o, r, c in self.blocks]


def module_hom(M: Module, N: Module) -> ModuleHom:
    return ModuleHom(M, N)


def flat(blocks) -> np.ndarray:
    return np.concatenate([b.ravel() for b in blocks]) if blocks else np.zeros(0, dtype=np.int64)


def compose_blocks(p: int, g: list[np.ndarray], f: list[np.ndarray]) -> list[np.ndarray]:
    return [gf.mul(gv, fv, p) for gv, fv in zip(g, f)]


def identity_blocks(M: Module) -> list[np.ndarray]:
    return [np.eye(d, dtype=np.int64) for d in M.dims]


def kernel(M: Module, N: Module, f: list[np.ndarray]) -> tuple[Module, list[np.ndarray]]:
    """Kernel submodule of f: M -> N and its inclusion."""
    A = M.alg
    inc = []
    for v in range(A.nv):
        if M.dims[v] == 0:
            inc.append(np.zeros((0, 0), dtype=np.int64))
            continue
        ns = gf.nullspace(f[v], A.p) if N.dims[v] else np.eye(M.dims[v], dtype=np.int64)
        inc.append(ns.T.copy())
    return _sub(M, inc), inc


def image_module(M: Module, inc: list[np.ndarray]) -> Module:
    return _sub(M, inc)


def _sub(M: Module, inc: list[np.ndarray]) -> Module:
    """Submodule of M spanned by the columns of inc[v] (assumed closed)."""
    A = M.alg
    dims = [b.shape[1] for b in inc]
    mats = {}
    for a in A.pres.arrows:
        s, t = A.vidx[a.source], A.vidx[a.target]
        img = gf.mul(M.mats[a.name], inc[s], A.p)
        if dims[s] == 0 or dims[t] == 0:
            if dims[t] == 0 and np.any(img):
                raise ValueError("not a submodule")
            mats[a.name] = np.zeros((dims[t], dims[s]), dtype=np.int64)
            continue
        x = gf.solve(inc[t], img, A.p)
        if x is None:
            raise ValueError("not a submodule")
        mats[a.name] = x
    return module_from_blocks(A, dims, mats)


def cokernel(M: Module, N: Module, f: list[np.ndarray]) -> tuple[Module, list[np.ndarray]]:
    """Cokernel of f: M -> N and the projection N -> coker."""
    A = M.alg
    projs, dims = [], []
    for v in range(A.nv):
        q = gf.Quotient(N.dims[v], f[v].T.copy() if M.dims[v] else np.zeros((0, N.dims[v]), dtype=np.int64), A.p)
        projs.append(q)
        dims.append(q.dim)
    mats = {}
    for a in A.pres.arrows:
        s, t = A.vidx[a.source], A.vidx[a.target]
        reps = projs[s].reps  # rows in N_s
        img = gf.mul(N.mats[a.name], reps.T, A.p) if reps.size else np.zeros((N.dims[t], 0), dtype=np.int64)
        mats[a.name] = projs[t].coords(img.T).T if dims[t] and dims[s] else np.zeros((dims[t], dims[s]), dtype=np.int64)
    C = module_from_blocks(A, dims, mats)
    pr = []
    for v in range(A.nv):
        if N.dims[v] == 0 or dims[v] == 0:
            pr.append(np.zeros((dims[v], N.dims[v]), dtype=np.int64))
        else:
            pr.append(projs[v].coords(np.eye(N.dims[v], dtype=np.int64)).T.copy())
    return C, pr


def top_generators(M: Module) -> list[tuple[int, np.ndarray]]:
    """Vectors at each vertex spanning M modulo rad M."""
    A = M.alg
    gens = []
    for v in range(A.nv):
        if M.dims[v] == 0:
            continue
        rad = [gf.mul(M.mats[a.name], np.eye(M.dims[A.vidx[a.source]], dtype=np.int64), A.p).T
               for a in A.pres.arrows if A.vidx[a.target] == v and M.dims[A.vidx[a.source]]]
        sub = np.concatenate(rad, axis=0) if rad else np.zeros((0, M.dims[v]), dtype=np.int64)
        q = gf.Quotient(M.dims[v], sub, A.p)
        for r in q.reps:
            gens.append((v, r))
    return gens


def map_from_generators(M: Module, verts: list[int], gens: list[np.ndarray]) -> tuple[Module, list[np.ndarray]]:
    """The module map (+)P_v -> M sending e_v (summand s) to gens[s]."""
    A = M.alg
    P = projective_sum(A, verts)
    pos = proj_position(A, verts)
    f = [np.zeros((M.dims[v], P.dims[v]), dtype=np.int64) for v in range(A.nv)]
    for (s, i), (j, r) in pos.items():
        f[j][:, r] = M.act(gens[s], i)
    return P, f


def element_matrix(alg: PathAlgebra, src: list[int], tgt: list[int], f: list[np.ndarray]) -> np.ndarray:
    """Algebra-element matrix of a module map (+)P_src -> (+)P_tgt."""
    d = np.zeros((len(tgt), len(src), alg.dim), dtype=np.int64)
    spos = proj_position(alg, src)
    tpos = proj_position(alg, tgt)
    back = {val: key for key, val in tpos.items()}
    for s, v in enumerate(src):
        j, r = spos[(s, alg.trivial[v])]
        col = f[j][:, r]
        for row in np.nonzero(col)[0]:
            t, i = back[(j, int(row))]
            d[t, s, i] = col[row]
    return d


def element_module_map(alg: PathAlgebra, src: list[int], tgt: list[int], d: np.ndarray) -> list[np.ndarray]:
    """Module map of an algebra-element matrix (inverse of element_matrix)."""
    T = projective_sum(alg, tgt)
    gens = []
    tpos = proj_position(alg, tgt)
    for s, v in enumerate(src):
        g = np.zeros(T.dims[v], dtype=np.int64)
        for t in range(len(tgt)):
            for i in np.nonzero(d[t, s])[0]:
                j, r = tpos[(t, int(i))]
                g[r] = (g[r] + d[t, s, i]) % alg.p
        gens.append(g)
    _, f = map_from_generators(T, src, gens)
    return f


@dataclass
class Resolution:
    """P_k -> ... -> P_0 -> M with algebra-element differentials."""

    terms: list[list[int]]
    diffs: list[np.ndarray]  # diffs[k]: P_{k+1} -> P_k
    cover: list[np.ndarray]  # generators of P_0 in M


def projective_resolution(M: Module, length: int = 2, pad: int = 0) -> Resolution:
    """Minimal resolution; ``pad`` adds split summands P_v -id-> P_v in degrees 0,1."""
    A = M.alg
    gens = top_generators(M)
    verts = [v for v, _ in gens]
    vecs = [g for _, g in gens]
    for k in range(pad):
        v = k % A.nv
        verts.append(v)
        vecs.append(np.zeros(M.dims[v], dtype=np.int64))
    P, f = map_from_generators(M, verts, vecs)
    terms, diffs = [verts], []
    K, inc = kernel(P, M, f)
    for k in range(length):
        g2 = top_generators(K)
        nverts = [v for v, _ in g2]
        nvecs = [gf.mul(inc[v], g.reshape(-1, 1), A.p)[:, 0] for v, g in g2]
        Q, h = map_from_generators(P, nverts, nvecs)
        diffs.append(element_matrix(A, nverts, terms[-1], h))
        terms.append(nverts)
        K, inc = kernel(Q, P, h)
        P = Q
    return Resolution(terms, diffs, vecs)


def min_projective_presentation(M: Module):
    from .twoterm import TwoTermComplex
    res = projective_resolution(M, length=1)
    return TwoTermComplex(M.alg, tuple(res.terms[1]), tuple(res.terms[0]), res.diffs[0])


def hom_from_projectives(N: Module, verts: list[int]) -> list[tuple[int, int]]:
    """Layout of Hom((+)P_v, N) = (+) N e_v as (vertex, offset) per summand."""
    out, off = [], 0
    for v in verts:
        out.append((v, off))
        off += N.dims[v]
    return out


def pullback_matrix(N: Module, src: list[int], tgt: list[int], d: np.ndarray) -> np.ndarray:
    """Matrix of Hom((+)P_tgt, N) -> Hom((+)P_src, N), x -> x o d."""
    A = N.alg
    lay_t = hom_from_projectives(N, tgt)
    lay_s = hom_from_projectives(N, src)
    nt = sum(N.dims[v] for v in tgt)
    ns = sum(N.dims[v] for v in src)
    out = np.zeros((ns, nt), dtype=np.int64)
    for t, (w, ot) in enumerate(lay_t):
        for k in range(N.dims[w]):
            e = np.zeros(N.dims[w], dtype=np.int64)
            e[k] = 1
            for s, (v, os_) in enumerate(lay_s):
                img = N.act_element(e, d[t, s], w, v)
                out[os_:os_ + N.dims[v], ot + k] = (out[os_:os_ + N.dims[v], ot + k] + img) % A.p
    return out


class Ext1:
    """Ext^1(M, N) as cocycles Hom(P_1, N) modulo coboundaries."""

    def __init__(self, M: Module, N: Module, pad: int = 0, res: Resolution | None = None):
        A = M.alg
        self.M, self.N = M, N
        self.res = res if res is not None else projective_resolution(M, length=2, pad=pad)
        t0, t1, t2 = self.res.terms
        d1, d2 = self.res.diffs
        self.raw = sum(N.dims[v] for v in t1)
        b = pullback_matrix(N, t1, t0, d1)
        c = pullback_matrix(N, t2, t1, d2)
        cyc = gf.nullspace(c, A.p) if c.shape[0] else np.eye(self.raw, dtype=np.int64)
        self.space = gf.Subquotient(cyc, b.T.copy(), A.p)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def reps(self) -> np.ndarray:
        return self.space.reps

    def coords(self, cocycle: np.ndarray) -> np.ndarray:
        return self.space.coords(cocycle)


def ext1(M: Module, N: Module, pad: int = 0, res: Resolution | None = None) -> Ext1:
    return Ext1(M, N, pad, res)


# ---------------------------------------------------------------- enumeration

def enumerate_indec_modules(alg: PathAlgebra) -> list[Module]:
    bad = validate_gentle(alg.pres)
    if bad:
        raise ValueError("not gentle: " + "; ".join(bad))
    mods = [string_module(alg, w) for w in enumerate_strings(alg.pres)]
    return sorted(mods, key=Module.sort_key)


def string_of(alg: PathAlgebra) -> dict[bytes, StringWord]:
    return {string_module(alg, w).key: w for w in enumerate_strings(alg.pres)}


# ---------------------------------------------------------------- graph maps

def _positions(pres: GentlePresentation, w: StringWord) -> list[str]:
    verts = [w.start]
    for x in w.letters:
        verts.append(letter_ends(pres, x)[1])
    return verts


def _boundary_ok(w: StringWord, i: int, j: int, outward: bool) -> bool:
    """Interval of positions [i, j] is a factor (outward) or image (not outward)."""
    L = w.letters
    if i > 0:
        a, s = L[i - 1]  # letter between positions i-1 and i
        # s > 0: arrow goes i-1 -> i (points into the interval)
        points_in = s > 0
        if points_in == outward:
            return False
    if j < len(L):
        a, s = L[j]  # letter between j and j+1
        points_in = s < 0
        if points_in == outward:
            return False
    return True


def string_hom_dim(pres: GentlePresentation, v: StringWord, w: StringWord) -> int:
    """dim Hom(M(v), M(w)) by counting graph maps (factor of v == image in w)."""
    pv, pw = _positions(pres, v), _positions(pres, w)
    count = 0
    for i in range(len(pv)):
        for j in range(i, len(pv)):
            if not _boundary_ok(v, i, j, outward=True):
                continue
            fac = v.letters[i:j]
            for k in range(len(pw)):
                l = k + (j - i)
                if l >= len(pw):
                    break
                if not _boundary_ok(w, k, l, outward=False):
                    continue
                img = w.letters[k:l]
                if not fac:
                    if pv[i] == pw[k]:
                        count += 1
                    continue
                if fac == img:
                    count += 1
                inv = tuple((a, -s) for a, s in reversed(img))
                if fac == inv:
                    count += 1
    return count
