"""Complexes of projectives in degrees -1, 0 and their homotopy category.

A map (+)P_v -> (+)P_w is an array ``f[t, s, i]``: coefficient of basis path
``i`` (from w_t to v_s) in the component from summand s to summand t.
Composition is matrix multiplication with entries multiplied in the algebra.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import gf
from .algebra import (
    Module, PathAlgebra, cokernel, element_module_map, enumerate_indec_modules,
    min_projective_presentation, projective_sum,
)
from .quiver import kill_vertices


# ---------------------------------------------------------------- maps of projectives

class ProjHom:
    """Hom_A((+)P_src, (+)P_tgt) as a coordinate space."""

    def __init__(self, alg: PathAlgebra, src: tuple[int, ...], tgt: tuple[int, ...]):
        self.alg, self.src, self.tgt = alg, tuple(src), tuple(tgt)
        self.shape = (len(self.tgt), len(self.src), alg.dim)
        self.pos = np.flatnonzero(alg.hom_mask(self.src, self.tgt))
        self.raw = len(self.pos)

    def to_raw(self, f: np.ndarray) -> np.ndarray:
        return f.reshape(-1)[self.pos] % self.alg.p

    def from_raw(self, v: np.ndarray) -> np.ndarray:
        out = np.zeros(int(np.prod(self.shape)), dtype=np.int64)
        out[self.pos] = v
        return out.reshape(self.shape)

    def basis_tensor(self) -> np.ndarray:
        out = np.zeros((self.raw, int(np.prod(self.shape))), dtype=np.int64)
        out[np.arange(self.raw), self.pos] = 1
        return out.reshape((self.raw,) + self.shape)


_PH: dict = {}


def projhom(alg, src, tgt) -> ProjHom:
    key = (id(alg), tuple(src), tuple(tgt))
    h = _PH.get(key)
    if h is None or h.alg is not alg:
        h = _PH[key] = ProjHom(alg, src, tgt)
    return h


def _batch_compose(alg: PathAlgebra, g: np.ndarray, f: np.ndarray) -> np.ndarray:
    """g: (b, nU, nT, d) or (nU, nT, d); f likewise; batched g o f."""
    gb = g if g.ndim == 4 else g[None]
    fb = f if f.ndim == 4 else f[None]
    b = max(gb.shape[0], fb.shape[0])
    nu, nt, d = gb.shape[1:]
    ns = fb.shape[2]
    if b == 0 or nu == 0 or ns == 0 or nt == 0:
        return np.zeros((b, nu, ns, d), dtype=np.int64)
    tmp = np.einsum("buti,btsj->busij", np.broadcast_to(gb, (b,) + gb.shape[1:]),
                    np.broadcast_to(fb, (b,) + fb.shape[1:])) % alg.p
    out = tmp.reshape(b * nu * ns, d * d) @ alg.struct.reshape(d * d, d)
    return (out % alg.p).reshape(b, nu, ns, d)


def left_matrix(alg, g: np.ndarray, src, mid, tgt) -> np.ndarray:
    """Matrix of f -> g o f from raw Hom(src, mid) to raw Hom(src, tgt)."""
    H, K = projhom(alg, src, mid), projhom(alg, src, tgt)
    if H.raw == 0 or K.raw == 0:
        return np.zeros((K.raw, H.raw), dtype=np.int64)
    out = _batch_compose(alg, g[None], H.basis_tensor())
    return out.reshape(H.raw, -1)[:, K.pos].T.copy()


def right_matrix(alg, f: np.ndarray, src, mid, tgt) -> np.ndarray:
    """Matrix of h -> h o f from raw Hom(mid, tgt) to raw Hom(src, tgt)."""
    H, K = projhom(alg, mid, tgt), projhom(alg, src, tgt)
    if H.raw == 0 or K.raw == 0:
        return np.zeros((K.raw, H.raw), dtype=np.int64)
    out = _batch_compose(alg, H.basis_tensor(), f[None])
    return out.reshape(H.raw, -1)[:, K.pos].T.copy()


def identity_matrix(alg: PathAlgebra, verts) -> np.ndarray:
    n = len(verts)
    out = np.zeros((n, n, alg.dim), dtype=np.int64)
    for i, v in enumerate(verts):
        out[i, i, alg.trivial[v]] = 1
    return out


def unit_inverse(alg: PathAlgebra, u: np.ndarray, v: int) -> np.ndarray:
    """Inverse of a unit c*e_v + n of the local ring e_v A e_v."""
    p = alg.p
    c = int(u[alg.trivial[v]])
    ci = gf.inv_scalar(c, p)
    n = u.copy()
    n[alg.trivial[v]] = 0
    x = (-ci * n) % p  # -n/c
    term = np.zeros(alg.dim, dtype=np.int64)
    term[alg.trivial[v]] = 1
    total = term.copy()
    for _ in range(alg.dim + 1):
        term = alg.multiply(term, x)
        if not np.any(term):
            break
        total = (total + term) % p
    return (ci * total) % p


# ---------------------------------------------------------------- general complexes

@dataclass(frozen=True, eq=False)
class Complex:
    """Bounded complex of projectives; diffs[n]: C^n -> C^{n+1}."""

    alg: PathAlgebra
    terms: dict
    diffs: dict

    def term(self, n: int) -> tuple[int, ...]:
        return self.terms.get(n, ())

    def diff(self, n: int) -> np.ndarray:
        d = self.diffs.get(n)
        if d is None:
            return np.zeros((len(self.term(n + 1)), len(self.term(n)), self.alg.dim), dtype=np.int64)
        return d

    def degrees(self) -> list[int]:
        return sorted(n for n, t in self.terms.items() if t)

    def shift(self, k: int = 1) -> "Complex":
        """Sigma^k: (Sigma C)^n = C^{n+1}, differential negated for odd k."""
        sign = -1 if k % 2 else 1
        return Complex(self.alg, {n - k: t for n, t in self.terms.items()},
                       {n - k: (sign * d) % self.alg.p for n, d in self.diffs.items()})

    def check(self):
        A = self.alg
        for n in self.degrees():
            sq = A.matmul(self.diff(n + 1), self.diff(n))
            if np.any(sq):
                raise ValueError(f"d^{n + 1} d^{n} != 0")


class ComplexHom:
    """Chain maps X -> Y modulo null-homotopic ones.

    Raw layout: concatenation over degrees n (ascending) of raw Hom(X^n, Y^n).
    """

    def __init__(self, X: Complex, Y: Complex):
        A = X.alg
        p = A.p
        self.X, self.Y, self.alg = X, Y, A
        degs = sorted(set(X.degrees()) & set(Y.degrees()))
        self.degs = degs
        self.blocks = {}
        off = 0
        for n in degs:
            h = projhom(A, X.term(n), Y.term(n))
            self.blocks[n] = (off, h)
            off += h.raw
        self.raw = off
        # chain condition f^{n+1} d_X^n - d_Y^n f^n = 0 in Hom(X^n, Y^{n+1})
        rows = []
        for n in X.degrees():
            tgt = Y.term(n + 1)
            if not tgt:
                continue
            K = projhom(A, X.term(n), tgt)
            if K.raw == 0:
                continue
            eq = np.zeros((K.raw, off), dtype=np.int64)
            if n + 1 in self.blocks:
                o, h = self.blocks[n + 1]
                eq[:, o:o + h.raw] += right_matrix(A, X.diff(n), X.term(n), X.term(n + 1), tgt)
            if n in self.blocks:
                o, h = self.blocks[n]
                eq[:, o:o + h.raw] -= left_matrix(A, Y.diff(n), X.term(n), Y.term(n), tgt)
            rows.append(eq % p)
        eqs = np.concatenate(rows) if rows else np.zeros((0, off), dtype=np.int64)
        cycles = gf.nullspace(eqs, p) if off else np.zeros((0, 0), dtype=np.int64)
        # homotopies h^n: X^n -> Y^{n-1}; f^n = h^{n+1} d_X^n + d_Y^{n-1} h^n
        hcols = []
        for n in X.degrees():
            tgt = Y.term(n - 1)
            if not tgt:
                continue
            H = projhom(A, X.term(n), tgt)
            if H.raw == 0:
                continue
            img = np.zeros((off, H.raw), dtype=np.int64)
            if n in self.blocks:  # d_Y^{n-1} h^n lands in degree n
                o, h = self.blocks[n]
                img[o:o + h.raw] += left_matrix(A, Y.diff(n - 1), X.term(n), tgt, Y.term(n))
            if n - 1 in self.blocks:  # h^n d_X^{n-1} lands in degree n-1
                o, h = self.blocks[n - 1]
                img[o:o + h.raw] += right_matrix(A, X.diff(n - 1), X.term(n - 1), X.term(n), tgt)
            hcols.append(img % p)
        bound = np.concatenate(hcols, axis=1).T.copy() if hcols else np.zeros((0, off), dtype=np.int64)
        self.space = gf.Subquotient(cycles, bound, p)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def reps(self) -> np.ndarray:
        return self.space.reps

    def coords(self, v: np.ndarray) -> np.ndarray:
        return self.space.coords(v)

    def component(self, v: np.ndarray, n: int) -> np.ndarray:
        if n not in self.blocks:
            return np.zeros((len(self.Y.term(n)), len(self.X.term(n)), self.alg.dim), dtype=np.int64)
        o, h = self.blocks[n]
        return h.from_raw(v[o:o + h.raw])

    def pack(self, comps: dict) -> np.ndarray:
        out = np.zeros(self.raw, dtype=np.int64)
        for n, (o, h) in self.blocks.items():
            if n in comps:
                out[o:o + h.raw] = h.to_raw(comps[n])
        return out


def compose_chain(alg: PathAlgebra, g: dict, f: dict) -> dict:
    return {n: alg.matmul(g[n], f[n]) for n in f if n in g}


# ---------------------------------------------------------------- two-term complexes

@dataclass(frozen=True, eq=False)
class TwoTermComplex:
    """P_minus1 --d--> P_0 with P's given as vertex-index multisets."""

    alg: PathAlgebra
    minus: tuple[int, ...]
    zero: tuple[int, ...]
    d: np.ndarray

    def __post_init__(self):
        A = self.alg
        d = np.asarray(self.d, dtype=np.int64) % A.p
        if d.shape != (len(self.zero), len(self.minus), A.dim):
            d = d.reshape(len(self.zero), len(self.minus), A.dim)
        if np.any(d[~A.hom_mask(self.minus, self.zero)]):
            raise ValueError("differential has entries outside e_w A e_v")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "minus", tuple(int(v) for v in self.minus))
        object.__setattr__(self, "zero", tuple(int(v) for v in self.zero))

    @cached_property
    def key(self) -> bytes:
        return (repr((self.minus, self.zero)).encode() + b"|" + self.d.tobytes())

    @cached_property
    def complex(self) -> Complex:
        terms = {}
        if self.minus:
            terms[-1] = self.minus
        if self.zero:
            terms[0] = self.zero
        diffs = {-1: self.d} if self.minus and self.zero else {}
        return Complex(self.alg, terms, diffs)

    def is_zero(self) -> bool:
        return not self.minus and not self.zero

    def sort_key(self) -> tuple:
        A = self.alg
        size = sum(len(A.paths(v, j)) for v in self.minus + self.zero for j in range(A.nv))
        return (size, len(self.minus) + len(self.zero), self.minus, self.zero,
                tuple(int(x) for x in self.d.ravel()))

    def dump(self) -> str:
        A = self.alg
        name = lambda vs: "+".join(A.vertices[v] for v in vs) or "0"
        rows = []
        for t in range(len(self.zero)):
            rows.append(",".join(A.element_str(self.d[t, s]) for s in range(len(self.minus))))
        mid = ";".join(rows) if self.minus and self.zero else "0"
        return f"[{name(self.minus)} | {mid} | {name(self.zero)}]"

    def __repr__(self):
        return self.dump()


def stalk(alg: PathAlgebra, v, degree: int = 0) -> TwoTermComplex:
    v = alg.vertex(v)
    z = np.zeros((0, 1, alg.dim), dtype=np.int64) if degree == -1 else np.zeros((1, 0, alg.dim), dtype=np.int64)
    return TwoTermComplex(alg, (v,) if degree == -1 else (), (v,) if degree == 0 else (), z)


def shifted_stalk(alg: PathAlgebra, v) -> TwoTermComplex:
    return stalk(alg, v, -1)


def zero_complex(alg: PathAlgebra) -> TwoTermComplex:
    return TwoTermComplex(alg, (), (), np.zeros((0, 0, alg.dim), dtype=np.int64))


def from_complex(C: Complex) -> TwoTermComplex:
    extra = [n for n in C.degrees() if n not in (-1, 0)]
    if extra:
        raise ValueError(f"complex has terms in degrees {extra}")
    return TwoTermComplex(C.alg, C.term(-1), C.term(0), C.diff(-1))


def direct_sum(alg: PathAlgebra, objs: list[TwoTermComplex]) -> TwoTermComplex:
    minus = sum((X.minus for X in objs), ())
    zero = sum((X.zero for X in objs), ())
    d = np.zeros((len(zero), len(minus), alg.dim), dtype=np.int64)
    r = c = 0
    for X in objs:
        d[r:r + len(X.zero), c:c + len(X.minus)] = X.d
        r += len(X.zero)
        c += len(X.minus)
    return TwoTermComplex(alg, minus, zero, d)


def hom(X: TwoTermComplex, Y: TwoTermComplex) -> ComplexHom:
    """Hom in the homotopy category, by solving for chain maps."""
    return ComplexHom(X.complex, Y.complex)


class EGroup:
    """E(X, Y) = Hom_A(X^-1, Y^0) / (im(- o d_X) + im(d_Y o -))."""

    def __init__(self, X: TwoTermComplex, Y: TwoTermComplex):
        A = X.alg
        self.X, self.Y, self.alg = X, Y, A
        self.H = projhom(A, X.minus, Y.zero)
        self.raw = self.H.raw
        parts = []
        if X.zero and Y.zero:
            parts.append(right_matrix(A, X.d, X.minus, X.zero, Y.zero).T)
        if X.minus and Y.minus:
            parts.append(left_matrix(A, Y.d, X.minus, Y.minus, Y.zero).T)
        sub = np.concatenate(parts) if parts else np.zeros((0, self.raw), dtype=np.int64)
        self.space = gf.Quotient(self.raw, sub, A.p)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def reps(self) -> np.ndarray:
        return self.space.reps

    def coords(self, v: np.ndarray) -> np.ndarray:
        return self.space.coords(v)

    def matrix(self, v: np.ndarray) -> np.ndarray:
        return self.H.from_raw(v)


def egroup(X: TwoTermComplex, Y: TwoTermComplex) -> EGroup:
    return EGroup(X, Y)


def egroup_bruteforce_dim(X: TwoTermComplex, Y: TwoTermComplex) -> int:
    """dim Hom(X, Sigma Y) from the general chain-map solver."""
    return ComplexHom(X.complex, Y.complex.shift(1)).dim


def realize_conflation(Z: TwoTermComplex, X: TwoTermComplex, delta: np.ndarray):
    """Middle term M of X -> M -> Z for delta: Z^-1 -> X^0 (a matrix or raw vector)."""
    A = X.alg
    if delta.ndim == 1:
        delta = projhom(A, Z.minus, X.zero).from_raw(delta)
    minus = X.minus + Z.minus
    zero = X.zero + Z.zero
    d = np.zeros((len(zero), len(minus), A.dim), dtype=np.int64)
    nx0, nx1 = len(X.zero), len(X.minus)
    d[:nx0, :nx1] = X.d
    d[:nx0, nx1:] = delta
    d[nx0:, nx1:] = Z.d
    M = TwoTermComplex(A, minus, zero, d)
    inc = {-1: identity_matrix(A, minus)[:, :nx1], 0: identity_matrix(A, zero)[:, :nx0]}
    pro = {-1: identity_matrix(A, minus)[nx1:, :], 0: identity_matrix(A, zero)[nx0:, :]}
    return M, inc, pro


# ---------------------------------------------------------------- minimization

def _find_unit(C: Complex):
    A = C.alg
    for n in C.degrees():
        d = C.diff(n)
        src, tgt = C.term(n), C.term(n + 1)
        for t, w in enumerate(tgt):
            for s, v in enumerate(src):
                if v == w and d[t, s, A.trivial[v]] % A.p:
                    return n, t, s
    return None


def minimize_complex(C: Complex):
    """Strip contractible summands; returns (C', pi: C -> C', iota: C' -> C)."""
    A = C.alg
    p = A.p
    terms = {n: tuple(t) for n, t in C.terms.items()}
    diffs = {n: C.diff(n) for n in C.degrees()}
    pi = {n: identity_matrix(A, terms[n]) for n in C.degrees()}
    io = {n: identity_matrix(A, terms[n]) for n in C.degrees()}
    cur = Complex(A, terms, diffs)
    while True:
        hit = _find_unit(cur)
        if hit is None:
            break
        n, t, s = hit
        d = cur.diff(n)
        v = cur.term(n)[s]
        uinv = unit_inverse(A, d[t, s], v)[None, None]
        keep_s = [i for i in range(len(cur.term(n))) if i != s]
        keep_t = [i for i in range(len(cur.term(n + 1))) if i != t]
        gamma = d[keep_t][:, [s]]
        delta = d[[t]][:, keep_s]
        eps = d[keep_t][:, keep_s]
        gu = A.matmul(gamma, uinv)
        new_d = (eps - A.matmul(gu, delta)) % p
        ud = A.matmul(uinv, delta)
        terms = dict(cur.terms)
        diffs = {k: cur.diff(k) for k in cur.degrees()}
        terms[n] = tuple(cur.term(n)[i] for i in keep_s)
        terms[n + 1] = tuple(cur.term(n + 1)[i] for i in keep_t)
        diffs[n] = new_d
        if n - 1 in diffs:
            diffs[n - 1] = diffs[n - 1][keep_s]
        if n + 1 in diffs:
            diffs[n + 1] = diffs[n + 1][:, keep_t]
        # pi^n = [0 1] on (s, rest); pi^{n+1} = [-gamma u^-1, 1] on (t, rest)
        pn = identity_matrix(A, cur.term(n))[keep_s]
        pn1 = identity_matrix(A, cur.term(n + 1))[keep_t]
        pn1[:, t] = (-gu[:, 0]) % p
        # iota^n = [-u^-1 delta; 1]; iota^{n+1} = [0; 1]
        inn = identity_matrix(A, cur.term(n))[:, keep_s]
        inn[s] = (-ud[0]) % p
        inn1 = identity_matrix(A, cur.term(n + 1))[:, keep_t]
        pi[n] = A.matmul(pn, pi[n])
        pi[n + 1] = A.matmul(pn1, pi[n + 1])
        io[n] = A.matmul(io[n], inn)
        io[n + 1] = A.matmul(io[n + 1], inn1)
        cur = Complex(A, {k: v for k, v in terms.items()}, diffs)
    return cur, pi, io


def minimize(X: TwoTermComplex) -> TwoTermComplex:
    C, _, _ = minimize_complex(X.complex)
    return from_complex(C)


def minimize_with_maps(X: TwoTermComplex):
    C, pi, io = minimize_complex(X.complex)
    Y = from_complex(C)
    full = lambda m, n, r, c: m.get(n, np.zeros((r, c, X.alg.dim), dtype=np.int64))
    pi2 = {-1: full(pi, -1, len(Y.minus), len(X.minus)), 0: full(pi, 0, len(Y.zero), len(X.zero))}
    io2 = {-1: full(io, -1, len(X.minus), len(Y.minus)), 0: full(io, 0, len(X.zero), len(Y.zero))}
    return Y, pi2, io2


def is_minimal(X: TwoTermComplex) -> bool:
    return _find_unit(X.complex) is None


# ---------------------------------------------------------------- cones

def cone(X: TwoTermComplex, Y: TwoTermComplex, f: dict):
    """Cone of f: X -> Y if homotopic to a two-term complex.

    Returns (C, g: Y -> C, delta: C^-1 -> X^0) for the triangle
    X -> Y -> C -> Sigma X, or None.
    """
    A = X.alg
    p = A.p
    nx1, nx0, ny1, ny0 = len(X.minus), len(X.zero), len(Y.minus), len(Y.zero)
    terms = {-2: X.minus, -1: X.zero + Y.minus, 0: Y.zero}
    d2 = np.concatenate([(-X.d) % p, f[-1]], axis=0) if nx1 else np.zeros((nx0 + ny1, 0, A.dim), dtype=np.int64)
    d1 = np.concatenate([f[0], Y.d], axis=1)
    full = Complex(A, terms, {-2: d2, -1: d1})
    C, pi, io = minimize_complex(full)
    if C.term(-2):
        return None
    Cm = from_complex(C)
    ident = lambda verts: identity_matrix(A, verts)
    # Y -> Cone: inclusion into the Y components
    inc_m1 = ident(terms[-1])[:, nx0:]
    inc_0 = ident(terms[0])
    g = {-1: A.matmul(pi[-1], inc_m1) if -1 in pi else np.zeros((0, ny1, A.dim), dtype=np.int64),
         0: A.matmul(pi[0], inc_0) if 0 in pi else np.zeros((0, ny0, A.dim), dtype=np.int64)}
    # Cone -> Sigma X: projection to the X^0 component in degree -1
    pr = ident(terms[-1])[:nx0, :]
    delta = A.matmul(pr, io[-1]) if -1 in io else np.zeros((nx0, 0, A.dim), dtype=np.int64)
    return Cm, g, delta


def cocone(Y: TwoTermComplex, Z: TwoTermComplex, g: dict):
    """Cocone K -> Y -> Z of g if two-term; returns (K, f: K -> Y, delta: Z^-1 -> K^0)."""
    A = Y.alg
    p = A.p
    ny1, ny0, nz1 = len(Y.minus), len(Y.zero), len(Z.minus)
    terms = {-1: Y.minus, 0: Y.zero + Z.minus, 1: Z.zero}
    dm1 = np.concatenate([Y.d, (-g[-1]) % p], axis=0)
    d0 = np.concatenate([(-g[0]) % p, (-Z.d) % p], axis=1)
    full = Complex(A, terms, {-1: dm1, 0: d0})
    K, pi, io = minimize_complex(full)
    if K.term(1):
        return None
    Km = from_complex(K)
    ident = lambda verts: identity_matrix(A, verts)
    f = {-1: A.matmul(ident(terms[-1]), io[-1]) if -1 in io else np.zeros((ny1, 0, A.dim), dtype=np.int64),
         0: A.matmul(ident(terms[0])[:ny0], io[0]) if 0 in io else np.zeros((ny0, 0, A.dim), dtype=np.int64)}
    inc = ident(terms[0])[:, ny0:]
    delta = A.matmul(pi[0], inc) if 0 in pi else np.zeros((0, nz1, A.dim), dtype=np.int64)
    return Km, f, delta


# ---------------------------------------------------------------- enumeration

def enumerate_indec_harp(alg: PathAlgebra) -> list[TwoTermComplex]:
    """Minimal presentations of indecomposable modules, then the shifted projectives."""
    pres = [min_projective_presentation(M) for M in enumerate_indec_modules(alg)]
    shifts = [shifted_stalk(alg, v) for v in range(alg.nv)]
    return sorted(pres, key=TwoTermComplex.sort_key) + shifts


def cohomology(X: TwoTermComplex) -> Module:
    """H^0 = coker d as a module."""
    A = X.alg
    P1 = projective_sum(A, X.minus)
    P0 = projective_sum(A, X.zero)
    f = element_module_map(A, list(X.minus), list(X.zero), X.d)
    return cokernel(P1, P0, f)[0]


# ---------------------------------------------------------------- truncation

class Truncation:
    """The functor - (x) A/(e) from complexes over A to complexes over A/(e)."""

    def __init__(self, alg: PathAlgebra, killed):
        self.src = alg
        self.killed = {alg.vertex(v) for v in killed}
        names = {alg.vertices[v] for v in self.killed}
        self.tgt = PathAlgebra(kill_vertices(alg.pres, names), alg.p)
        self.vmap = {v: self.tgt.vidx[alg.vertices[v]] for v in range(alg.nv) if v not in self.killed}
        self.pmap = np.full(alg.dim, -1, dtype=np.int64)
        for i, path in enumerate(alg.basis):
            j = self.tgt.index.get(path)
            if j is not None and alg.vidx[path.source] not in self.killed:
                self.pmap[i] = j

    def _elements(self, m: np.ndarray, rows, cols) -> np.ndarray:
        out = np.zeros((len(rows), len(cols), self.tgt.dim), dtype=np.int64)
        for a, r in enumerate(rows):
            for b, c in enumerate(cols):
                for i in np.nonzero(m[r, c])[0]:
                    j = self.pmap[i]
                    if j >= 0:
                        out[a, b, j] = (out[a, b, j] + m[r, c, i]) % self.src.p
        return out

    def keep(self, verts) -> list[int]:
        return [i for i, v in enumerate(verts) if v not in self.killed]

    def obj(self, X: TwoTermComplex) -> TwoTermComplex:
        km, kz = self.keep(X.minus), self.keep(X.zero)
        d = self._elements(X.d, kz, km)
        return TwoTermComplex(self.tgt, tuple(self.vmap[X.minus[i]] for i in km),
                              tuple(self.vmap[X.zero[i]] for i in kz), d)

    def mor(self, X: TwoTermComplex, Y: TwoTermComplex, f: dict) -> dict:
        return {-1: self._elements(f[-1], self.keep(Y.minus), self.keep(X.minus)),
                0: self._elements(f[0], self.keep(Y.zero), self.keep(X.zero))}


def truncate_by_idempotent(X: TwoTermComplex, killed) -> TwoTermComplex:
    return Truncation(X.alg, killed).obj(X)


# ---------------------------------------------------------------- backend

class HarpAmbient:
    """The homotopy category of two-term complexes over one algebra."""

    def __init__(self, alg: PathAlgebra):
        self.alg = alg
        self.p = alg.p
        self._hom: dict = {}
        self._ext: dict = {}

    def key(self, X: TwoTermComplex) -> bytes:
        return X.key

    def hom(self, X, Y) -> ComplexHom:
        k = (X.key, Y.key)
        h = self._hom.get(k)
        if h is None:
            h = self._hom[k] = hom(X, Y)
        return h

    def ext(self, Z, X) -> EGroup:
        k = (Z.key, X.key)
        e = self._ext.get(k)
        if e is None:
            e = self._ext[k] = EGroup(Z, X)
        return e

    def unpack(self, X, Y, v) -> dict:
        h = self.hom(X, Y)
        return {-1: h.component(v, -1), 0: h.component(v, 0)}

    def pack(self, X, Y, comps) -> np.ndarray:
        return self.hom(X, Y).pack(comps)

    def compose(self, g, f, X, Y, Z) -> np.ndarray:
        gc, fc = self.unpack(Y, Z, g), self.unpack(X, Y, f)
        return self.pack(X, Z, compose_chain(self.alg, gc, fc))

    def identity(self, X) -> np.ndarray:
        return self.pack(X, X, {-1: identity_matrix(self.alg, X.minus), 0: identity_matrix(self.alg, X.zero)})

    def ext_pre(self, delta, f, Z2, Z, X) -> np.ndarray:
        """f: Z2 -> Z acting E(Z, X) -> E(Z2, X)."""
        E, E2 = self.ext(Z, X), self.ext(Z2, X)
        fm = self.unpack(Z2, Z, f)[-1]
        return E2.H.to_raw(self.alg.matmul(E.H.from_raw(delta), fm))

    def ext_post(self, g, delta, Z, X, X2) -> np.ndarray:
        """g: X -> X2 acting E(Z, X) -> E(Z, X2)."""
        E, E2 = self.ext(Z, X), self.ext(Z, X2)
        g0 = self.unpack(X, X2, g)[0]
        return E2.H.to_raw(self.alg.matmul(g0, E.H.from_raw(delta)))

    def realize(self, delta, Z, X):
        M, inc, pro = realize_conflation(Z, X, self.ext(Z, X).H.from_raw(delta))
        return M, self.pack(X, M, inc), self.pack(M, Z, pro)

    def direct_sum(self, objs):
        S = direct_sum(self.alg, list(objs))
        incs, pros = [], []
        r = c = 0
        I1, I0 = identity_matrix(self.alg, S.minus), identity_matrix(self.alg, S.zero)
        for X in objs:
            sl1 = slice(c, c + len(X.minus))
            sl0 = slice(r, r + len(X.zero))
            incs.append(self.pack(X, S, {-1: I1[:, sl1], 0: I0[:, sl0]}))
            pros.append(self.pack(S, X, {-1: I1[sl1, :], 0: I0[sl0, :]}))
            c += len(X.minus)
            r += len(X.zero)
        return S, incs, pros

    def cone(self, f, X, Y):
        out = cone(X, Y, self.unpack(X, Y, f))
        if out is None:
            return None
        C, g, delta = out
        return C, self.pack(Y, C, g), self.ext(C, X).H.to_raw(delta)

    def cocone(self, g, Y, Z):
        out = cocone(Y, Z, self.unpack(Y, Z, g))
        if out is None:
            return None
        K, f, delta = out
        return K, self.pack(K, Y, f), self.ext(Z, K).H.to_raw(delta)

    def is_zero(self, X) -> bool:
        return X.is_zero()

    def minimal(self, X):
        return minimize(X)

    def profile(self, X) -> Counter:
        return Counter([("m", v) for v in X.minus] + [("z", v) for v in X.zero])

    def dump(self, X) -> str:
        return X.dump()
