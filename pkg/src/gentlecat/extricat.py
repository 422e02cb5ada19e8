"""Extriangulated categories given by finite lists of indecomposables.

A handle wraps an ambient backend (two-term complexes or modules), a list of
indecomposable objects, marked projectives and injectives, an optional ideal
to quotient by and an optional relative extension subfunctor.  Morphisms and
extension classes are flat integer vectors in the backend's raw layout.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import gf
from .algebra import (
    Module, PathAlgebra, cokernel, compose_blocks, direct_sum as module_direct_sum,
    element_module_map, enumerate_indec_modules, ext1, flat, hom_from_projectives,
    identity_blocks, kernel, map_from_generators, module_hom, projective_resolution,
    projective_sum, pullback_matrix,
)
from .twoterm import (
    HarpAmbient, TwoTermComplex, enumerate_indec_harp, left_matrix, projhom,
    shifted_stalk, stalk,
)

HARP, PERP, E_PERP, WALKS, MODCAT = "HARP", "PERP_SIGMA_E", "E_PERP", "WALKS", "MODCAT"


# ---------------------------------------------------------------- module backend

class ModuleAmbient:
    """mod A with Ext^1 computed from projective resolutions."""

    def __init__(self, alg: PathAlgebra):
        self.alg = alg
        self.p = alg.p
        self._hom: dict = {}
        self._ext: dict = {}
        self._res: dict = {}

    def key(self, M: Module) -> bytes:
        return M.key

    def hom(self, X, Y):
        k = (X.key, Y.key)
        h = self._hom.get(k)
        if h is None:
            h = self._hom[k] = module_hom(X, Y)
        return h

    def resolution(self, Z):
        r = self._res.get(Z.key)
        if r is None:
            r = self._res[Z.key] = projective_resolution(Z, length=2)
        return r

    def ext(self, Z, X):
        k = (Z.key, X.key)
        e = self._ext.get(k)
        if e is None:
            e = self._ext[k] = ext1(Z, X, res=self.resolution(Z))
        return e

    def blocks(self, X, Y, v):
        return self.hom(X, Y).blocks_of(v)

    def compose(self, g, f, X, Y, Z) -> np.ndarray:
        return flat(compose_blocks(self.p, self.blocks(Y, Z, g), self.blocks(X, Y, f)))

    def identity(self, X) -> np.ndarray:
        return flat(identity_blocks(X))

    def lift_to_resolutions(self, f, Z2, Z) -> tuple[np.ndarray, np.ndarray]:
        """Components (f0, f1) of a lift of f: Z2 -> Z to the resolutions."""
        A = self.alg
        r2, r = self.resolution(Z2), self.resolution(Z)
        t0, t1 = tuple(r.terms[0]), tuple(r.terms[1])
        s0, s1 = tuple(r2.terms[0]), tuple(r2.terms[1])
        fb = self.blocks(Z2, Z, f)
        f0 = np.zeros((len(t0), len(s0), A.dim), dtype=np.int64)
        for s, v in enumerate(s0):
            target = gf.mul(fb[v], r2.cover[s].reshape(-1, 1), self.p)[:, 0]
            cols, where = [], []
            for t, w in enumerate(t0):
                for i in A.paths(w, v):
                    cols.append(Z.act(r.cover[t], i))
                    where.append((t, i))
            if not cols:
                continue
            x = gf.solve(np.array(cols, dtype=np.int64).T.reshape(Z.dims[v], len(cols)), target, self.p)
            if x is None:
                raise ArithmeticError("cover does not lift")
            for (t, i), c in zip(where, x):
                f0[t, s, i] = c
        if not s1 or not t1:
            return f0, np.zeros((len(t1), len(s1), A.dim), dtype=np.int64)
        rhs = A.matmul(f0, r2.diffs[0])
        K = projhom(A, s1, t0)
        L = left_matrix(A, r.diffs[0], s1, t1, t0)
        y = gf.solve(L, K.to_raw(rhs), self.p)
        if y is None:
            raise ArithmeticError("syzygy map does not lift")
        return f0, projhom(A, s1, t1).from_raw(y)

    def ext_pre(self, delta, f, Z2, Z, X) -> np.ndarray:
        r2, r = self.resolution(Z2), self.resolution(Z)
        if not r2.terms[1] or not r.terms[1]:
            return np.zeros(sum(X.dims[v] for v in r2.terms[1]), dtype=np.int64)
        f1 = self.lift_to_resolutions(f, Z2, Z)[1]
        pb = pullback_matrix(X, list(r2.terms[1]), list(r.terms[1]), f1)
        return gf.mul(pb, delta.reshape(-1, 1), self.p)[:, 0]

    def ext_post(self, g, delta, Z, X, X2) -> np.ndarray:
        r = self.resolution(Z)
        gb = self.blocks(X, X2, g)
        out = []
        for v, off in hom_from_projectives(X, list(r.terms[1])):
            out.append(gf.mul(gb[v], delta[off:off + X.dims[v]].reshape(-1, 1), self.p)[:, 0])
        return np.concatenate(out) if out else np.zeros(0, dtype=np.int64)

    def realize(self, delta, Z, X):
        """Pushout of the syzygy sequence along the cocycle delta."""
        A = self.alg
        r = self.resolution(Z)
        t0, t1 = list(r.terms[0]), list(r.terms[1])
        P0, pi = map_from_generators(Z, t0, list(r.cover))
        S = module_direct_sum(A, [X, P0])
        if t1:
            chunks = [delta[o:o + X.dims[v]] for v, o in hom_from_projectives(X, t1)]
            P1, c = map_from_generators(X, t1, chunks)
            d = element_module_map(A, t1, t0, r.diffs[0])
            phi = [np.concatenate([c[v], (-d[v]) % self.p], axis=0) for v in range(A.nv)]
        else:
            P1 = projective_sum(A, [])
            phi = [np.zeros((S.dims[v], 0), dtype=np.int64) for v in range(A.nv)]
        M, pr = cokernel(P1, S, phi)
        inc = [pr[v][:, :X.dims[v]] for v in range(A.nv)]
        pro = []
        for v in range(A.nv):
            h = np.concatenate([np.zeros((Z.dims[v], X.dims[v]), dtype=np.int64), pi[v]], axis=1)
            if M.dims[v] == 0 or Z.dims[v] == 0:
                pro.append(np.zeros((Z.dims[v], M.dims[v]), dtype=np.int64))
                continue
            sol = gf.solve(pr[v].T.copy(), h.T.copy(), self.p)
            pro.append(sol.T.copy())
        return M, flat(inc), flat(pro)

    def class_of(self, X, f, Y, g, Z) -> np.ndarray:
        """Cocycle of the short exact sequence X -f-> Y -g-> Z."""
        r = self.resolution(Z)
        t0, t1 = list(r.terms[0]), list(r.terms[1])
        fb, gb = self.blocks(X, Y, f), self.blocks(Y, Z, g)
        ys = []
        for s, v in enumerate(t0):
            y = gf.solve(gb[v], r.cover[s], self.p)
            if y is None:
                raise ArithmeticError("deflation is not surjective")
            ys.append(y)
        out = []
        for s1, u in enumerate(t1):
            val = np.zeros(Y.dims[u], dtype=np.int64)
            for t, w in enumerate(t0):
                val = (val + Y.act_element(ys[t], r.diffs[0][t, s1], w, u)) % self.p
            x = gf.solve(fb[u], val, self.p) if X.dims[u] else np.zeros(0, dtype=np.int64)
            if x is None:
                raise ArithmeticError("sequence is not exact")
            out.append(x)
        return np.concatenate(out) if out else np.zeros(0, dtype=np.int64)

    def direct_sum(self, objs):
        A = self.alg
        S = module_direct_sum(A, list(objs))
        incs, pros = [], []
        offs = [0] * A.nv
        for X in objs:
            ib, pb = [], []
            for v in range(A.nv):
                e = np.eye(S.dims[v], dtype=np.int64)
                ib.append(e[:, offs[v]:offs[v] + X.dims[v]])
                pb.append(e[offs[v]:offs[v] + X.dims[v], :])
                offs[v] += X.dims[v]
            incs.append(flat(ib))
            pros.append(flat(pb))
        return S, incs, pros

    def cone(self, f, X, Y):
        fb = self.blocks(X, Y, f)
        if any(gf.rank(b, self.p) < X.dims[v] for v, b in enumerate(fb)):
            return None
        C, pr = cokernel(X, Y, fb)
        g = flat(pr)
        return C, g, self.class_of(X, f, Y, g, C)

    def cocone(self, g, Y, Z):
        gb = self.blocks(Y, Z, g)
        if any(gf.rank(b, self.p) < Z.dims[v] for v, b in enumerate(gb)):
            return None
        K, inc = kernel(Y, Z, gb)
        f = flat(inc)
        return K, f, self.class_of(K, f, Y, g, Z)

    def is_zero(self, X) -> bool:
        return X.is_zero()

    def minimal(self, X):
        return X

    def profile(self, X) -> Counter:
        return Counter({v: d for v, d in enumerate(X.dims) if d})

    def dump(self, X) -> str:
        from .algebra import string_of
        names = getattr(self, "_names", None)
        if names is None:
            names = self._names = {k: str(w) for k, w in string_of(self.alg).items()}
        return names.get(X.key, "dims(" + ",".join(map(str, X.dims)) + ")")


# ---------------------------------------------------------------- linear helpers

def _stack(rows: list[np.ndarray], n: int) -> np.ndarray:
    rows = [r.reshape(-1, n) for r in rows if r.size]
    return np.concatenate(rows) if rows else np.zeros((0, n), dtype=np.int64)


class SubSpace:
    """A subspace of an ambient coordinate space, with its own coordinates."""

    def __init__(self, base, rows: np.ndarray, p: int):
        self.base, self.p = base, p
        self.rows = gf.row_basis(rows, p) if rows.shape[0] else rows
        self.reps = gf.mul(self.rows, base.reps, p) if self.rows.shape[0] else np.zeros((0, base.reps.shape[1]), dtype=np.int64)

    @property
    def dim(self) -> int:
        return self.rows.shape[0]

    def coords(self, v: np.ndarray) -> np.ndarray:
        c = self.base.coords(v)
        if self.dim == 0:
            if np.any(c):
                raise ValueError("class outside the relative subfunctor")
            return np.zeros(0, dtype=np.int64)
        x = gf.solve(self.rows.T.copy(), c, self.p)
        if x is None:
            raise ValueError("class outside the relative subfunctor")
        return x


class HomSpace:
    """Hom(X, Y) modulo an ideal: ambient coordinates, then quotient coordinates."""

    def __init__(self, amb_hom, ideal_rows: np.ndarray, p: int):
        self.amb = amb_hom
        self.p = p
        n = amb_hom.dim
        self.ideal = ideal_rows.reshape(-1, n) if n else np.zeros((0, 0), dtype=np.int64)
        self.q = gf.Quotient(n, self.ideal, p)
        if self.q.dim:
            self.reps = gf.mul(self.q.reps, amb_hom.reps, p)
        else:
            self.reps = np.zeros((0, amb_hom.raw), dtype=np.int64)

    @property
    def dim(self) -> int:
        return self.q.dim

    def coords(self, v: np.ndarray) -> np.ndarray:
        return self.q.coords(self.amb.coords(v))

    def in_ideal(self, v: np.ndarray) -> bool:
        return not np.any(self.coords(v))


# ---------------------------------------------------------------- ideals

class Ideal:
    """A two-sided ideal; ``coords(H, X, Y)`` spans I(X, Y) in ambient Hom coordinates."""

    def coords(self, amb, X, Y) -> np.ndarray:
        raise NotImplementedError


def _composites(amb, X, mid, Y, left_rows=None) -> np.ndarray:
    """span{h o f : f in Hom(X, mid) (or the given raw rows), h in Hom(mid, Y)} in Hom(X, Y) coordinates."""
    H = amb.hom(X, Y)
    fs = amb.hom(X, mid).reps if left_rows is None else left_rows
    hs = amb.hom(mid, Y).reps
    out = [H.coords(amb.compose(h, f, X, mid, Y)) for f in fs for h in hs]
    return _stack(out, H.dim)


class ObjectIdeal(Ideal):
    """Maps factoring through add of the given objects."""

    def __init__(self, objs):
        self.objs = list(objs)
        self._cache: dict = {}

    def coords(self, amb, X, Y):
        k = (amb.key(X), amb.key(Y))
        if k not in self._cache:
            H = amb.hom(X, Y)
            rows = [_composites(amb, X, S, Y) for S in self.objs]
            self._cache[k] = gf.row_basis(_stack(rows, H.dim), amb.p)
        return self._cache[k]


class GeneratedIdeal(Ideal):
    """Ideal generated by given morphism spaces gens = [(A, B, raw rows of Hom(A, B))]."""

    def __init__(self, gens):
        self.gens = [(a, b, r) for a, b, r in gens if r.shape[0]]
        self._left: dict = {}
        self._cache: dict = {}

    def _left_span(self, amb, X, i):
        k = (amb.key(X), i)
        if k not in self._left:
            a, b, rows = self.gens[i]
            fs = amb.hom(X, a).reps
            self._left[k] = [amb.compose(g, f, X, a, b) for f in fs for g in rows]
        return self._left[k]

    def coords(self, amb, X, Y):
        k = (amb.key(X), amb.key(Y))
        if k not in self._cache:
            H = amb.hom(X, Y)
            out = []
            for i, (a, b, _) in enumerate(self.gens):
                left = self._left_span(amb, X, i)
                if not left:
                    continue
                hs = amb.hom(b, Y).reps
                out += [H.coords(amb.compose(h, x, X, b, Y)) for x in left for h in hs]
            self._cache[k] = gf.row_basis(_stack(out, H.dim), amb.p)
        return self._cache[k]


class SumIdeal(Ideal):
    def __init__(self, parts):
        self.parts = list(parts)

    def coords(self, amb, X, Y):
        n = amb.hom(X, Y).dim
        return gf.row_basis(_stack([I.coords(amb, X, Y) for I in self.parts], n), amb.p)


class IntersectionIdeal(Ideal):
    def __init__(self, parts):
        self.parts = list(parts)

    def coords(self, amb, X, Y):
        n = amb.hom(X, Y).dim
        cur = np.eye(n, dtype=np.int64)
        for I in self.parts:
            cur = gf.intersect(cur, I.coords(amb, X, Y), amb.p)
        return cur


# ---------------------------------------------------------------- handles

@dataclass(eq=False)
class CategoryHandle:
    amb: object
    objs: list
    tag: str
    name: str = ""
    proj: set = field(default_factory=set)
    inj: set = field(default_factory=set)
    ideal: Ideal | None = None
    killed: list = field(default_factory=list)
    relative: tuple | None = None  # ("injective"|"projective", objects)
    parent: "CategoryHandle | None" = None
    flags: dict = field(default_factory=dict)

    def __post_init__(self):
        self.p = self.amb.p
        self._hom: dict = {}
        self._ext: dict = {}
        self.index = {self.amb.key(X): i for i, X in enumerate(self.objs)}

    def __len__(self) -> int:
        return len(self.objs)

    # Hom and E

    def hom(self, X, Y) -> HomSpace:
        k = (self.amb.key(X), self.amb.key(Y))
        h = self._hom.get(k)
        if h is None:
            H = self.amb.hom(X, Y)
            rows = self.ideal.coords(self.amb, X, Y) if self.ideal is not None else np.zeros((0, H.dim), dtype=np.int64)
            h = self._hom[k] = HomSpace(H, rows, self.p)
        return h

    def ext(self, Z, X):
        k = (self.amb.key(Z), self.amb.key(X))
        e = self._ext.get(k)
        if e is None:
            base = self.amb.ext(Z, X)
            e = base if self.relative is None else SubSpace(base, self._relative_rows(Z, X, base), self.p)
            self._ext[k] = e
        return e

    def _relative_rows(self, Z, X, base) -> np.ndarray:
        side, T = self.relative
        if base.dim == 0:
            return np.zeros((0, 0), dtype=np.int64)
        cols = []
        for Tp in T:
            if side == "injective":
                E2 = self.amb.ext(Z, Tp)
                for g in self.amb.hom(X, Tp).reps:
                    cols.append(np.array([E2.coords(self.amb.ext_post(g, d, Z, X, Tp)) for d in base.reps]).reshape(base.dim, -1))
            else:
                E2 = self.amb.ext(Tp, X)
                for f in self.amb.hom(Tp, Z).reps:
                    cols.append(np.array([E2.coords(self.amb.ext_pre(d, f, Tp, Z, X)) for d in base.reps]).reshape(base.dim, -1))
        if not cols:
            return np.eye(base.dim, dtype=np.int64)
        big = np.concatenate(cols, axis=1)
        return gf.nullspace(big.T.copy(), self.p) if big.shape[1] else np.eye(base.dim, dtype=np.int64)

    def compose(self, g, f, X, Y, Z):
        return self.amb.compose(g, f, X, Y, Z)

    def identity(self, X):
        return self.amb.identity(X)

    def is_zero_object(self, X) -> bool:
        if self.amb.is_zero(X):
            return True
        return self.hom(X, X).dim == 0

    def ids(self, idx) -> list:
        return [self.objs[i] for i in idx]

    def name_of(self, i: int) -> str:
        return f"X{i + 1}"

    def dump(self, i: int) -> str:
        return self.amb.dump(self.objs[i])

    def find(self, X) -> int | None:
        return self.index.get(self.amb.key(X))

    def proj_inj(self) -> set:
        return self.proj & self.inj


# ---------------------------------------------------------------- residues and decomposition

def residue_functional(H, comp, p: int) -> np.ndarray:
    """Linear form on a local endomorphism algebra vanishing on its radical.

    Uses the trace of left multiplication, so needs p > dim.
    """
    n = H.dim
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    if p <= n:
        raise ValueError(f"field characteristic {p} too small for an endomorphism algebra of dimension {n}; use a larger prime")
    tr = np.zeros(n, dtype=np.int64)
    for i, b in enumerate(H.reps):
        L = np.array([H.coords(comp(b, c)) for c in H.reps])  # rows: b o c_j
        tr[i] = int(np.trace(L)) % p
    return (tr * gf.inv_scalar(n, p)) % p


def radical_rows(H, comp, p: int) -> np.ndarray:
    lam = residue_functional(H, comp, p)
    if H.dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    return gf.nullspace(lam.reshape(1, -1), p)


class Decomposer:
    """Multiplicities of known indecomposables in an ambient object."""

    def __init__(self, amb, cands):
        self.amb = amb
        self.cands = list(cands)
        self.profiles = [amb.profile(amb.minimal(L)) for L in self.cands]
        self._res = {}

    def residue(self, i):
        if i not in self._res:
            L = self.cands[i]
            H = self.amb.hom(L, L)
            self._res[i] = residue_functional(H, lambda g, f: self.amb.compose(g, f, L, L, L), self.amb.p)
        return self._res[i]

    def multiplicities(self, Y) -> list[int]:
        amb = self.amb
        prof = amb.profile(amb.minimal(Y))
        out = []
        for i, L in enumerate(self.cands):
            if any(prof[k] < c for k, c in self.profiles[i].items()):
                out.append(0)
                continue
            to, back = amb.hom(L, Y), amb.hom(Y, L)
            if to.dim == 0 or back.dim == 0:
                out.append(0)
                continue
            lam = self.residue(i)
            HL = amb.hom(L, L)
            M = np.array([[int(lam @ HL.coords(amb.compose(g, f, L, Y, L)) % amb.p) for f in to.reps]
                          for g in back.reps], dtype=np.int64)
            out.append(gf.rank(M, amb.p))
        total = Counter()
        for m, pr in zip(out, self.profiles):
            for k, c in pr.items():
                total[k] += m * c
        if +total != +prof:
            raise ValueError("object is not a sum of the candidate indecomposables")
        return out

    def summands(self, Y) -> list[int]:
        return [i for i, m in enumerate(self.multiplicities(Y)) for _ in range(m)]


def in_add(amb, Y, objs) -> bool:
    if amb.is_zero(amb.minimal(Y)):
        return True
    try:
        Decomposer(amb, objs).multiplicities(Y)
    except ValueError:
        return False
    return True


# ---------------------------------------------------------------- approximations

@dataclass
class Approximation:
    obj: object          # the source/target object built as a direct sum
    map: np.ndarray      # raw morphism
    summands: list       # objects in the direct sum, in order


def _approx(amb, X, targets, left: bool) -> Approximation:
    cands = []
    for T in targets:
        H = amb.hom(X, T) if left else amb.hom(T, X)
        for b in H.reps:
            cands.append((T, b))

    def spans(chosen):
        ok = True
        for S in targets:
            H = amb.hom(X, S) if left else amb.hom(S, X)
            if H.dim == 0:
                continue
            rows = []
            for k in chosen:
                T, b = cands[k]
                if left:
                    for h in amb.hom(T, S).reps:
                        rows.append(H.coords(amb.compose(h, b, X, T, S)))
                else:
                    for h in amb.hom(S, T).reps:
                        rows.append(H.coords(amb.compose(b, h, S, T, X)))
            if gf.rank(_stack(rows, H.dim), amb.p) < H.dim:
                ok = False
                break
        return ok

    chosen = list(range(len(cands)))
    for k in reversed(range(len(cands))):
        trial = [c for c in chosen if c != k]
        if spans(trial):
            chosen = trial
    summ = [cands[k][0] for k in chosen]
    S, incs, pros = amb.direct_sum(summ)
    m = None
    for j, k in enumerate(chosen):
        _, b = cands[k]
        term = amb.compose(incs[j], b, X, summ[j], S) if left else amb.compose(b, pros[j], S, summ[j], X)
        m = term if m is None else (m + term) % amb.p
    if m is None:
        m = np.zeros((amb.hom(X, S) if left else amb.hom(S, X)).raw, dtype=np.int64)
    return Approximation(S, m % amb.p, summ)


def left_approximation(amb, X, targets) -> Approximation:
    """Minimal left add(targets)-approximation X -> E_X."""
    return _approx(amb, X, list(targets), True)


def right_approximation(amb, X, sources) -> Approximation:
    """Minimal right add(sources)-approximation E_X -> X."""
    return _approx(amb, X, list(sources), False)


def approximation_property(amb, X, ap: Approximation, targets, left: bool = True) -> bool:
    """Every map X -> T (T -> X) factors through the approximation."""
    for T in targets:
        H = amb.hom(X, T) if left else amb.hom(T, X)
        if H.dim == 0:
            continue
        if left:
            rows = [H.coords(amb.compose(h, ap.map, X, ap.obj, T)) for h in amb.hom(ap.obj, T).reps]
        else:
            rows = [H.coords(amb.compose(ap.map, h, T, ap.obj, X)) for h in amb.hom(T, ap.obj).reps]
        if gf.rank(_stack(rows, H.dim), amb.p) < H.dim:
            return False
    return True


# ---------------------------------------------------------------- building handles

def _harp_objects(alg: PathAlgebra) -> list[TwoTermComplex]:
    return enumerate_indec_harp(alg)


def bongartz_cocompletion(amb, objs, frozen) -> tuple[set, list]:
    """Injectives of the perpendicular category: summands of E_X and the cone E'_X.

    Returns the injective indices and the triangles (X, approximation, cone) per projective.
    """
    dec = Decomposer(amb, objs)
    inj: set = set()
    tri = []
    for v in range(amb.alg.nv):
        X = stalk(amb.alg, v)
        ap = left_approximation(amb, X, frozen)
        out = amb.cone(ap.map, X, ap.obj)
        assert out is not None, "cone of a stalk approximation is two-term"
        C = out[0]
        inj.update(dec.summands(ap.obj))
        inj.update(dec.summands(C))
        tri.append((X, ap, C))
    return inj, tri


def bongartz_completion_dual(amb, objs, frozen_shifted) -> tuple[set, list]:
    """Projectives of an E-perpendicular category: summands of Sigma E_X and the cocone."""
    dec = Decomposer(amb, objs)
    proj: set = set()
    tri = []
    for v in range(amb.alg.nv):
        X = shifted_stalk(amb.alg, v)
        ap = right_approximation(amb, X, frozen_shifted)
        out = amb.cocone(ap.map, ap.obj, X)
        assert out is not None, "cocone of a shifted stalk approximation is two-term"
        K = out[0]
        proj.update(dec.summands(ap.obj))
        proj.update(dec.summands(K))
        tri.append((X, ap, K))
    return proj, tri


def build_category(alg: PathAlgebra, tag: str = HARP, idempotent=(), name: str = "") -> CategoryHandle:
    """Handle of two-term complexes over alg filtered by a perpendicularity condition."""
    amb = HarpAmbient(alg)
    allobjs = _harp_objects(alg)
    e = [alg.vertex(v) for v in idempotent]
    if tag == HARP:
        objs = allobjs
    elif tag == PERP:
        objs = [X for X in allobjs if all(amb.ext(X, stalk(alg, b)).dim == 0 for b in e)]
    elif tag == E_PERP:
        objs = [X for X in allobjs if all(amb.hom(stalk(alg, b), X).dim == 0 for b in e)]
    else:
        raise ValueError(f"unknown tag {tag} for complexes")
    h = CategoryHandle(amb, objs, tag, name or tag)
    stalks = {h.find(stalk(alg, v)) for v in range(alg.nv)} - {None}
    shifts = {h.find(shifted_stalk(alg, v)) for v in range(alg.nv)} - {None}
    if tag == HARP:
        h.proj, h.inj = stalks, shifts
    elif tag == PERP:
        h.proj = stalks
        h.inj, h.flags["bongartz"] = bongartz_cocompletion(amb, objs, [stalk(alg, b) for b in e])
    else:
        h.inj = shifts
        h.proj, h.flags["bongartz"] = bongartz_completion_dual(amb, objs, [shifted_stalk(alg, b) for b in e])
    h.flags["idempotent"] = tuple(e)
    return h


def module_category(alg: PathAlgebra, objs=None, tag: str = MODCAT, name: str = "",
                    relative: tuple | None = None) -> CategoryHandle:
    """Extension-closed subcategory of mod alg with projectives/injectives read off E."""
    amb = ModuleAmbient(alg)
    objs = enumerate_indec_modules(alg) if objs is None else list(objs)
    h = CategoryHandle(amb, objs, tag, name or tag, relative=relative)
    mark_by_vanishing(h)
    return h


def mark_by_vanishing(h: CategoryHandle):
    """Projectives: E(X, -) = 0 on all objects; injectives: E(-, X) = 0."""
    objs = h.objs
    h.proj = {i for i, X in enumerate(objs) if all(h.ext(X, Y).dim == 0 for Y in objs)}
    h.inj = {i for i, X in enumerate(objs) if all(h.ext(Y, X).dim == 0 for Y in objs)}


# ---------------------------------------------------------------- quotients

def _rebuild(h: CategoryHandle, ideal: Ideal, extra_killed=()) -> CategoryHandle:
    new_ideal = ideal if h.ideal is None else SumIdeal([h.ideal, ideal])
    q = CategoryHandle(h.amb, list(h.objs), h.tag, h.name, ideal=new_ideal,
                       killed=list(h.killed) + list(extra_killed), relative=h.relative, parent=h,
                       flags=dict(h.flags))
    keep = [i for i, X in enumerate(h.objs) if not q.is_zero_object(X)]
    q.killed += [h.objs[i] for i in range(len(h.objs)) if i not in keep]
    q.objs = [h.objs[i] for i in keep]
    q.index = {q.amb.key(X): j for j, X in enumerate(q.objs)}
    remap = {i: j for j, i in enumerate(keep)}
    q.proj = {remap[i] for i in h.proj if i in remap}
    q.inj = {remap[i] for i in h.inj if i in remap}
    q.flags["from"] = keep
    return q


def ideal_J(h: CategoryHandle) -> GeneratedIdeal:
    """Ideal generated by morphisms with injective domain and projective codomain."""
    gens = []
    for i in sorted(h.inj):
        for j in sorted(h.proj):
            I, P = h.objs[i], h.objs[j]
            gens.append((I, P, h.amb.hom(I, P).reps))
    return GeneratedIdeal(gens)


def ideal_through(h: CategoryHandle, idx) -> ObjectIdeal:
    return ObjectIdeal([h.objs[i] for i in idx])


def ideal_is_zero(h: CategoryHandle, ideal: Ideal) -> bool:
    return all(ideal.coords(h.amb, X, Y).shape[0] == 0 for X in h.objs for Y in h.objs)


def quotient(h: CategoryHandle, ideal: Ideal) -> CategoryHandle:
    return _rebuild(h, ideal)


def quotient_by_objects(h: CategoryHandle, objs) -> CategoryHandle:
    """Additive quotient by maps factoring through add(objs).

    Flags ``induced_structure`` false unless every object is projective-injective.
    """
    objs = list(objs)
    idx = [h.find(X) for X in objs]
    pi = h.proj_inj()
    q = _rebuild(h, ObjectIdeal(objs), extra_killed=[X for X, i in zip(objs, idx) if i is None])
    q.flags["induced_structure"] = all(i is None or i in pi for i in idx)
    return q


# ---------------------------------------------------------------- exactness

def _rank(m: np.ndarray, p: int) -> int:
    return gf.rank(m, p) if m.size else 0


@dataclass
class ExactnessResult:
    ok: bool
    failures: list  # (position name, detail)


def _exact_at(a: np.ndarray, b: np.ndarray, dim_mid: int, p: int) -> tuple[bool, str]:
    """a: V1 -> V2 and b: V2 -> V3 as matrices acting on column vectors."""
    if dim_mid == 0:
        return True, ""
    comp = gf.mul(b, a, p) if a.size and b.size else np.zeros((b.shape[0], a.shape[1]), dtype=np.int64)
    if np.any(comp):
        return False, "composite nonzero"
    ra = _rank(a, p)
    rb = _rank(b, p)
    if ra != dim_mid - rb:
        return False, f"rank {ra} != nullity {dim_mid - rb}"
    return True, ""


def _matrix(src, dst_space, fn) -> np.ndarray:
    cols = [dst_space.coords(fn(v)) for v in src]
    if not cols:
        return np.zeros((dst_space.dim, 0), dtype=np.int64)
    return np.array(cols, dtype=np.int64).reshape(len(cols), dst_space.dim).T


def six_term_check(h: CategoryHandle, Z, X, delta, W, covariant: bool = True) -> ExactnessResult:
    """Exactness of the long sequences attached to the conflation realizing delta."""
    amb, p = h.amb, h.p
    M, f, g = amb.realize(delta, Z, X)
    fails = []
    if covariant:
        Hx, Hm, Hz = h.hom(W, X), h.hom(W, M), h.hom(W, Z)
        Ex, Em, Ez = h.ext(W, X), h.ext(W, M), h.ext(W, Z)
        m1 = _matrix(Hx.reps, Hm, lambda v: amb.compose(f, v, W, X, M))
        m2 = _matrix(Hm.reps, Hz, lambda v: amb.compose(g, v, W, M, Z))
        m3 = _matrix(Hz.reps, Ex, lambda v: amb.ext_pre(delta, v, W, Z, X))
        m4 = _matrix(Ex.reps, Em, lambda e: amb.ext_post(f, e, W, X, M))
        m5 = _matrix(Em.reps, Ez, lambda e: amb.ext_post(g, e, W, M, Z))
        # connecting map must vanish on the ideal
        bad = [r for r in _ideal_raw(h, W, Z) if np.any(Ex.coords(amb.ext_pre(delta, r, W, Z, X)))]
        names = ["Hom(W,M)", "Hom(W,Z)", "E(W,X)", "E(W,M)"]
    else:
        Hz, Hm, Hx = h.hom(Z, W), h.hom(M, W), h.hom(X, W)
        Ez, Em, Ex = h.ext(Z, W), h.ext(M, W), h.ext(X, W)
        m1 = _matrix(Hz.reps, Hm, lambda v: amb.compose(v, g, M, Z, W))
        m2 = _matrix(Hm.reps, Hx, lambda v: amb.compose(v, f, X, M, W))
        m3 = _matrix(Hx.reps, Ez, lambda v: amb.ext_post(v, delta, Z, X, W))
        m4 = _matrix(Ez.reps, Em, lambda e: amb.ext_pre(e, g, M, Z, W))
        m5 = _matrix(Em.reps, Ex, lambda e: amb.ext_pre(e, f, X, M, W))
        bad = [r for r in _ideal_raw(h, X, W) if np.any(Ez.coords(amb.ext_post(r, delta, Z, X, W)))]
        names = ["Hom(M,W)", "Hom(X,W)", "E(Z,W)", "E(M,W)"]
    if bad:
        fails.append(("connecting", "not defined on the quotient"))
    mids = [m1.shape[0], m2.shape[0], m3.shape[0], m4.shape[0]]
    for name, a, b, d in zip(names, [m1, m2, m3, m4], [m2, m3, m4, m5], mids):
        ok, why = _exact_at(a, b, d, p)
        if not ok:
            fails.append((name, why))
    return ExactnessResult(not fails, fails)


def _ideal_raw(h: CategoryHandle, X, Y) -> list:
    if h.ideal is None:
        return []
    H = h.amb.hom(X, Y)
    rows = h.ideal.coords(h.amb, X, Y)
    return [gf.mul(r.reshape(1, -1), H.reps, h.p)[0] for r in rows] if rows.shape[0] else []


def conflation_classes(h: CategoryHandle):
    """(Z, X, delta) for basis classes and the sum of basis classes of every E(Z, X)."""
    objs = h.objs + list(h.killed)
    for Z in objs:
        for X in objs:
            E = h.ext(Z, X)
            for d in E.reps:
                yield Z, X, d % h.p
            if E.dim > 1:
                yield Z, X, E.reps.sum(axis=0) % h.p


def verify_six_term(h: CategoryHandle, tests=None) -> list[str]:
    """Report lines for every (conflation, test object) pair, both variances."""
    tests = h.objs if tests is None else tests
    lines = []
    total = bad = 0
    for Z, X, d in conflation_classes(h):
        for W in tests:
            for cov in (True, False):
                r = six_term_check(h, Z, X, d, W, cov)
                total += 1
                if not r.ok:
                    bad += 1
                    lines.append(f"CHECK six-term FAIL {h.amb.dump(X)} -> ? -> {h.amb.dump(Z)} "
                                 f"test {h.amb.dump(W)} {'cov' if cov else 'contra'} {r.failures}")
    lines.append(f"CHECK six-term {'PASS' if bad == 0 else 'FAIL'} {total - bad}/{total}")
    return lines


# ---------------------------------------------------------------- 0-Auslander

def verify_0_auslander(h: CategoryHandle) -> tuple[bool, list[str]]:
    amb = h.amb
    lines = []
    proj = [h.objs[i] for i in sorted(h.proj)] + list(h.killed)
    inj = [h.objs[i] for i in sorted(h.inj)] + list(h.killed)
    pi = [h.objs[i] for i in sorted(h.proj_inj())] + list(h.killed)
    ok_all = True

    def record(name, ok, detail=""):
        nonlocal ok_all
        ok_all &= ok
        lines.append(f"CHECK {name} {'PASS' if ok else 'FAIL'}{' ' + detail if detail else ''}")

    everything = h.objs + list(h.killed)
    bad_p = [h.name_of(i) for i in sorted(h.proj) if any(h.ext(h.objs[i], Y).dim for Y in everything)]
    record("projectives-marked", not bad_p, ",".join(bad_p))
    bad_i = [h.name_of(i) for i in sorted(h.inj) if any(h.ext(Y, h.objs[i]).dim for Y in everything)]
    record("injectives-marked", not bad_i, ",".join(bad_i))
    record("nonempty-projectives", bool(h.proj) or not h.objs)
    for i, X in enumerate(h.objs):
        ap = right_approximation(amb, X, proj)
        out = amb.cocone(ap.map, ap.obj, X)
        ok = out is not None and in_add(amb, out[0], proj)
        record(f"resolution {h.name_of(i)}", ok, "" if ok else "syzygy not projective")
    for i in sorted(h.proj):
        P = h.objs[i]
        ap = left_approximation(amb, P, pi)
        out = amb.cone(ap.map, P, ap.obj)
        ok = out is not None and in_add(amb, out[0], inj)
        record(f"dominant-dimension {h.name_of(i)}", ok, "" if ok else "cokernel not injective")
    return ok_all, lines


# ---------------------------------------------------------------- silting and mutation

def _rigid_table(h: CategoryHandle):
    n = len(h.objs)
    return np.array([[h.ext(h.objs[i], h.objs[j]).dim == 0 for j in range(n)] for i in range(n)], dtype=bool)


def enumerate_silting(h: CategoryHandle) -> list[tuple[int, ...]]:
    """All rigid sets of indecomposables of size = number of projectives."""
    size = len(h.proj)
    ok = _rigid_table(h)
    comp = ok & ok.T
    n = len(h.objs)
    out = []

    def extend(cur, start):
        if len(cur) == size:
            out.append(tuple(cur))
            return
        for k in range(start, n):
            if comp[k, k] and all(comp[k, c] for c in cur):
                extend(cur + [k], k + 1)

    extend([], 0)
    return out


def is_silting(h: CategoryHandle, S) -> bool:
    S = list(S)
    return len(set(S)) == len(h.proj) and all(
        h.ext(h.objs[a], h.objs[b]).dim == 0 for a in S for b in S)


def _single_summand(h: CategoryHandle, Y):
    amb = h.amb
    cands = h.objs + list(h.killed)
    try:
        mult = Decomposer(amb, cands).multiplicities(Y)
    except ValueError:
        return None
    live = [(i, m) for i, m in enumerate(mult[:len(h.objs)]) if m]
    if len(live) != 1 or live[0][1] != 1:
        return None
    return live[0][0]


def mutate(h: CategoryHandle, S, x: int) -> tuple[tuple[int, ...], str]:
    """Replace summand x of silting S by its exchange partner."""
    S = tuple(sorted(S))
    if x not in S:
        raise ValueError("summand not in S")
    R = [h.objs[i] for i in S if i != x] + list(h.killed)
    X = h.objs[x]
    amb = h.amb
    results = []
    ap = left_approximation(amb, X, R)
    out = amb.cone(ap.map, X, ap.obj)
    if out is not None:
        y = _single_summand(h, out[0])
        if y is not None and y not in S and is_silting(h, [i for i in S if i != x] + [y]):
            results.append((y, "left"))
    ap = right_approximation(amb, X, R)
    out = amb.cocone(ap.map, ap.obj, X)
    if out is not None:
        y = _single_summand(h, out[0])
        if y is not None and y not in S and is_silting(h, [i for i in S if i != x] + [y]):
            results.append((y, "right"))
    if len(results) != 1:
        raise AssertionError(f"expected exactly one exchange conflation, found {len(results)}")
    y, side = results[0]
    return tuple(sorted([i for i in S if i != x] + [y])), side


def mutation_graph(h: CategoryHandle, silting=None) -> dict:
    silting = enumerate_silting(h) if silting is None else silting
    graph = {S: set() for S in silting}
    frozen = h.proj_inj()  # summands of every silting object; never mutated
    for S in silting:
        for x in S:
            if x in frozen:
                continue
            T, _ = mutate(h, S, x)
            graph[S].add(T)
    return graph


def tilting_certificate(h: CategoryHandle, S) -> bool:
    """Conflation P -> S0 -> S1 with P the projective generator and S0, S1 in add S."""
    amb = h.amb
    objs = [h.objs[i] for i in S] + list(h.killed)
    for i in sorted(h.proj):
        P = h.objs[i]
        ap = left_approximation(amb, P, objs)
        out = amb.cone(ap.map, P, ap.obj)
        if out is None or not in_add(amb, out[0], objs):
            return False
    return True


# ---------------------------------------------------------------- AR quiver

def ar_quiver(h: CategoryHandle) -> dict[tuple[int, int], int]:
    """Arrow multiplicities dim rad/rad^2 between listed objects."""
    amb, p = h.amb, h.p
    objs = h.objs
    n = len(objs)
    rad = {}
    for i in range(n):
        for j in range(n):
            H = h.hom(objs[i], objs[j])
            if i == j:
                comp = lambda g, f, X=objs[i]: amb.compose(g, f, X, X, X)
                rows = radical_rows(H, comp, p)
            else:
                rows = np.eye(H.dim, dtype=np.int64)
            rad[i, j] = gf.mul(rows, H.reps, p) if rows.shape[0] else np.zeros((0, 0), dtype=np.int64)
    arrows = {}
    for i in range(n):
        for j in range(n):
            H = h.hom(objs[i], objs[j])
            r1 = rad[i, j].shape[0]
            if r1 == 0:
                continue
            sq = []
            for k in range(n):
                for a in rad[i, k]:
                    for b in rad[k, j]:
                        sq.append(H.coords(amb.compose(b, a, objs[i], objs[k], objs[j])))
            r2 = gf.rank(_stack(sq, H.dim), p) if sq else 0
            if r1 - r2:
                arrows[i, j] = r1 - r2
    return arrows


def to_dot(h: CategoryHandle, arrows: dict) -> str:
    lines = ["digraph {"]
    for i in range(len(h.objs)):
        lines.append(f'  "{h.name_of(i)}" [tooltip="{h.dump(i)}"];')
    for (i, j), m in sorted(arrows.items()):
        lines.append(f'  "{h.name_of(i)}" -> "{h.name_of(j)}" [label={m}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_isomorphic(n1: int, a1: dict, n2: int, a2: dict, fixed: dict | None = None) -> dict | None:
    """A bijection carrying the weighted digraph a1 onto a2 (backtracking)."""
    if n1 != n2:
        return None
    outd = lambda a, n: [sorted(m for (i, j), m in a.items() if i == v) for v in range(n)]
    ind = lambda a, n: [sorted(m for (i, j), m in a.items() if j == v) for v in range(n)]
    sig1 = list(zip(map(tuple, outd(a1, n1)), map(tuple, ind(a1, n1))))
    sig2 = list(zip(map(tuple, outd(a2, n2)), map(tuple, ind(a2, n2))))
    order = sorted(range(n1), key=lambda v: -len(sig1[v][0]) - len(sig1[v][1]))
    mapping = dict(fixed or {})

    def consistent(v, w):
        for (i, j), m in a1.items():
            if i == v and j in mapping and a2.get((w, mapping[j])) != m:
                return False
            if j == v and i in mapping and a2.get((mapping[i], w)) != m:
                return False
        if a1.get((v, v)) != a2.get((w, w)):
            return False
        return True

    def count_edges(mp):
        return all(a2.get((mp[i], mp[j])) == m for (i, j), m in a1.items()) and len(a1) == len(a2)

    def go(k):
        if k == len(order):
            return count_edges(mapping)
        v = order[k]
        if v in mapping:
            return consistent(v, mapping[v]) and go(k + 1)
        used = set(mapping.values())
        for w in range(n2):
            if w in used or sig1[v] != sig2[w] or not consistent(v, w):
                continue
            mapping[v] = w
            if go(k + 1):
                return True
            del mapping[v]
        return False

    return dict(mapping) if go(0) else None
