"""The truncation functor F, the walks categories and their verification."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import gf
from .algebra import (
    Module, PathAlgebra, enumerate_indec_modules, min_projective_presentation, string_module,
)
from .extricat import (
    HARP, PERP, WALKS, CategoryHandle, Decomposer, ModuleAmbient, build_category,
    graph_isomorphic, ideal_J, ideal_through, ar_quiver, module_category, quotient,
    quotient_by_objects,
)
from .quiver import blossom, enumerate_strings
from .twoterm import HarpAmbient, TwoTermComplex, Truncation, cohomology, stalk


def blossom_algebra(alg: PathAlgebra) -> PathAlgebra:
    return PathAlgebra(blossom(alg.pres), alg.p)


def blossom_vertices(algb: PathAlgebra) -> list[int]:
    return [algb.vidx[v] for v in sorted(algb.pres.blossom_vertices, key=algb.vidx.get)]


def sink_blossom_vertices(algb: PathAlgebra) -> list[int]:
    sinks = set(algb.pres.sinks())
    return [v for v in blossom_vertices(algb) if algb.vertices[v] in sinks]


def perp_handle(alg: PathAlgebra) -> CategoryHandle:
    """The perpendicular category of the shifted blossom projectives over the blossoming."""
    algb = blossom_algebra(alg)
    return build_category(algb, PERP, blossom_vertices(algb), name=f"perp/{alg.pres.name}")


# ---------------------------------------------------------------- the functor F

@dataclass
class FunctorData:
    source: CategoryHandle
    trunc: Truncation
    target: CategoryHandle
    images: list = field(default_factory=list)  # summand indices in target, per source object
    _mats: dict = field(default_factory=dict)

    def obj(self, X) -> TwoTermComplex:
        return self.trunc.obj(X)

    def matrix(self, i: int, j: int) -> np.ndarray:
        """Hom(X_i, X_j) in ambient coordinates -> Hom(F X_i, F X_j) coordinates."""
        k = (i, j)
        if k not in self._mats:
            h, T = self.source, self.target
            X, Y = h.objs[i], h.objs[j]
            FX, FY = self.obj(X), self.obj(Y)
            H = h.amb.hom(X, Y)
            K = T.amb.hom(FX, FY)
            cols = []
            for r in H.reps:
                comps = h.amb.unpack(X, Y, r)
                cols.append(K.coords(T.amb.pack(FX, FY, self.trunc.mor(X, Y, comps))))
            self._mats[k] = np.array(cols, dtype=np.int64).reshape(H.dim, K.dim).T
        return self._mats[k]


def functor_F(h: CategoryHandle, killed) -> FunctorData:
    """- (x) A/(e) on a handle of two-term complexes, with images matched to the target."""
    alg = h.amb.alg
    tr = Truncation(alg, killed)
    if tr.tgt.dim == 0 and tr.tgt.nv:
        raise ValueError("empty codomain algebra")
    target = build_category(tr.tgt, HARP, name=f"harp/{tr.tgt.pres.name}")
    dec = Decomposer(target.amb, target.objs)
    F = FunctorData(h, tr, target)
    F.images = [dec.summands(tr.obj(X)) for X in h.objs]
    return F


def _same_rowspace(a: np.ndarray, b: np.ndarray, n: int, p: int) -> bool:
    if n == 0:
        return True
    a, b = a.reshape(-1, n), b.reshape(-1, n)
    ra, rb = gf.rank(a, p) if a.size else 0, gf.rank(b, p) if b.size else 0
    both = np.concatenate([a, b]) if (a.size or b.size) else np.zeros((0, n), dtype=np.int64)
    rab = gf.rank(both, p) if both.size else 0
    return ra == rb == rab


def verify_equivalence_after_quotient(F: FunctorData, ideal=None) -> tuple[bool, list[str]]:
    """Essential surjectivity, fullness, kernel = J and E-dimensions, as report lines."""
    h, T = F.source, F.target
    p = h.p
    ideal = ideal_J(h) if ideal is None else ideal
    lines = []
    hit = sorted({k for img in F.images for k in img})
    ess = hit == list(range(len(T.objs)))
    lines.append(f"CHECK essentially-surjective {'PASS' if ess else 'FAIL'} hit={len(hit)}/{len(T.objs)}")
    full_bad, ker_bad, ext_bad = [], [], []
    for i, X in enumerate(h.objs):
        for j, Y in enumerate(h.objs):
            m = F.matrix(i, j)
            H = h.amb.hom(X, Y)
            tdim = m.shape[0]
            r = gf.rank(m, p) if m.size else 0
            if r != tdim:
                full_bad.append((i, j))
            ker = gf.nullspace(m, p) if H.dim else np.zeros((0, 0), dtype=np.int64)
            if not _same_rowspace(ker, ideal.coords(h.amb, X, Y), H.dim, p):
                ker_bad.append((i, j))
            if h.ext(X, Y).dim != T.amb.ext(F.obj(X), F.obj(Y)).dim:
                ext_bad.append((i, j))
    for name, bad in (("full", full_bad), ("kernel-equals-J", ker_bad), ("ext-dimensions", ext_bad)):
        detail = " ".join(f"{h.name_of(i)}->{h.name_of(j)}" for i, j in bad[:6])
        lines.append(f"CHECK {name} {'PASS' if not bad else 'FAIL'}{' ' + detail if detail else ''}")
    ok = ess and not (full_bad or ker_bad or ext_bad)
    return ok, lines


# ---------------------------------------------------------------- walks

def walk_strings(algb: PathAlgebra) -> list:
    """Non-simple strings starting and ending at blossom vertices."""
    bl = set(algb.pres.blossom_vertices)
    return [w for w in enumerate_strings(algb.pres)
            if w.letters and w.start in bl and w.end in bl]


def _module_sort(mods: list[Module]) -> list[Module]:
    return sorted(mods, key=Module.sort_key)


def walks_tilde(algb: PathAlgebra) -> CategoryHandle:
    """Modules whose minimal presentation admits no map to a shifted blossom projective."""
    harp = HarpAmbient(algb)
    bl = blossom_vertices(algb)
    objs = [M for M in enumerate_indec_modules(algb)
            if all(harp.ext(min_projective_presentation(M), stalk(algb, b)).dim == 0 for b in bl)]
    return module_category(algb, objs, name=f"walks-tilde/{algb.pres.name}")


def walks(algb: PathAlgebra, check: bool = True) -> CategoryHandle:
    """The category of walks, from the string filter; optionally checked against
    the quotient of walks_tilde by the sink blossom projectives."""
    objs = _module_sort([string_module(algb, w) for w in walk_strings(algb)])
    W = module_category(algb, objs, WALKS, name=f"walks/{algb.pres.name}")
    if check:
        ok, why = compare_walks_constructions(algb, W)
        if not ok:
            raise AssertionError(why)
    return W


def compare_walks_constructions(algb: PathAlgebra, W: CategoryHandle) -> tuple[bool, str]:
    Wt = walks_tilde(algb)
    sinks = [string_module(algb, w) for w in enumerate_strings(algb.pres)
             if not w.letters and algb.vidx[w.start] in sink_blossom_vertices(algb)]
    Q = quotient_by_objects(Wt, sinks)
    keys_w = {X.key for X in W.objs}
    keys_q = {X.key for X in Q.objs}
    if keys_w != keys_q:
        return False, f"object sets differ: {len(keys_w)} vs {len(keys_q)}"
    for X in W.objs:
        for Y in W.objs:
            if W.hom(X, Y).dim != Q.hom(X, Y).dim:
                return False, "Hom dimensions differ"
    return True, ""


@dataclass
class WalksReport:
    ok: bool
    lines: list
    walks: CategoryHandle
    quotient: CategoryHandle
    target: CategoryHandle
    bijection: dict


def presentation_functor_matrix(W: CategoryHandle, tr: Truncation, T: CategoryHandle, M, N) -> np.ndarray:
    """Hom_W(M, N) -> Hom(F P_M, F P_N): lift maps to minimal presentations, then truncate."""
    amb: ModuleAmbient = W.amb
    PM, PN = min_projective_presentation(M), min_projective_presentation(N)
    FM, FN = tr.obj(PM), tr.obj(PN)
    H = amb.hom(M, N)
    K = T.amb.hom(FM, FN)
    cols = []
    for r in H.reps:
        f0, f1 = amb.lift_to_resolutions(r, M, N)
        comps = tr.mor(PM, PN, {-1: f1, 0: f0})
        cols.append(K.coords(T.amb.pack(FM, FN, comps)))
    return np.array(cols, dtype=np.int64).reshape(H.dim, K.dim).T


def verify_walks_quotient(alg: PathAlgebra) -> WalksReport:
    algb = blossom_algebra(alg)
    p = alg.p
    W = walks(algb)
    lines = [f"CHECK walks-constructions-agree PASS objects={len(W.objs)}"]
    J = ideal_J(W)
    PI = ideal_through(W, W.proj_inj())
    same = all(_same_rowspace(J.coords(W.amb, X, Y), PI.coords(W.amb, X, Y), W.amb.hom(X, Y).dim, p)
               for X in W.objs for Y in W.objs)
    lines.append(f"CHECK J-equals-proj-inj-ideal {'PASS' if same else 'FAIL'}")
    Q = quotient(W, J)
    tr = Truncation(algb, blossom_vertices(algb))
    T = build_category(tr.tgt, HARP, name=f"harp/{alg.pres.name}")
    dec = Decomposer(T.amb, T.objs)
    images = [dec.summands(tr.obj(min_projective_presentation(M))) for M in Q.objs]
    bij = {i: img[0] for i, img in enumerate(images) if len(img) == 1}
    bij_ok = len(bij) == len(Q.objs) and sorted(bij.values()) == list(range(len(T.objs)))
    lines.append(f"CHECK bijection {'PASS' if bij_ok else 'FAIL'} {len(Q.objs)}->{len(T.objs)}")
    hom_ok = ext_ok = ar_ok = bij_ok
    if bij_ok:
        for i, M in enumerate(Q.objs):
            for j, N in enumerate(Q.objs):
                m = presentation_functor_matrix(W, tr, T, M, N)
                full = (gf.rank(m, p) if m.size else 0) == m.shape[0]
                ker = gf.nullspace(m, p) if m.shape[1] else np.zeros((0, 0), dtype=np.int64)
                kernel_ok = _same_rowspace(ker, J.coords(W.amb, M, N), m.shape[1], p)
                if not (full and kernel_ok and Q.hom(M, N).dim == T.hom(T.objs[bij[i]], T.objs[bij[j]]).dim):
                    hom_ok = False
                if Q.ext(M, N).dim != T.ext(T.objs[bij[i]], T.objs[bij[j]]).dim:
                    ext_ok = False
        aq, at = ar_quiver(Q), ar_quiver(T)
        ar_ok = all(at.get((bij[i], bij[j])) == m for (i, j), m in aq.items()) and len(aq) == len(at)
        ar_ok = ar_ok and graph_isomorphic(len(Q.objs), aq, len(T.objs), at) is not None
    lines.append(f"CHECK hom-functor {'PASS' if hom_ok else 'FAIL'}")
    lines.append(f"CHECK ext-dimensions {'PASS' if ext_ok else 'FAIL'}")
    lines.append(f"CHECK ar-quiver {'PASS' if ar_ok else 'FAIL'}")
    ok = same and bij_ok and hom_ok and ext_ok and ar_ok
    lines.append(f"EQUIV walks/{alg.pres.name} {'PASS' if ok else 'FAIL'} objects={len(W.objs)}->{len(Q.objs)} "
                 f"{'hom-ok' if hom_ok else 'hom-bad'} {'ext-ok' if ext_ok else 'ext-bad'}")
    return WalksReport(ok, lines, W, Q, T, bij)


def cohomology_matches_walks_tilde(h: CategoryHandle, Wt: CategoryHandle) -> bool:
    """H^0 sends the perpendicular handle bijectively onto walks_tilde."""
    dec = Decomposer(Wt.amb, Wt.objs)
    seen = []
    for X in h.objs:
        s = dec.summands(cohomology(X))
        if len(s) != 1:
            return False
        seen.append(s[0])
    return sorted(seen) == list(range(len(Wt.objs)))
