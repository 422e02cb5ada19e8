"""Command-line front end: enumeration, Hom/E queries, AR quivers, silting and verification."""
from __future__ import annotations

import argparse
import re
import sys
from importlib import resources
from pathlib import Path as FsPath

from . import gf
from .algebra import PathAlgebra, enumerate_indec_modules, projective
from .extricat import (
    E_PERP, HARP, PERP, CategoryHandle, IntersectionIdeal, ar_quiver, build_category,
    enumerate_silting, graph_isomorphic, ideal_J, ideal_is_zero, ideal_through, module_category,
    mutation_graph, quotient, to_dot, verify_0_auslander, verify_six_term,
)
from .frobexact import check_cluster_tilting, frobenius_report
from .functors import (
    blossom_algebra, blossom_vertices, functor_F, perp_handle, verify_equivalence_after_quotient,
    verify_walks_quotient, walks,
)
from .quiver import (
    BandError, InfiniteAlgebraError, NotGentleError, QuiverSyntaxError, blossom, format_quiver,
    parse_quiver, validate_gentle,
)
from .twoterm import egroup_bruteforce_dim

CATEGORIES = ("mod", "harp", "perp", "eperp", "walks")
CHECKS = ("gentle", "0auslander", "quotient", "functor-f", "walks", "index", "frobenius", "all")
CASES = ("a2", "n3", "a3rel", "pia2")


class InputError(Exception):
    pass


# ---------------------------------------------------------------- loading

def data_text(name: str) -> str:
    return resources.files("gentlecat").joinpath("data", name).read_text()


def load_algebra(path: str, p: int) -> PathAlgebra:
    try:
        text = FsPath(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from e
    try:
        pres = parse_quiver(text, FsPath(path).stem)
        bad = validate_gentle(pres)
        if bad:
            raise NotGentleError("; ".join(bad))
        return PathAlgebra(pres, p)
    except (QuiverSyntaxError, NotGentleError, InfiniteAlgebraError) as e:
        raise InputError(f"{path}: {e}") from e
    except ValueError as e:
        raise InputError(f"{path}: {e}") from e


def bundled(name: str, p: int = gf.DEFAULT_CHAR) -> PathAlgebra:
    return PathAlgebra(parse_quiver(data_text(f"{name}.quiv"), name), p)


def make_handle(alg: PathAlgebra, category: str, idempotent: str | None) -> CategoryHandle:
    idem = [v for v in (idempotent or "").split(",") if v]
    for v in idem:
        if v not in alg.vidx:
            raise InputError(f"unknown vertex {v} in --idempotent")
    try:
        if category == "mod":
            return module_category(alg, name=f"mod/{alg.pres.name}")
        if category == "harp":
            return build_category(alg, HARP, name=f"harp/{alg.pres.name}")
        if category == "perp":
            return build_category(alg, PERP, idem) if idem else perp_handle(alg)
        if category == "eperp":
            if not idem:
                raise InputError("--category eperp needs --idempotent")
            return build_category(alg, E_PERP, idem, name=f"eperp/{alg.pres.name}")
        return walks(blossom_algebra(alg))
    except BandError as e:
        raise InputError(f"algebra has bands ({e}); infinitely many indecomposables") from e


_TERM = re.compile(r"^(?:(\d+)\*)?X(\d+)$")


def parse_object(h: CategoryHandle, spec: str):
    """`X3+2*X5` -> the direct sum of listed objects."""
    parts = []
    for term in spec.replace(" ", "").split("+"):
        m = _TERM.match(term)
        if not m:
            raise InputError(f"bad object term {term!r}; expected like X3 or 2*X5")
        mult, k = int(m.group(1) or 1), int(m.group(2))
        if not 1 <= k <= len(h.objs):
            raise InputError(f"object X{k} out of range 1..{len(h.objs)}")
        parts += [h.objs[k - 1]] * mult
    if len(parts) == 1:
        return parts[0]
    return h.amb.direct_sum(parts)[0]


def _marks(h: CategoryHandle, i: int) -> str:
    tags = [t for t, s in (("proj", h.proj), ("inj", h.inj)) if i in s]
    return (" " + ",".join(tags)) if tags else ""


def indec_lines(h: CategoryHandle) -> list[str]:
    return [f"{h.name_of(i)} {h.dump(i)}{_marks(h, i)}" for i in range(len(h.objs))]


def ar_lines(h: CategoryHandle, arrows: dict) -> list[str]:
    return [f"{h.name_of(i)} -> {h.name_of(j)}" + (f" x{m}" if m > 1 else "")
            for (i, j), m in sorted(arrows.items())]


def mutation_dot(h: CategoryHandle, graph: dict) -> str:
    label = lambda S: "+".join(h.name_of(i) for i in S)
    lines = ["graph {"]
    for S in sorted(graph):
        lines.append(f'  "{label(S)}";')
    for S in sorted(graph):
        for T in sorted(graph[S]):
            if S < T:
                lines.append(f'  "{label(S)}" -- "{label(T)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def is_cycle(graph: dict) -> bool:
    n = len(graph)
    if n < 3 or any(len(v) != 2 for v in graph.values()):
        return False
    start = next(iter(graph))
    prev, cur, seen = None, start, 1
    while True:
        nxt = next(x for x in sorted(graph[cur]) if x != prev)
        if nxt == start:
            return seen == n
        prev, cur, seen = cur, nxt, seen + 1


def graphs_match(g1: dict, g2: dict) -> bool:
    """Mutation graphs isomorphic as undirected graphs."""
    def arrows(g):
        keys = sorted(g)
        pos = {S: k for k, S in enumerate(keys)}
        return len(keys), {(pos[S], pos[T]): 1 for S in keys for T in g[S]}
    n1, a1 = arrows(g1)
    n2, a2 = arrows(g2)
    return graph_isomorphic(n1, a1, n2, a2) is not None


# ---------------------------------------------------------------- checks

def check_gentle(alg: PathAlgebra) -> tuple[bool, list[str]]:
    bad = validate_gentle(alg.pres)
    return not bad, [f"CHECK gentle {'PASS' if not bad else 'FAIL'}"] + [f"  {b}" for b in bad]


def check_0auslander(alg: PathAlgebra) -> tuple[bool, list[str]]:
    ok_all, lines = True, []
    for label, h in (("harp", build_category(alg)), ("perp", perp_handle(alg)),
                     ("walks", walks(blossom_algebra(alg)))):
        ok, ls = verify_0_auslander(h)
        ok_all &= ok
        lines.append(f"CHECK 0-auslander {label} {'PASS' if ok else 'FAIL'} objects={len(h.objs)}")
        lines += ["  " + l for l in ls if " FAIL" in l]
    return ok_all, lines


def check_quotient(alg: PathAlgebra) -> tuple[bool, list[str]]:
    ok_all, lines = True, []
    for label, h in (("harp", build_category(alg)), ("walks", walks(blossom_algebra(alg)))):
        q = quotient(h, ideal_J(h))
        ls = verify_six_term(q)
        ok = ls[-1].split()[2] == "PASS"
        ok_all &= ok
        lines.append(f"CHECK six-term {label}/J {'PASS' if ok else 'FAIL'} {ls[-1].split()[-1]} "
                     f"objects={len(h.objs)}->{len(q.objs)}")
    return ok_all, lines


def check_functor_f(alg: PathAlgebra) -> tuple[bool, list[str]]:
    h = perp_handle(alg)
    F = functor_F(h, blossom_vertices(h.amb.alg))
    ok, lines = verify_equivalence_after_quotient(F)
    return ok, [f"CHECK functor-F {'PASS' if ok else 'FAIL'} objects={len(h.objs)}"] + ["  " + l for l in lines]


def check_walks(alg: PathAlgebra) -> tuple[bool, list[str]]:
    r = verify_walks_quotient(alg)
    return r.ok, r.lines


def check_index(alg: PathAlgebra) -> tuple[bool, list[str]]:
    ok, lines = frobenius_report(alg)
    keep = [l for l in lines if l.startswith(("INDEX", "CONFLATION", "T =")) or "cluster-tilting" in l]
    return ok, keep


def check_frobenius(alg: PathAlgebra) -> tuple[bool, list[str]]:
    return frobenius_report(alg)


CHECK_FUNCS = {
    "gentle": check_gentle, "0auslander": check_0auslander, "quotient": check_quotient,
    "functor-f": check_functor_f, "walks": check_walks, "index": check_index,
    "frobenius": check_frobenius,
}


# ---------------------------------------------------------------- bundled example cases

def _harp_case(alg: PathAlgebra, lines: list[str]) -> tuple[bool, CategoryHandle]:
    h = build_category(alg, name=f"harp/{alg.pres.name}")
    lines.append(f"HARP objects={len(h.objs)} proj={len(h.proj)} inj={len(h.inj)}")
    lines += ["  " + l for l in indec_lines(h)]
    arrows = ar_quiver(h)
    lines.append(f"AR arrows={sum(arrows.values())}")
    lines += ["  " + l for l in ar_lines(h, arrows)]
    J = ideal_J(h)
    jz = ideal_is_zero(h, J)
    lines.append(f"CHECK J-zero {'yes' if jz else 'no'}")
    ok, al = verify_0_auslander(h)
    lines.append(f"CHECK 0-auslander {'PASS' if ok else 'FAIL'}")
    six = verify_six_term(quotient(h, J))
    lines.append(six[-1].replace("six-term", "six-term harp/J"))
    ok &= six[-1].split()[2] == "PASS"
    S = enumerate_silting(h)
    g = mutation_graph(h, S)
    lines.append(f"SILTING count={len(S)} edges={sum(len(v) for v in g.values()) // 2} "
                 f"cycle={'yes' if is_cycle(g) else 'no'}")
    ebad = sum(1 for X in h.objs for Y in h.objs if h.ext(X, Y).dim != egroup_bruteforce_dim(X, Y))
    lines.append(f"CHECK E-closed-form-vs-bruteforce {'PASS' if not ebad else 'FAIL'}")
    return bool(ok and not ebad), h


def case_a2(p: int) -> tuple[bool, list[str]]:
    alg = bundled("a2", p)
    lines = ["CASE a2: path algebra of 1 -> 2"]
    ok, h = _harp_case(alg, lines)
    arrows = ar_quiver(h)
    path = {(k, k + 1): 1 for k in range(4)}
    iso = graph_isomorphic(5, arrows, 5, path) is not None
    lines.append(f"CHECK ar-is-path-graph {'PASS' if iso else 'FAIL'}")
    S = enumerate_silting(h)
    g = mutation_graph(h, S)
    good = len(h.objs) == 5 and len(S) == 5 and is_cycle(g)
    q = quotient(h, ideal_J(h))
    Sq = enumerate_silting(q)
    gq = mutation_graph(q, Sq)
    same = graphs_match(g, gq)
    lines.append(f"CHECK silting-preserved-by-quotient {'PASS' if same else 'FAIL'} {len(S)}->{len(Sq)}")
    return ok and iso and good and same, lines


def case_n3(p: int) -> tuple[bool, list[str]]:
    alg = bundled("n3", p)
    lines = ["CASE n3: cyclic quiver with 3 vertices, all length-2 paths zero"]
    ok, h = _harp_case(alg, lines)
    arrows = ar_quiver(h)
    jz = ideal_is_zero(h, ideal_J(h))
    lines.append(f"CHECK J-identically-zero {'PASS' if jz else 'FAIL'}")
    inj_ideal = ideal_through(h, h.inj)
    proj_ideal = ideal_through(h, h.proj)
    bad = quotient(h, IntersectionIdeal([inj_ideal, proj_ideal]))
    six = verify_six_term(bad)
    failed = six[-1].split()[2] == "FAIL"
    lines.append(f"NEGATIVE quotient by (I) cap (P): {six[-1].split()[-1]} exact")
    lines += ["  " + l for l in six[:-1][:1]]
    lines.append(f"CHECK negative-control-fails {'PASS' if failed else 'FAIL'}")
    good = len(h.objs) == 9 and sum(arrows.values()) == 12
    return ok and jz and failed and good, lines


def case_a3rel(p: int) -> tuple[bool, list[str]]:
    alg = bundled("a3rel", p)
    lines = ["CASE a3rel: 1 -a-> 2 -b-> 3 with relation a b"]
    ok, h = _harp_case(alg, lines)
    r = verify_walks_quotient(alg)
    W = r.walks
    lines.append(f"WALKS objects={len(W.objs)} proj={len(W.proj)} inj={len(W.inj)} "
                 f"proj-inj={len(W.proj_inj())}")
    lines += ["  " + l for l in indec_lines(W)]
    lines += r.lines
    lines.append(f"WALKS/J objects={len(r.quotient.objs)}")
    lines += ["  " + l for l in ar_lines(r.quotient, ar_quiver(r.quotient))]
    ok0, _ = verify_0_auslander(W)
    lines.append(f"CHECK 0-auslander walks {'PASS' if ok0 else 'FAIL'}")
    six = verify_six_term(r.quotient)
    lines.append(six[-1].replace("six-term", "six-term walks/J"))
    S, Sq = enumerate_silting(W), enumerate_silting(r.quotient)
    same = graphs_match(mutation_graph(W, S), mutation_graph(r.quotient, Sq))
    lines.append(f"SILTING walks={len(S)} walks/J={len(Sq)}")
    lines.append(f"CHECK silting-preserved-by-quotient {'PASS' if same else 'FAIL'}")
    P = perp_handle(alg)
    lines.append(f"PERP objects={len(P.objs)} proj={len(P.proj)} inj={len(P.inj)} proj-inj={len(P.proj_inj())}")
    okf, _ = check_functor_f(alg)
    lines.append(f"CHECK functor-F {'PASS' if okf else 'FAIL'}")
    good = len(W.objs) == 12 and len(W.proj_inj()) == 4 and len(r.quotient.objs) == 8
    return ok and r.ok and ok0 and okf and good and same and six[-1].split()[2] == "PASS", lines


def case_pia2(p: int) -> tuple[bool, list[str]]:
    lam, B = bundled("pia2", p), bundled("e62", p)
    lines = ["CASE pia2: preprojective algebra of A2, T = P1 + P2 + S1, End(T) against e62"]
    mods = enumerate_indec_modules(lam)
    h = module_category(lam)
    lines.append(f"MOD objects={len(mods)}")
    lines += ["  " + l for l in indec_lines(h)]
    S1 = next(M for M in mods if tuple(M.dims) == (1, 0))
    T = [projective(lam, 0), projective(lam, 1), S1]
    ok, fl = frobenius_report(lam, T, B)
    lines += fl
    E = build_category(B, E_PERP, ["1", "2"], name="eperp/e62")
    lines.append(f"EPERP e62 idempotent=1,2 objects={len(E.objs)}")
    lines += ["  " + l for l in indec_lines(E)]
    neg1 = not check_cluster_tilting(lam, T[:2])[0]
    neg2 = not check_cluster_tilting(lam, mods)[0]
    lines.append(f"CHECK negative-controls {'PASS' if neg1 and neg2 else 'FAIL'} (P1+P2, all modules)")
    return ok and len(mods) == 4 and len(E.objs) == 4 and neg1 and neg2, lines


CASE_FUNCS = {"a2": case_a2, "n3": case_n3, "a3rel": case_a3rel, "pia2": case_pia2}


def golden_path(case: str):
    return resources.files("gentlecat").joinpath("data", "golden", f"{case}.txt")


# ---------------------------------------------------------------- argument parsing

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gentlecat", description=__doc__)
    ap.add_argument("--field-char", type=int, default=gf.DEFAULT_CHAR, metavar="P",
                    help="prime characteristic of the ground field (default %(default)s)")
    sub = ap.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("validate", help="check a quiver file for gentleness")
    s.add_argument("file")

    s = sub.add_parser("blossom", help="print the blossoming quiver")
    s.add_argument("file")
    s.add_argument("-o", "--output")

    def with_category(s):
        s.add_argument("file")
        s.add_argument("--category", choices=CATEGORIES, required=True)
        s.add_argument("--idempotent", help="comma-separated vertex names")

    s = sub.add_parser("indecs", help="list indecomposable objects")
    with_category(s)

    s = sub.add_parser("hom", help="dimensions of Hom and E between objects like X3+2*X5")
    with_category(s)
    s.add_argument("X")
    s.add_argument("Y")

    s = sub.add_parser("ar", help="Auslander-Reiten quiver")
    with_category(s)
    s.add_argument("--quotient", choices=("inj-to-proj",))
    s.add_argument("--dot", metavar="OUT")

    s = sub.add_parser("silting", help="silting objects and mutation graph")
    with_category(s)
    s.add_argument("--mutation-graph", metavar="OUT")

    s = sub.add_parser("verify", help="run a verification battery")
    s.add_argument("file")
    s.add_argument("--check", choices=CHECKS, default="all")

    s = sub.add_parser("reproduce-paper", help="recompute the bundled example cases and compare with goldens")
    s.add_argument("--case", choices=CASES)
    s.add_argument("--write-golden", metavar="DIR", help="write reports into DIR instead of comparing")
    return ap


def run(args, out) -> int:
    p = args.field_char
    if not gf.is_prime(p):
        raise InputError(f"field characteristic {p} is not prime")
    emit = lambda line: print(line, file=out)

    if args.cmd == "reproduce-paper":
        cases = [args.case] if args.case else list(CASES)
        status = 0
        for c in cases:
            ok, lines = CASE_FUNCS[c](p)
            text = "\n".join(lines) + "\n"
            for l in lines:
                emit(l)
            if args.write_golden:
                FsPath(args.write_golden, f"{c}.txt").write_text(text)
                emit(f"GOLDEN {c} written")
            else:
                g = golden_path(c)
                same = g.is_file() and g.read_text() == text
                emit(f"GOLDEN {c} {'MATCH' if same else 'MISMATCH'}")
                ok &= same
            emit(f"RESULT {c} {'PASS' if ok else 'FAIL'}")
            status = status or (0 if ok else 1)
        return status

    alg = load_algebra(args.file, p)

    if args.cmd == "validate":
        emit(f"OK gentle: {len(alg.vertices)} vertices, {len(alg.pres.arrows)} arrows, dim {alg.dim}")
        return 0
    if args.cmd == "blossom":
        text = format_quiver(blossom(alg.pres))
        if args.output:
            FsPath(args.output).write_text(text)
        else:
            out.write(text)
        return 0
    if args.cmd == "verify":
        names = [c for c in CHECKS if c != "all"] if args.check == "all" else [args.check]
        status = 0
        for name in names:
            try:
                ok, lines = CHECK_FUNCS[name](alg)
            except BandError as e:
                raise InputError(f"algebra has bands ({e})") from e
            for l in lines:
                emit(l)
            emit(f"VERIFY {name} {'PASS' if ok else 'FAIL'}")
            status = status or (0 if ok else 1)
        return status

    h = make_handle(alg, args.category, args.idempotent)
    if args.cmd == "indecs":
        for l in indec_lines(h):
            emit(l)
        return 0
    if args.cmd == "hom":
        X, Y = parse_object(h, args.X), parse_object(h, args.Y)
        emit(f"dim Hom({args.X}, {args.Y}) = {h.hom(X, Y).dim}")
        emit(f"dim E({args.X}, {args.Y}) = {h.ext(X, Y).dim}")
        return 0
    if args.cmd == "ar":
        if args.quotient:
            h = quotient(h, ideal_J(h))
        arrows = ar_quiver(h)
        for l in ar_lines(h, arrows):
            emit(l)
        if args.dot:
            FsPath(args.dot).write_text(to_dot(h, arrows))
        return 0
    if args.cmd == "silting":
        S = enumerate_silting(h)
        for s in S:
            emit("+".join(h.name_of(i) for i in s))
        if args.mutation_graph:
            FsPath(args.mutation_graph).write_text(mutation_dot(h, mutation_graph(h, S)))
        return 0
    raise InputError(f"unknown command {args.cmd}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return run(args, sys.stdout)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
