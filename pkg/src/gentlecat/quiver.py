"""Quivers with length-two monomial relations, blossoming, strings and paths.

Relations are stored in traversal order: ``("a", "b")`` is the path that
walks along ``a`` and then along ``b``.  Text written as a composite of
functions (``ba``) has to be reversed before it lands here.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property


class QuiverSyntaxError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


class NotGentleError(ValueError):
    pass


class BandError(ValueError):
    """Raised when strings are infinite; carries a witnessing band."""

    def __init__(self, band: "StringWord"):
        super().__init__(f"representation-infinite: band {band}")
        self.band = band


class InfiniteAlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertex name")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow name")
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ValueError(f"arrow {a.name} has an undeclared endpoint")

    @cached_property
    def arrow(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    @cached_property
    def vindex(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def aindex(self) -> dict[str, int]:
        return {a.name: i for i, a in enumerate(self.arrows)}

    def out_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def in_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]


@dataclass(frozen=True)
class GentlePresentation:
    quiver: Quiver
    relations: frozenset[tuple[str, str]] = frozenset()
    blossom_vertices: frozenset[str] = frozenset()
    frozen_vertices: frozenset[str] = frozenset()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        q = self.quiver
        for a, b in self.relations:
            if a not in q.arrow or b not in q.arrow:
                raise ValueError(f"relation {a} {b} uses an undeclared arrow")
            if q.arrow[a].target != q.arrow[b].source:
                raise ValueError(f"relation {a} {b} is not composable")
        for v in self.blossom_vertices | self.frozen_vertices:
            if v not in q.vindex:
                raise ValueError(f"unknown vertex {v}")

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.quiver.arrows

    def is_relation(self, a: str, b: str) -> bool:
        return (a, b) in self.relations

    def sinks(self) -> list[str]:
        return [v for v in self.vertices if not self.quiver.out_arrows(v)]

    def sources(self) -> list[str]:
        return [v for v in self.vertices if not self.quiver.in_arrows(v)]


# ---------------------------------------------------------------- parsing

_ARROW = re.compile(r"^arrow\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$")


def parse_quiver(text: str, name: str = "") -> GentlePresentation:
    vertices: list[str] = []
    arrows: list[Arrow] = []
    relations: list[tuple[str, str]] = []
    blossom: set[str] = set()
    frozen: set[str] = set()
    declared: set[str] = set()
    arrow_names: dict[str, Arrow] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        if head == "vertex":
            parts = line.split()
            if len(parts) < 2:
                raise QuiverSyntaxError(lineno, "vertex needs a name")
            v = parts[1]
            if v in declared or v in arrow_names:
                raise QuiverSyntaxError(lineno, f"duplicate name {v}")
            for flag in parts[2:]:
                if flag == "blossom":
                    blossom.add(v)
                elif flag == "frozen":
                    frozen.add(v)
                else:
                    raise QuiverSyntaxError(lineno, f"unknown vertex flag {flag}")
            vertices.append(v)
            declared.add(v)
        elif head == "arrow":
            m = _ARROW.match(line)
            if not m:
                raise QuiverSyntaxError(lineno, "expected 'arrow NAME : SRC -> TGT'")
            a, s, t = m.groups()
            if a in arrow_names or a in declared:
                raise QuiverSyntaxError(lineno, f"duplicate name {a}")
            for v in (s, t):
                if v not in declared:
                    raise QuiverSyntaxError(lineno, f"undeclared vertex {v}")
            arrow_names[a] = Arrow(a, s, t)
            arrows.append(arrow_names[a])
        elif head == "relation":
            parts = line.split()
            if len(parts) != 3:
                raise QuiverSyntaxError(lineno, "expected 'relation A B'")
            a, b = parts[1], parts[2]
            for x in (a, b):
                if x not in arrow_names:
                    raise QuiverSyntaxError(lineno, f"undeclared arrow {x}")
            if arrow_names[a].target != arrow_names[b].source:
                raise QuiverSyntaxError(lineno, f"relation {a} {b} is not composable")
            relations.append((a, b))
        else:
            raise QuiverSyntaxError(lineno, f"unknown directive {head!r}")
    return GentlePresentation(
        Quiver(tuple(vertices), tuple(arrows)),
        frozenset(relations),
        frozenset(blossom),
        frozenset(frozen),
        name=name,
    )


def format_quiver(p: GentlePresentation) -> str:
    lines = []
    for v in p.vertices:
        flags = ""
        if v in p.blossom_vertices:
            flags += " blossom"
        if v in p.frozen_vertices:
            flags += " frozen"
        lines.append(f"vertex {v}{flags}")
    for a in p.arrows:
        lines.append(f"arrow {a.name} : {a.source} -> {a.target}")
    ai = p.quiver.aindex
    for a, b in sorted(p.relations, key=lambda r: (ai[r[0]], ai[r[1]])):
        lines.append(f"relation {a} {b}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- gentleness

def validate_gentle(p: GentlePresentation) -> list[str]:
    """Violated gentle axioms, one entry each; empty iff gentle."""
    q = p.quiver
    report = []
    for v in q.vertices:
        if len(q.out_arrows(v)) > 2:
            report.append(f"out-degree: vertex {v} is the source of {len(q.out_arrows(v))} arrows")
        if len(q.in_arrows(v)) > 2:
            report.append(f"in-degree: vertex {v} is the target of {len(q.in_arrows(v))} arrows")
    for b in q.arrows:
        before = q.in_arrows(b.source)
        rel = [a.name for a in before if p.is_relation(a.name, b.name)]
        non = [a.name for a in before if not p.is_relation(a.name, b.name)]
        if len(rel) > 1:
            report.append(f"left relations: arrow {b.name} follows {len(rel)} relations {rel}")
        if len(non) > 1:
            report.append(f"left non-relations: arrow {b.name} has {len(non)} non-zero predecessors {non}")
        after = q.out_arrows(b.target)
        rel = [c.name for c in after if p.is_relation(b.name, c.name)]
        non = [c.name for c in after if not p.is_relation(b.name, c.name)]
        if len(rel) > 1:
            report.append(f"right relations: arrow {b.name} starts {len(rel)} relations {rel}")
        if len(non) > 1:
            report.append(f"right non-relations: arrow {b.name} has {len(non)} non-zero successors {non}")
    return report


def blossom(p: GentlePresentation) -> GentlePresentation:
    """Complete p so every original vertex has two arrows in and two out."""
    bad = validate_gentle(p)
    if bad:
        raise NotGentleError("; ".join(bad))
    q = p.quiver
    vertices = list(q.vertices)
    arrows = list(q.arrows)
    relations = set(p.relations)
    new_blossom = set()
    for v in sorted(q.vertices):
        ins = [a.name for a in q.in_arrows(v)]
        outs = [a.name for a in q.out_arrows(v)]
        for k in range(2 - len(ins)):
            b, a = f"bl_{v}_in{k}", f"ar_{v}_in{k}"
            vertices.append(b)
            new_blossom.add(b)
            arrows.append(Arrow(a, b, v))
            ins.append(a)
        for k in range(2 - len(outs)):
            b, a = f"bl_{v}_out{k}", f"ar_{v}_out{k}"
            vertices.append(b)
            new_blossom.add(b)
            arrows.append(Arrow(a, v, b))
            outs.append(a)
        old = {a.name for a in q.arrows}
        for match in (((0, 0), (1, 1)), ((0, 1), (1, 0))):
            pairs = {(ins[i], outs[j]) for i, j in match}
            ok = all((x, y) in pairs for x, y in p.relations if x in ins and y in outs)
            # composable original pairs that are not relations must stay non-zero
            ok = ok and not any(
                x in old and y in old and (x, y) not in p.relations for x, y in pairs
            )
            if ok:
                relations |= pairs
                break
        else:  # pragma: no cover - impossible for gentle input
            raise NotGentleError(f"cannot complete vertex {v}")
    return GentlePresentation(
        Quiver(tuple(vertices), tuple(arrows)),
        frozenset(relations),
        frozenset(p.blossom_vertices | new_blossom),
        p.frozen_vertices,
        name=f"{p.name}-blossom" if p.name else "",
    )


def kill_vertices(p: GentlePresentation, killed) -> GentlePresentation:
    """Presentation of A/(e) for e the idempotent of the killed vertices."""
    killed = set(killed)
    q = p.quiver
    vs = tuple(v for v in q.vertices if v not in killed)
    arr = tuple(a for a in q.arrows if a.source not in killed and a.target not in killed)
    names = {a.name for a in arr}
    rels = frozenset(r for r in p.relations if r[0] in names and r[1] in names)
    return GentlePresentation(
        Quiver(vs, arr), rels,
        p.blossom_vertices - killed, p.frozen_vertices - killed,
        name=f"{p.name}/e" if p.name else "",
    )


def opposite(p: GentlePresentation) -> GentlePresentation:
    q = p.quiver
    arr = tuple(Arrow(a.name, a.target, a.source) for a in q.arrows)
    rels = frozenset((b, a) for a, b in p.relations)
    return GentlePresentation(Quiver(q.vertices, arr), rels,
                              p.blossom_vertices, p.frozen_vertices, name=p.name)


# ---------------------------------------------------------------- strings

Letter = tuple[str, int]


@dataclass(frozen=True)
class StringWord:
    """A reduced walk; letters are (arrow, +1) or (arrow, -1)."""

    letters: tuple[Letter, ...]
    start: str
    end: str

    def __len__(self):
        return len(self.letters)

    def inverse(self) -> "StringWord":
        return StringWord(tuple((a, -s) for a, s in reversed(self.letters)), self.end, self.start)

    def __str__(self):
        if not self.letters:
            return f"e_{self.start}"
        return " ".join(a if s > 0 else a + "^-1" for a, s in self.letters)


def letter_ends(p: GentlePresentation, x: Letter) -> tuple[str, str]:
    a = p.quiver.arrow[x[0]]
    return (a.source, a.target) if x[1] > 0 else (a.target, a.source)


def can_follow(p: GentlePresentation, x: Letter, y: Letter) -> bool:
    if letter_ends(p, x)[1] != letter_ends(p, y)[0]:
        return False
    if x[1] > 0 and y[1] > 0:
        return not p.is_relation(x[0], y[0])
    if x[1] < 0 and y[1] < 0:
        return not p.is_relation(y[0], x[0])
    return x[0] != y[0]


def _word_key(p: GentlePresentation, letters) -> tuple:
    ai = p.quiver.aindex
    return tuple((ai[a], 0 if s > 0 else 1) for a, s in letters)


def canonical(p: GentlePresentation, w: StringWord) -> StringWord:
    if not w.letters:
        return w
    inv = w.inverse()
    return w if _word_key(p, w.letters) <= _word_key(p, inv.letters) else inv


def make_string(p: GentlePresentation, letters) -> StringWord:
    letters = tuple(letters)
    if not letters:
        raise ValueError("use empty_string for trivial strings")
    for x, y in zip(letters, letters[1:]):
        if not can_follow(p, x, y):
            raise ValueError(f"invalid string: {x} cannot be followed by {y}")
    return StringWord(letters, letter_ends(p, letters[0])[0], letter_ends(p, letters[-1])[1])


def empty_string(v: str) -> StringWord:
    return StringWord((), v, v)


def enumerate_strings(p: GentlePresentation) -> list[StringWord]:
    """All strings up to inversion, empty ones first, then by (length, letters)."""
    limit = 2 * len(p.arrows)
    letters = [(a.name, s) for a in p.arrows for s in (1, -1)]
    seen: dict[tuple, StringWord] = {}

    def extend(word: tuple[Letter, ...]):
        if len(word) > limit:
            for i in range(len(word)):
                for j in range(i + 1, len(word)):
                    if word[i] == word[j]:
                        raise BandError(make_string(p, word[i:j]))
        w = canonical(p, make_string(p, word))
        seen.setdefault(_word_key(p, w.letters), w)
        for y in letters:
            if can_follow(p, word[-1], y):
                extend(word + (y,))

    for x in letters:
        extend((x,))
    out = [empty_string(v) for v in p.vertices]
    out += sorted(seen.values(), key=lambda w: (len(w), _word_key(p, w.letters)))
    return out


# ---------------------------------------------------------------- paths

@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: tuple[str, ...] = ()

    def __str__(self):
        return f"e_{self.source}" if not self.arrows else "".join(
            a if len(a) == 1 else f"[{a}]" for a in self.arrows)


def enumerate_path_basis(p: GentlePresentation) -> list[Path]:
    """Paths with no relation as a subpath; trivial paths first."""
    q = p.quiver
    out = [Path(v, v) for v in q.vertices]
    longer: list[Path] = []

    def extend(path: Path):
        if len(path.arrows) > len(q.arrows):
            raise InfiniteAlgebraError(f"relation-free cycle through {path}")
        longer.append(path)
        last = path.arrows[-1]
        for b in q.out_arrows(path.target):
            if not p.is_relation(last, b.name):
                extend(Path(path.source, b.target, path.arrows + (b.name,)))

    for a in q.arrows:
        extend(Path(a.source, a.target, (a.name,)))
    ai = q.aindex
    longer.sort(key=lambda x: (len(x.arrows), tuple(ai[a] for a in x.arrows)))
    return out + longer


# ---------------------------------------------------------------- random presentations

def random_gentle(rng, max_vertices: int = 5, max_tries: int = 200) -> GentlePresentation:
    """A random gentle presentation with finitely many strings.

    ``rng`` is a ``random.Random``; rejection sampling over arrow sets and relation subsets.
    """
    for _ in range(max_tries):
        n = rng.randint(min(2, max_vertices), max_vertices)
        vs = tuple(str(i + 1) for i in range(n))
        arrows: list[Arrow] = []
        outdeg, indeg = Counter(), Counter()

        def add(s, t):
            if outdeg[s] < 2 and indeg[t] < 2:
                arrows.append(Arrow(f"x{len(arrows)}", s, t))
                outdeg[s] += 1
                indeg[t] += 1

        # a random spanning tree keeps the quiver connected, then a few extra arrows
        for i in range(1, n):
            u = rng.choice(vs[:i])
            add(*((u, vs[i]) if rng.random() < 0.5 else (vs[i], u)))
        for _ in range(rng.randint(0, n // 2 + 1)):
            add(rng.choice(vs), rng.choice(vs))
        composable = [(a.name, b.name) for a in arrows for b in arrows if a.target == b.source]
        rels = frozenset(r for r in composable if rng.random() < 0.5)
        try:
            p = GentlePresentation(Quiver(vs, tuple(arrows)), rels, name=f"rand{n}")
        except ValueError:
            continue
        if validate_gentle(p):
            continue
        try:
            enumerate_path_basis(p)
            enumerate_strings(p)
        except (BandError, InfiniteAlgebraError):
            continue
        return p
    raise RuntimeError("no band-free gentle presentation found")
