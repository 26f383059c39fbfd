"""Painter policies.

A policy looks at the colored board and the new uncolored edge and returns a
color.  Policies are deterministic and keep no history: the board is the
whole state.  Each class-specific policy also exposes the structural
invariant its correctness argument maintains, so searches can check it at
every visited position.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .graph import BLUE, RED, Color, ColoredGraph, CycleView, f_value, norm_edge
from .minors import has_k4_minor
from .patterns import Pattern, iter_embeddings


class NotRedError(ValueError):
    """A goodness subject must be entirely red."""


class NotZeroCycleError(ValueError):
    pass


class HostClassError(ValueError):
    """The zero-cycle painter only plays on K4-minor-free boards."""


class InvariantBroken(AssertionError):
    """A painter's own safety invariant failed; signals a bug or an out-of-class board."""


# local threat tests (cross-checked against the generic matcher in tests)


def common_colored(g: ColoredGraph, u: int, v: int, color: Color) -> list[int]:
    nu = g.adjacency(u)
    return sorted(w for w, c in g.adjacency(v).items() if c is color and nu.get(w) is color)


def closes_c3(g: ColoredGraph, u: int, v: int, color: Color) -> bool:
    """Would coloring the new edge uv with ``color`` finish a triangle of that color?"""
    nu = g.adjacency(u)
    return any(c is color and nu.get(w) is color for w, c in g.adjacency(v).items())


def closes_c4(g: ColoredGraph, u: int, v: int, color: Color) -> bool:
    nv = g.adjacency(v)
    for a, ca in g.adjacency(u).items():
        if ca is not color or a == v:
            continue
        for b, cb in g.adjacency(a).items():
            if cb is color and b != u and b != v and nv.get(b) is color:
                return True
    return False


def closes_k13(g: ColoredGraph, u: int, v: int, color: Color) -> bool:
    return g.degree(u, color) >= 2 or g.degree(v, color) >= 2


def red_neighbors_excluding(g, x, skip):
    return [w for w, c in sorted(g.adjacency(x).items()) if c is RED and w != skip]


# goodness templates
#
# Claw subjects: center 0, leaves 1 2 3.  Four-cycle subjects: 0 1 2 3 in
# cyclic order.  Every other template edge may have either color; template
# vertices 4 and up must land outside the subject.

CLAW = ((0, 1), (0, 2), (0, 3))
SQUARE = ((0, 1), (1, 2), (2, 3), (0, 3))


@dataclass(frozen=True)
class Template:
    name: str
    subject: str  # "K13" or "C4"
    extra: tuple[tuple[int, int], ...]

    @property
    def pattern(self) -> Pattern:
        base = CLAW if self.subject == "K13" else SQUARE
        return Pattern(self.name, base + self.extra)


TEMPLATES = (
    # the center reaches degree five
    Template("A1", "K13", ((0, 4), (0, 5))),
    # one leaf has two further neighbors
    Template("A2", "K13", ((1, 4), (1, 5))),
    # a leaf leads to a vertex with two further neighbors
    Template("A3", "K13", ((1, 4), (4, 5), (4, 6))),
    # an outside vertex sees two leaves and one more vertex
    Template("A4", "K13", ((1, 4), (2, 4), (4, 5))),
    # the center has a fourth neighbor and an outside vertex sees two leaves
    Template("A5", "K13", ((0, 4), (1, 5), (2, 5))),
    # a corner has two outside neighbors
    Template("B1", "C4", ((0, 4), (0, 5))),
    # two adjacent corners have distinct outside neighbors
    Template("B2", "C4", ((0, 4), (1, 5))),
    # a corner leads to a vertex with two further neighbors
    Template("B3", "C4", ((0, 4), (4, 5), (4, 6))),
    # an outside vertex sees two adjacent corners and one more vertex
    Template("B4", "C4", ((0, 4), (1, 4), (4, 5))),
    # an outside vertex sees two opposite corners and one more vertex
    Template("B5", "C4", ((0, 4), (2, 4), (4, 5))),
)

_TEMPLATE_PATTERNS = {t.name: t.pattern for t in TEMPLATES}


def _subject_maps(kind: str, verts: tuple[int, ...]):
    """Every way to lay the subject's template labels onto its host vertices."""
    if kind == "K13":
        c, *leaves = verts
        for perm in itertools.permutations(leaves):
            yield {0: c, 1: perm[0], 2: perm[1], 3: perm[2]}
    else:
        for r in range(4):
            rot = verts[r:] + verts[:r]
            yield dict(enumerate(rot))
            yield dict(enumerate((rot[0],) + tuple(reversed(rot[1:]))))


@dataclass
class GoodnessVerdict:
    kind: str
    subject: tuple[int, ...]
    witnesses: dict[str, dict[int, int]] = field(default_factory=dict)

    @property
    def good(self) -> bool:
        return bool(self.witnesses)


def subject_edges(kind: str, verts: tuple[int, ...]) -> list[tuple[int, int]]:
    base = CLAW if kind == "K13" else SQUARE
    return [norm_edge(verts[a], verts[b]) for a, b in base]


def is_good(g: ColoredGraph, kind: str, verts: tuple[int, ...], all_witnesses: bool = False,
            host_adj=None) -> GoodnessVerdict:
    """Goodness of a red claw (center first) or red four-cycle (cyclic order)."""
    if kind not in ("K13", "C4"):
        raise ValueError(f"subject kind must be K13 or C4, got {kind!r}")
    verts = tuple(verts)
    if len(verts) != 4 or len(set(verts)) != 4:
        raise ValueError(f"subject needs four distinct vertices, got {verts}")
    for u, v in subject_edges(kind, verts):
        if g.get_color(u, v) is not RED:
            raise NotRedError(f"subject edge {(u, v)} is not red")
    if host_adj is None:
        host_adj = {v: set(g.adjacency(v)) for v in g.vertices}
    verdict = GoodnessVerdict(kind, verts)
    for t in TEMPLATES:
        if t.subject != kind:
            continue
        pat = _TEMPLATE_PATTERNS[t.name]
        for pin in _subject_maps(kind, verts):
            emb = next(iter_embeddings(host_adj, pat, pin), None)
            if emb is not None:
                verdict.witnesses[t.name] = emb
                break
        if verdict.witnesses and not all_witnesses:
            break
    return verdict


def red_claws(g: ColoredGraph, through: tuple[int, int] | None = None):
    """Red claws as (center, l1, l2, l3) with sorted leaves."""
    if through is None:
        for c in g.vertices:
            for ls in itertools.combinations(g.neighbors(c, RED), 3):
                yield (c,) + ls
        return
    u, v = through
    for c, leaf in ((u, v), (v, u)):
        for a, b in itertools.combinations(red_neighbors_excluding(g, c, leaf), 2):
            yield (c,) + tuple(sorted((leaf, a, b)))


def red_squares(g: ColoredGraph, through: tuple[int, int] | None = None):
    """Red four-cycles in cyclic order, each reported once."""
    if through is not None:
        u, v = through
        for a in red_neighbors_excluding(g, u, v):
            for b in red_neighbors_excluding(g, a, u):
                if b != v and g.get_color(b, v) is RED:
                    yield (u, a, b, v)
        return
    seen = set()
    for x in g.vertices:
        for a, b in itertools.combinations(g.neighbors(x, RED), 2):
            for y in g.neighbors(a, RED):
                if y != x and y != b and g.get_color(y, b) is RED:
                    key = frozenset(subject_edges("C4", (x, a, y, b)))
                    if key not in seen:
                        seen.add(key)
                        yield (x, a, y, b)


def bad_subjects(g: ColoredGraph, through: tuple[int, int] | None = None):
    """Bad red claws and four-cycles (through one edge if given)."""
    host_adj = {v: set(g.adjacency(v)) for v in g.vertices}
    out = []
    for s in red_claws(g, through):
        if not is_good(g, "K13", s, host_adj=host_adj).good:
            out.append(("K13", s))
    for s in red_squares(g, through):
        if not is_good(g, "C4", s, host_adj=host_adj).good:
            out.append(("C4", s))
    return out


# zero cycles


def is_zero_cycle_good(g: ColoredGraph, cycle: CycleView, comp_touch=None) -> bool:
    """Some pair of cycle vertices cuts off a zero arc and has an outside connection.

    The outside connection is a chord or a path through vertices off the cycle.
    A zero arc needs its endpoints non-adjacent on the cycle, because a single
    edge is never zero and the complementary arc then is not zero either.
    """
    es = cycle.edges
    if f_value(g, es) != 0:
        raise NotZeroCycleError(f"cycle {cycle.vertices} is not zero")
    vs = cycle.vertices
    n = len(vs)
    on = set(vs)
    if comp_touch is None:
        comp_touch = _outside_touch(g, on)
    # prefix sums of +1/-1 along the cycle
    pref = [0]
    for u, v in zip(vs, vs[1:]):
        pref.append(pref[-1] + (1 if g.color(u, v) is RED else -1))
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            if (pref[j] - pref[i]) % 3 != 0:
                continue
            a, b = vs[i], vs[j]
            if g.has_edge(a, b) or comp_touch[a] & comp_touch[b]:
                return True
    return False


def _outside_touch(g: ColoredGraph, on: set[int]) -> dict[int, set[int]]:
    """For each cycle vertex, ids of the components of g - cycle it is adjacent to."""
    comp = {}
    cid = 0
    for s in g.vertices:
        if s in on or s in comp:
            continue
        comp[s] = cid
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.adjacency(x):
                if y not in on and y not in comp:
                    comp[y] = cid
                    stack.append(y)
        cid += 1
    return {v: {comp[w] for w in g.adjacency(v) if w not in on} for v in on}


def _zero_cycles_through_all_good(g: ColoredGraph, u: int, v: int) -> bool:
    from .graph import cycles_through

    for cyc in cycles_through(g, u, v):
        if f_value(g, cyc.edges) == 0 and not is_zero_cycle_good(g, cyc):
            return False
    return True


def all_cycles(g: ColoredGraph):
    """Every simple cycle once: cycles through edge i inside the first i+1 edges."""
    from .graph import cycles_through

    edges = g.edges()
    h = ColoredGraph()
    for u, v, c in edges:
        h.add_edge(u, v, c)
        yield from cycles_through(h, u, v)


def bad_zero_cycles(g: ColoredGraph):
    return [c for c in all_cycles(g) if f_value(g, c.edges) == 0 and not is_zero_cycle_good(g, c)]


# policies


@dataclass(frozen=True)
class PainterPolicy:
    name: str
    decide: Callable[[ColoredGraph, tuple[int, int]], Color]
    invariant: Callable[[ColoredGraph], list[str]] | None = None
    description: str = ""

    def __call__(self, g: ColoredGraph, e: tuple[int, int]) -> Color:
        return self.decide(g, e)

    def check(self, g: ColoredGraph) -> list[str]:
        return self.invariant(g) if self.invariant else []


def _mono_c3_list(g, colors=(RED, BLUE)):
    out = []
    for u, v, c in g.edges():
        if c in colors:
            for w in common_colored(g, u, v, c):
                if w > max(u, v):
                    out.append(f"{c} triangle {u}-{v}-{w}")
    return out


def strategy2(g: ColoredGraph, e) -> Color:
    u, v = e
    if closes_k13(g, u, v, RED) or closes_c3(g, u, v, RED) or closes_c4(g, u, v, RED):
        return BLUE
    return RED


def strategy2_invariant(g: ColoredGraph) -> list[str]:
    out = _mono_c3_list(g)
    out += [f"red claw at {v}" for v in g.vertices if g.degree(v, RED) >= 3]
    out += [f"red 4-cycle {s}" for s in red_squares(g)]
    return out


def strategy3(g: ColoredGraph, e) -> Color:
    u, v = e
    if closes_c3(g, u, v, RED):
        return BLUE
    h = g.with_edge(u, v, RED)
    if bad_subjects(h, (u, v)):
        return BLUE
    return RED


def strategy3_invariant(g: ColoredGraph) -> list[str]:
    out = _mono_c3_list(g)
    out += [f"bad {k} {s}" for k, s in bad_subjects(g)]
    for u, v, c in g.edges():
        if c is BLUE and g.degree(u, RED) + g.degree(v, RED) < 2:
            out.append(f"blue edge {u}-{v} has fewer than two red edges at its ends")
    return out


def strategy4(g: ColoredGraph, e) -> Color:
    u, v = e
    if closes_c3(g, u, v, BLUE):
        return RED
    if g.degree(u, RED) == 0 and g.degree(v, RED) == 0:
        return RED
    return BLUE


def strategy4_invariant(g: ColoredGraph) -> list[str]:
    out = _mono_c3_list(g)
    for u, v, c in g.edges():
        if c is BLUE and g.degree(u, RED) + g.degree(v, RED) == 0:
            out.append(f"blue edge {u}-{v} touches no red edge")
    return out


def strategy_zero_cycle(g: ColoredGraph, e) -> Color:
    u, v = e
    trial = g.with_edge(u, v, RED)
    if has_k4_minor(trial):
        raise HostClassError("board plus the new edge has a K4 minor")
    if _zero_cycles_through_all_good(trial, u, v):
        return RED
    trial = g.with_edge(u, v, BLUE)
    if not _zero_cycles_through_all_good(trial, u, v):
        raise InvariantBroken(f"no color of {norm_edge(u, v)} keeps every zero cycle good")
    return BLUE


def zero_cycle_invariant(g: ColoredGraph) -> list[str]:
    return [f"zero cycle {c.vertices} is not good" for c in bad_zero_cycles(g)]


def always_red(g, e) -> Color:
    return RED


def always_blue(g, e) -> Color:
    return BLUE


def greedy_avoid_mono(g: ColoredGraph, e) -> Color:
    u, v = e
    if closes_c3(g, u, v, RED) and not closes_c3(g, u, v, BLUE):
        return BLUE
    return RED


PAINTERS: dict[str, PainterPolicy] = {
    p.name: p
    for p in (
        PainterPolicy("strategy2", strategy2, strategy2_invariant,
                      "red unless that makes a red claw, triangle or 4-cycle"),
        PainterPolicy("strategy3", strategy3, strategy3_invariant,
                      "red unless that makes a red triangle, bad claw or bad 4-cycle"),
        PainterPolicy("strategy4", strategy4, strategy4_invariant,
                      "red if blue closes a blue triangle or no red edge touches the new edge"),
        PainterPolicy("zero-cycle", strategy_zero_cycle, zero_cycle_invariant,
                      "keep every zero cycle good (K4-minor-free boards)"),
        PainterPolicy("always-red", always_red, None, "always red"),
        PainterPolicy("always-blue", always_blue, None, "always blue"),
        PainterPolicy("greedy", greedy_avoid_mono, None, "dodge an immediate monochromatic triangle, else red"),
    )
}


def get_painter(name: str) -> PainterPolicy:
    try:
        return PAINTERS[name]
    except KeyError:
        raise KeyError(f"unknown painter {name!r}; available: {', '.join(PAINTERS)}") from None


# Invariant checks restricted to what the newest edge uv can have broken.
# Each invariant is monotone under adding edges (goodness only gains
# witnesses, red counts only grow), so if it held before uv was added, only
# structures through uv need a look.


def _mono_c3_at(g, u, v):
    c = g.color(u, v)
    return [f"{c} triangle {u}-{v}-{w}" for w in common_colored(g, u, v, c)]


def strategy2_invariant_at(g: ColoredGraph, e) -> list[str]:
    u, v = e
    out = _mono_c3_at(g, u, v)
    if g.color(u, v) is RED:
        out += [f"red claw at {x}" for x in (u, v) if g.degree(x, RED) >= 3]
        out += [f"red 4-cycle {s}" for s in red_squares(g, (u, v))]
    return out


def _blue_support(g, u, v):
    return g.degree(u, RED) + g.degree(v, RED)


def strategy3_invariant_at(g: ColoredGraph, e) -> list[str]:
    u, v = e
    out = _mono_c3_at(g, u, v)
    if g.color(u, v) is RED:
        out += [f"bad {k} {s}" for k, s in bad_subjects(g, (u, v))]
        # a new red edge only raises the support of blue edges
    elif _blue_support(g, u, v) < 2:
        out.append(f"blue edge {u}-{v} has fewer than two red edges at its ends")
    return out


def strategy4_invariant_at(g: ColoredGraph, e) -> list[str]:
    u, v = e
    out = _mono_c3_at(g, u, v)
    if g.color(u, v) is BLUE and _blue_support(g, u, v) == 0:
        out.append(f"blue edge {u}-{v} touches no red edge")
    return out


def zero_cycle_invariant_at(g: ColoredGraph, e) -> list[str]:
    from .graph import cycles_through

    u, v = e
    return [f"zero cycle {c.vertices} is not good" for c in cycles_through(g, u, v)
            if f_value(g, c.edges) == 0 and not is_zero_cycle_good(g, c)]
