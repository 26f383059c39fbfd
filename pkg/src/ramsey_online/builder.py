"""Builder policies as small state machines.

A builder keeps a queue of edges it has committed to drawing and a phase
name.  Each call to ``move`` first checks whether its previous edge closed a
monochromatic triangle (the only place a new one can appear) and claims the
win if so; otherwise it pops the queue, refilling it from the phase handler
when empty.  Phase handlers read colors off the board.

Proofs that say "without loss of generality the color is red" are followed
through a swap flag: ``col`` reports colors as seen after the swap, so one
code path serves both cases and color-swapped painters get mirrored play.

State is small and made of immutable values, so ``clone`` is a shallow copy
plus fresh lists; exhaustive searches clone at every branch.
"""

from __future__ import annotations

import copy

from .graph import BLUE, RED, Color, ColoredGraph
from .pathgame import FRESH, join_outcomes, load_table
from .patterns import mono_c3_through


class Claim:
    def __repr__(self):
        return "CLAIM"


class Stop:
    def __repr__(self):
        return "STOP"


CLAIM = Claim()
STOP = Stop()  # subroutine builders hand control back: contract met


class BuilderStuck(RuntimeError):
    """A builder ran out of moves without a win; a strategy bug."""


class Builder:
    name = "builder"
    declared = "none"
    target = "C3"

    def __init__(self):
        self.swap = False
        self.queue: list[tuple[int, int]] = []
        self.phase = "start"
        self.last: tuple[int, int] | None = None
        self.next_id = 0
        self.mem: dict = {}
        self.drawn = 0

    def clone(self):
        b = copy.copy(self)
        b.queue = list(self.queue)
        b.mem = dict(self.mem)
        return b

    def fresh(self) -> int:
        v = self.next_id
        self.next_id += 1
        return v

    def col(self, g: ColoredGraph, u: int, v: int) -> Color:
        c = g.color(u, v)
        return c.swap() if self.swap else c

    def won(self, g: ColoredGraph) -> bool:
        return self.last is not None and mono_c3_through(g, *self.last) is not None

    def move(self, g: ColoredGraph):
        if self.won(g):
            return CLAIM
        while not self.queue:
            res = self.advance(g)
            if res is STOP:
                return STOP
        e = self.queue.pop(0)
        self.last = e
        self.drawn += 1
        return e

    def advance(self, g: ColoredGraph):
        handler = getattr(self, f"on_{self.phase}", None)
        if handler is None:
            raise BuilderStuck(f"{self.name}: no continuation in phase {self.phase!r}")
        return handler(g)

    def triangle(self, a, b, c):
        self.queue += [(a, b), (b, c), (c, a)]

    def __repr__(self):
        return f"<{self.name} phase={self.phase} swap={self.swap}>"


class StarTriangle(Builder):
    """Star with five leaves, then a triangle on three leaves of one color."""

    name = "star-triangle"
    declared = "minor-free:K23"
    max_moves = 8

    def on_start(self, g):
        c = self.fresh()
        leaves = tuple(self.fresh() for _ in range(5))
        self.mem["center"] = c
        self.mem["leaves"] = leaves
        self.queue = [(c, x) for x in leaves]
        self.phase = "star"

    def on_star(self, g):
        c = self.mem["center"]
        leaves = self.mem["leaves"]
        for color in (RED, BLUE):
            same = [x for x in leaves if g.color(c, x) is color]
            if len(same) >= 3:
                a, b, d = same[:3]
                self.triangle(a, b, d)
                self.phase = "done"
                return
        raise AssertionError("five edges in two colors always give three alike")


class PathForcer:
    """Drives the shipped path-forcing plan on the real board.

    Each live component is (root, red path ending at root, blue path ending
    at root), paths as vertex tuples.  Colors are normalized so the first
    edge counts as red.
    """

    def __init__(self, k: int):
        self.k = k
        self.table = load_table(k)
        self.budget = self.table.budget
        self.comps: tuple = ()
        self.pending = None
        self.swap = None
        self.result = None  # (actual color, path vertices)

    def clone(self):
        return copy.copy(self)

    def profile(self, comp):
        return (len(comp[1]) - 1, len(comp[2]) - 1)

    def _take(self, comps, prof, builder):
        if prof == FRESH:
            v = builder.fresh()
            return (v, (v,), (v,)), comps
        for i, c in enumerate(comps):
            if self.profile(c) == prof:
                return c, comps[:i] + comps[i + 1:]
        raise AssertionError(f"plan names profile {prof} absent from {comps}")

    def step(self, g: ColoredGraph, builder: Builder):
        """Next edge to draw, or None once ``result`` is set."""
        if self.pending is not None:
            self._absorb(g)
            if self.result is not None:
                return None
        state = tuple(sorted(self.profile(c) for c in self.comps))
        p, q, picks = self.table.move(state, self.budget)
        comps = tuple(sorted(self.comps))
        cp, comps = self._take(comps, p, builder)
        cq, comps = self._take(comps, q, builder)
        self.comps = comps
        self.pending = (cp, cq, picks)
        self.budget -= 1
        return (cp[0], cq[0])

    def _absorb(self, g):
        cp, cq, picks = self.pending
        self.pending = None
        c = g.color(cp[0], cq[0])
        if self.swap is None:
            self.swap = c is BLUE
        red = (c is BLUE) == self.swap
        outcomes = join_outcomes(self.profile(cp), self.profile(cq))
        roots, length = outcomes[0] if red else outcomes[1]
        pick = picks[0] if red else picks[1]
        i = 1 if red else 2
        joined = cp[i] + tuple(reversed(cq[i]))
        if length >= self.k:
            self.result = (c, joined)
            return
        other = 2 if red else 1
        if pick == 0:
            keep = cq[i] if len(cq[i]) >= len(cp[i]) + 1 else cp[i] + (cq[0],)
            new = [cq[0], None, None]
            new[i], new[other] = keep, cq[other]
        elif pick == 1:
            keep = cp[i] if len(cp[i]) >= len(cq[i]) + 1 else cq[i] + (cp[0],)
            new = [cp[0], None, None]
            new[i], new[other] = keep, cp[other]
        else:
            far = joined[-1]
            new = [far, None, None]
            new[i], new[other] = joined, (far,)
        new = tuple(new)
        assert self.profile(new) == roots[pick], (new, roots[pick])
        self.comps = self.comps + (new,)


class MonoPath(Builder):
    """Forces a monochromatic path with ``k`` edges on a forest."""

    declared = "minor-free:C3"

    def __init__(self, k: int = 6):
        super().__init__()
        if k < 1:
            raise ValueError("path length must be at least 1")
        self.k = k
        self.name = f"mono-path:{k}"
        self.target = f"P{k + 1}"
        self.forcer = PathForcer(k)
        self.max_moves = self.forcer.table.budget

    def clone(self):
        b = super().clone()
        b.forcer = self.forcer.clone()
        return b

    def won(self, g):
        return self.forcer.result is not None

    def move(self, g):
        if self.forcer.result is None:
            e = self.forcer.step(g, self)
            if e is not None:
                self.last = e
                self.drawn += 1
                return e
        return CLAIM

    @property
    def path(self):
        return self.forcer.result


class K4Free(Builder):
    """Monochromatic path with six edges on a forest, then chords."""

    name = "k4free"
    declared = "subgraph-free:K4"

    def __init__(self):
        super().__init__()
        self.forcer = PathForcer(6)
        self.max_moves = self.forcer.table.budget + 5

    def clone(self):
        b = super().clone()
        b.forcer = self.forcer.clone()
        return b

    def on_start(self, g):
        self.phase = "path"
        return self.on_path(g)

    def on_path(self, g):
        e = self.forcer.step(g, self)
        if e is not None:
            self.queue.append(e)
            return
        color, path = self.forcer.result
        self.swap = color is BLUE
        v = path[:7]
        self.mem["v"] = v
        self.queue.append((v[0], v[4]))
        self.phase = "chord15"

    def on_chord15(self, g):
        v = self.mem["v"]
        if self.col(g, v[0], v[4]) is BLUE:
            self.queue += [(v[0], v[2]), (v[2], v[4])]
            self.phase = "done"
        else:
            self.queue.append((v[2], v[6]))
            self.phase = "chord37"

    def on_chord37(self, g):
        v = self.mem["v"]
        if self.col(g, v[2], v[6]) is BLUE:
            self.queue += [(v[2], v[4]), (v[4], v[6])]
        else:
            self.queue += [(v[0], v[2]), (v[2], v[5]), (v[5], v[0])]
        self.phase = "done"


class K15Free(Builder):
    """Disjoint claws, then a cyclic link of three mixed claws."""

    name = "k15free"
    declared = "subgraph-free:K15"
    max_moves = 21

    def on_start(self, g):
        self.mem["claws"] = ()
        self._new_claw()

    def _new_claw(self):
        c = self.fresh()
        leaves = tuple(self.fresh() for _ in range(3))
        self.mem["claws"] = self.mem["claws"] + ((c,) + leaves,)
        self.queue += [(c, x) for x in leaves]
        self.phase = "claw"

    def on_claw(self, g):
        claws = self.mem["claws"]
        c, *leaves = claws[-1]
        colors = [g.color(c, x) for x in leaves]
        if colors[0] is colors[1] is colors[2]:
            self.swap = colors[0] is BLUE
            self.triangle(*leaves)
            self.phase = "done"
            return
        kinds = {}
        for claw in claws:
            cc, *ls = claw
            reds = sum(g.color(cc, x) is RED for x in ls)
            kinds.setdefault(reds, []).append(claw)
        for reds, group in kinds.items():
            if len(group) >= 3:
                # majority color of the group becomes red
                self.swap = reds == 1
                self._label(g, group[:3])
                return
        if len(claws) >= 5:
            raise AssertionError("five mixed claws always give three of a kind")
        self._new_claw()

    def _label(self, g, claws):
        v = []
        for cc, *ls in claws:
            red = [x for x in ls if self.col(g, cc, x) is RED]
            blue = [x for x in ls if self.col(g, cc, x) is BLUE]
            v += [cc, red[0], red[1], blue[0]]
        self.mem["v"] = tuple(v)
        self.mem["link"] = 0
        self.queue.append((v[3], v[4]))
        self.phase = "link"

    def on_link(self, g):
        v = self.mem["v"]
        i = self.mem["link"]
        j = (i + 1) % 3
        a, b = v[4 * i + 3], v[4 * j]
        if self.col(g, a, b) is RED:
            self.triangle(a, v[4 * j + 1], v[4 * j + 2])
            self.phase = "done"
            return
        if i == 2:
            self.triangle(v[3], v[7], v[11])
            self.phase = "done"
            return
        self.mem["link"] = j
        self.queue.append((v[4 * j + 3], v[4 * ((j + 1) % 3)]))


class PendantMixin:
    """Forces a monochromatic triangle or a blue edge xy, deg x = 1, deg y <= 2.

    Colors are the owner's normalized ones.  Sets ``mem['pendant']`` and
    switches to phase ``after_pendant`` when the edge appears.
    """

    def start_pendant(self, after: str):
        a, b = self.fresh(), self.fresh()
        self.mem["px"] = (a, b)
        self.mem["after_pendant"] = after
        self.queue.append((a, b))
        self.phase = "pendant_path"

    def on_pendant_path(self, g):
        xs = self.mem["px"]
        a, b = xs[-2], xs[-1]
        if self.col(g, a, b) is BLUE:
            self.mem["pendant"] = (b, a)
            self.phase = self.mem["after_pendant"]
            return self.advance(g)
        if len(xs) < 5:
            c = self.fresh()
            self.mem["px"] = xs + (c,)
            self.queue.append((b, c))
            return
        x6 = self.fresh()
        self.mem["px"] = xs + (x6,)
        self.queue.append((xs[1], x6))
        self.phase = "pendant_x26"

    def on_pendant_x26(self, g):
        x = self.mem["px"]
        if self.col(g, x[1], x[5]) is RED:
            self.triangle(x[0], x[2], x[5])
            self.phase = "done"
        else:
            self.queue.append((x[3], x[5]))
            self.phase = "pendant_x46"

    def on_pendant_x46(self, g):
        x = self.mem["px"]
        if self.col(g, x[3], x[5]) is RED:
            self.triangle(x[4], x[2], x[5])
        else:
            self.queue.append((x[1], x[3]))
        self.phase = "done"


class YPendant(PendantMixin, Builder):
    """The pendant subroutine on its own; stops once the pendant edge exists."""

    name = "y-pendant"
    declared = "subgraph-free:Y"
    max_moves = 9

    def on_start(self, g):
        self.start_pendant("pendant_done")

    def on_pendant_done(self, g):
        return STOP

    @property
    def pendant(self):
        return self.mem.get("pendant")

    def contract_ok(self, g: ColoredGraph) -> bool:
        """The promised edge: blue, one end of degree 1, the other of degree at most 2."""
        p = self.pendant
        if p is None:
            return False
        x, y = p
        return g.get_color(x, y) is BLUE and g.degree(x) == 1 and g.degree(y) <= 2


class YFree(PendantMixin, Builder):
    name = "yfree"
    declared = "subgraph-free:Y"
    max_moves = 7 + 4 + 1 + 9 + 3

    def on_start(self, g):
        self.mem["pairs"] = ()
        self._new_pair()

    def _new_pair(self):
        a, b = self.fresh(), self.fresh()
        self.mem["pairs"] = self.mem["pairs"] + ((a, b),)
        self.queue.append((a, b))
        self.phase = "pairs"

    def on_pairs(self, g):
        pairs = self.mem["pairs"]
        for color in (RED, BLUE):
            same = [p for p in pairs if g.color(*p) is color]
            if len(same) >= 4:
                self.swap = color is BLUE
                self.mem["vw"] = tuple(same[:4])
                v = self.fresh()
                self.mem["v"] = v
                self.mem["star"] = 0
                self.queue.append((v, same[0][0]))
                self.phase = "star"
                return
        self._new_pair()

    def on_star(self, g):
        v = self.mem["v"]
        vw = self.mem["vw"]
        k = self.mem["star"] + 1
        drawn = [p[0] for p in vw[:k]]
        for color in (RED, BLUE):
            same = [x for x in drawn if self.col(g, v, x) is color]
            if len(same) >= 3:
                self.triangle(*same[:3])
                self.phase = "done"
                return
        if k < 4:
            self.mem["star"] = k
            self.queue.append((v, vw[k][0]))
            return
        red = [p for p in vw if self.col(g, v, p[0]) is RED]
        blue = [p for p in vw if self.col(g, v, p[0]) is BLUE]
        self.mem["vw"] = tuple(red + blue)
        (v1, w1), (v2, w2) = red
        self.queue.append((w1, w2))
        self.phase = "w12"

    def on_w12(self, g):
        v = self.mem["v"]
        (v1, w1), (v2, w2) = self.mem["vw"][:2]
        if self.col(g, w1, w2) is BLUE:
            self.queue += [(v, w1), (v, w2)]
            self.phase = "done"
        else:
            self.start_pendant("xw1")

    def on_xw1(self, g):
        x, y = self.mem["pendant"]
        (v1, w1), (v2, w2) = self.mem["vw"][:2]
        if "xw1_drawn" not in self.mem:
            self.mem["xw1_drawn"] = True
            self.queue.append((x, w1))
            return
        if self.col(g, x, w1) is RED:
            self.queue += [(x, w2), (x, v1), (v1, w2)]
            self.phase = "done"
        else:
            self.queue.append((x, w2))
            self.phase = "xw2"

    def on_xw2(self, g):
        x, y = self.mem["pendant"]
        (v1, w1), (v2, w2) = self.mem["vw"][:2]
        if self.col(g, x, w2) is RED:
            self.queue += [(x, v2), (v2, w1)]
        else:
            self.queue += [(y, w1), (y, w2)]
        self.phase = "done"


BUILDER_NAMES = ["star-triangle", "k4free", "k15free", "yfree", "mono-path:<k>"]


def make_builder(name: str) -> Builder:
    simple = {"star-triangle": StarTriangle, "k4free": K4Free, "k15free": K15Free,
              "yfree": YFree, "y-pendant": YPendant}
    if name in simple:
        return simple[name]()
    if name.startswith("mono-path:"):
        tail = name.split(":", 1)[1]
        try:
            k = int(tail)
        except ValueError:
            raise KeyError(f"bad path length in {name!r}") from None
        return MonoPath(k)
    raise KeyError(f"unknown builder {name!r}; available: {', '.join(BUILDER_NAMES)}")


def strategy1() -> Builder:
    return StarTriangle()


def force_mono_path(k: int) -> Builder:
    return MonoPath(k)


def builder_k4free() -> Builder:
    return K4Free()


def builder_k15free() -> Builder:
    return K15Free()


def builder_yfree_pendant() -> Builder:
    return YPendant()


def builder_yfree() -> Builder:
    return YFree()
