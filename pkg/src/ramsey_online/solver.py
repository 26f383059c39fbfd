"""Exhaustive adversarial search over bounded games.

Positions are memoized by canonical form, and Builder's candidate edges are
merged into orbits under the automorphisms found while canonicalizing, so
each symmetric family of moves is expanded once.  Isolated vertices are
interchangeable; at most two fresh ones are ever offered.

All searches walk one board, adding and removing the last edge, and never
rely on a table hit for correctness: the tables only skip repeated work.
"""

from __future__ import annotations

import enum
import pickle
import time
from dataclasses import dataclass, field
from pathlib import Path

from .canon import canonical_graph, edge_orbits
from .engine import Constraint, GameTrace, Outcome, UNRESTRICTED, _check_edge, mono_target, parse_constraint
from .graph import BLUE, RED, ColoredGraph, norm_edge
from .painter import PainterPolicy, closes_c3, get_painter

MAX_SOLVE_VERTICES = 10
MAX_SOLVE_EDGES = 14
STORE_MAGIC = b"RAMSEY-TT v1\n"


class LimitError(ValueError):
    """Search limits beyond desk scale."""


class Verdict(enum.Enum):
    BUILDER_WINS = "BUILDER_WINS"
    PAINTER_SURVIVES = "PAINTER_SURVIVES"

    def __str__(self):
        return self.value


@dataclass
class Stats:
    nodes: int = 0
    memo_hits: int = 0
    leaves: int = 0
    seconds: float = 0.0

    def __str__(self):
        return f"{self.nodes} nodes, {self.memo_hits} table hits, {self.leaves} leaves, {self.seconds:.2f}s"


def _check_limits(max_vertices, max_edges):
    if max_vertices < 2 or max_edges < 1:
        raise LimitError("need at least 2 vertices and 1 edge")
    if max_vertices > MAX_SOLVE_VERTICES or max_edges > MAX_SOLVE_EDGES:
        raise LimitError(f"limits ({max_vertices}, {max_edges}) exceed desk scale "
                         f"({MAX_SOLVE_VERTICES} vertices, {MAX_SOLVE_EDGES} edges)")


def candidate_moves(g: ColoredGraph, max_vertices: int, canon=None, quotient: bool = True):
    """Representative new edges, one per orbit, respecting the vertex cap."""
    verts = g.vertices
    n = len(verts)
    pairs = [(u, v) for i, u in enumerate(verts) for v in verts[i + 1:] if not g.has_edge(u, v)]
    fresh = g.fresh_vertex()
    out = []
    if quotient:
        autos = (canon or canonical_graph(g)).automorphisms
        reps = [grp[0] for grp in edge_orbits(pairs, autos)]
        # orbits of vertices for edges to a fresh vertex
        vorb = edge_orbits([(v, fresh) for v in verts], autos)
        vreps = [grp[0][0] for grp in vorb]
    else:
        reps = pairs
        vreps = verts
    out += sorted(reps)
    if n + 1 <= max_vertices:
        out += [(v, fresh) for v in sorted(vreps)]
    if n + 2 <= max_vertices:
        out.append((fresh, g.fresh_vertex([fresh])))
    return out


def _legal(g: ColoredGraph, c: Constraint, e) -> bool:
    u, v = e
    g.add_edge(u, v, RED)
    try:
        return c.allows(g, u, v)
    finally:
        g._pop_last()


def _trace(c: Constraint, builder: str, painter: str, moves, outcome, **kw) -> GameTrace:
    t = GameTrace(c.spec, builder, painter, moves=list(moves), outcome=outcome, **kw)
    return t


# painter verification


@dataclass
class PainterReport:
    survives: bool
    counterexample: GameTrace | None
    stats: Stats
    positions: int = 0


def verify_painter(p: PainterPolicy | str, c: Constraint | str, max_vertices: int, max_edges: int,
                   check_invariant: bool = True, quotient: bool = True, full_invariant: bool = False,
                   jobs: int = 1) -> PainterReport:
    """Every Builder line within the limits, with Painter fixed to ``p``.

    With ``check_invariant``, the painter's structural invariant is checked at
    every position reached; by default only the part touching the newest
    edge is rechecked, which suffices because every earlier position passed
    and each invariant is monotone under adding edges.

    ``jobs > 1`` expands the first few plies here and hands the remaining
    subtrees to worker processes, each with its own table.
    """
    if isinstance(p, str):
        p = get_painter(p)
    if isinstance(c, str):
        c = parse_constraint(c)
    _check_limits(max_vertices, max_edges)
    args = (p.name, c.spec, max_vertices, max_edges, check_invariant, quotient, full_invariant)
    t0 = time.perf_counter()
    search = _PainterSearch(p, c, *args[2:])
    if jobs <= 1:
        res = search.run(())
        search.stats.seconds = time.perf_counter() - t0
        return PainterReport(res is None, res, search.stats, len(search.safe))

    from concurrent.futures import ProcessPoolExecutor

    prefixes, res = search.frontier(min(3, max_edges))
    stats, positions = search.stats, len(search.safe)
    if res is None and prefixes:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for sub_res, sub_stats, sub_pos in pool.map(_painter_job, [args + (pre,) for pre in prefixes]):
                stats.nodes += sub_stats.nodes
                stats.memo_hits += sub_stats.memo_hits
                stats.leaves += sub_stats.leaves
                positions += sub_pos
                if sub_res is not None and res is None:
                    res = sub_res
    stats.seconds = time.perf_counter() - t0
    return PainterReport(res is None, res, stats, positions)


def _painter_job(args):
    name, spec, *rest, prefix = args
    s = _PainterSearch(get_painter(name), parse_constraint(spec), *rest)
    res = s.run(prefix)
    return res, s.stats, len(s.safe)


class _PainterSearch:
    def __init__(self, p, c, max_vertices, max_edges, check_invariant, quotient, full_invariant):
        self.p, self.c = p, c
        self.max_vertices, self.max_edges = max_vertices, max_edges
        self.quotient, self.full_invariant = quotient, full_invariant
        self.inv = p.invariant if check_invariant else None
        self.stats = Stats()
        self.safe: set[bytes] = set()
        self.g = ColoredGraph()
        self.moves: list = []

    def fail(self, outcome, reason, witness=None):
        t = _trace(self.c, "exhaustive", self.p.name, self.moves, outcome, reason=reason, max_edges=self.max_edges)
        if witness:
            t.witness_color, t.witness = witness
        return t

    def children(self, canon):
        """Yield (edge, failure) after playing each candidate; the caller undoes it."""
        g = self.g
        for e in candidate_moves(g, self.max_vertices, canon, self.quotient):
            if not _legal(g, self.c, e):
                continue
            u, v = e
            color = self.p(g, e)
            g.add_edge(u, v, color)
            self.moves.append((u, v, color))
            try:
                hit = mono_target(g, "C3", u, v)
                if hit is not None:
                    yield e, self.fail(Outcome.BUILDER_WIN, "monochromatic triangle", hit)
                    return
                if self.inv is not None:
                    bad = self.inv(g) if self.full_invariant else _local_invariant(self.p, g, e)
                    if bad:
                        yield e, self.fail(Outcome.BUDGET_EXHAUSTED, "invariant broken: " + "; ".join(bad))
                        return
                yield e, None
            finally:
                self.moves.pop()
                g._pop_last()

    def dfs(self):
        self.stats.nodes += 1
        if len(self.moves) == self.max_edges:
            self.stats.leaves += 1
            return None
        canon = canonical_graph(self.g)
        if canon.key in self.safe:
            self.stats.memo_hits += 1
            return None
        for _, bad in self.children(canon):
            res = bad or self.dfs()
            if res is not None:
                return res
        self.safe.add(canon.key)
        return None

    def run(self, prefix):
        for u, v, color in prefix:
            self.g.add_edge(u, v, color)
            self.moves.append((u, v, color))
        return self.dfs()

    def frontier(self, depth):
        """Move prefixes of length ``depth`` (or shorter dead ends), or a failure found on the way."""
        out = []

        def walk():
            if len(self.moves) == depth:
                out.append(tuple(self.moves))
                return None
            self.stats.nodes += 1
            for _, bad in self.children(canonical_graph(self.g)):
                res = bad or walk()
                if res is not None:
                    return res
            return None
        return out, walk()


def _local_invariant(p: PainterPolicy, g: ColoredGraph, e) -> list[str]:
    from . import painter as pm

    local = {
        "strategy2": pm.strategy2_invariant_at,
        "strategy3": pm.strategy3_invariant_at,
        "strategy4": pm.strategy4_invariant_at,
        "zero-cycle": pm.zero_cycle_invariant_at,
    }.get(p.name)
    if local is None:
        return p.invariant(g)
    return local(g, e)


# builder verification


@dataclass
class BuilderReport:
    wins: bool
    worst_case: int | None
    counterexample: GameTrace | None
    leaves: int = 0
    nodes: int = 0
    seconds: float = 0.0
    violations: int = 0


def verify_builder(b, c: Constraint | str | None = None, max_edges: int | None = None,
                   extra_check=None, target: str | None = None) -> BuilderReport:
    """Play ``b`` against every sequence of painter replies.

    ``extra_check(g)`` may return an error string to flag an intermediate
    board.  Builders that stop (subroutines) must satisfy ``b.contract_ok``.
    """
    from .builder import CLAIM, STOP

    if c is None:
        c = parse_constraint(b.declared)
    elif isinstance(c, str):
        c = parse_constraint(c)
    target = target or getattr(b, "target", "C3")
    limit = max_edges if max_edges is not None else getattr(b, "max_moves", 64)
    g = ColoredGraph()
    moves: list = []
    rep = BuilderReport(True, 0, None)
    t0 = time.perf_counter()

    def fail(outcome, reason, edge=None):
        t = _trace(c, b.name, "exhaustive", moves, outcome, reason=reason, max_edges=limit)
        if outcome is Outcome.BUILDER_ILLEGAL:
            t.illegal_index = len(moves)
            t.illegal_edge = edge
        return t

    def dfs(bb):
        rep.nodes += 1
        m = bb.move(g)
        if m is CLAIM:
            return fail(Outcome.BUILDER_ILLEGAL, f"claimed a win with no monochromatic {target}")
        if m is STOP:
            ok = getattr(bb, "contract_ok", None)
            if ok is None or not ok(g):
                return fail(Outcome.BUILDER_STOPPED, "stopped without meeting its contract")
            rep.leaves += 1
            rep.worst_case = max(rep.worst_case, len(moves))
            return None
        if len(moves) >= limit:
            return fail(Outcome.BUDGET_EXHAUSTED, f"no win within {limit} edges")
        why = _check_edge(g, c, m)
        if why is not None:
            rep.violations += 1
            return fail(Outcome.BUILDER_ILLEGAL, why, tuple(m))
        u, v = m
        for color in (RED, BLUE):
            child = bb.clone() if color is RED else bb
            g.add_edge(u, v, color)
            moves.append((u, v, color))
            try:
                if extra_check is not None:
                    msg = extra_check(g)
                    if msg:
                        rep.violations += 1
                        return fail(Outcome.BUILDER_ILLEGAL, msg, (u, v))
                if mono_target(g, target, u, v) is not None:
                    rep.leaves += 1
                    rep.worst_case = max(rep.worst_case, len(moves))
                    continue
                res = dfs(child)
                if res is not None:
                    return res
            finally:
                moves.pop()
                g._pop_last()
        return None

    res = dfs(b.clone())
    rep.seconds = time.perf_counter() - t0
    if res is not None:
        rep.wins = False
        rep.counterexample = res
        rep.worst_case = None
    return rep


# exact minimax


@dataclass
class SolveResult:
    verdict: Verdict
    plies: int | None
    budget: int
    max_vertices: int
    constraint: str
    principal: GameTrace | None = None
    certificate: dict | None = None
    stats: Stats = field(default_factory=Stats)

    def summary(self) -> str:
        if self.verdict is Verdict.BUILDER_WINS:
            return f"BUILDER_WINS within {self.plies} edges ({self.constraint}, {self.max_vertices} vertices)"
        return f"PAINTER_SURVIVES {self.budget} edges ({self.constraint}, {self.max_vertices} vertices)"


class Solver:
    """Minimax with a table of bounds per canonical position.

    ``win_within(b)`` asks whether Builder can force a monochromatic
    triangle using at most b more edges.  The answer is monotone in b, so the
    table keeps, per position, the largest budget known to fail and the
    smallest known to succeed.
    """

    def __init__(self, c: Constraint, max_vertices: int, quotient: bool = True):
        self.c = c
        self.max_vertices = max_vertices
        self.quotient = quotient
        self.lo: dict[bytes, int] = {}  # fails with this many edges left
        self.hi: dict[bytes, int] = {}  # wins with this many edges left
        self.stats = Stats()
        self.g = ColoredGraph()

    def _moves(self, canon):
        g = self.g
        out = []
        for e in candidate_moves(g, self.max_vertices, canon, self.quotient):
            if _legal(g, self.c, e):
                out.append(e)
        # moves that threaten a triangle in both colors first
        out.sort(key=lambda e: -(closes_c3(g, *e, RED) + closes_c3(g, *e, BLUE)))
        return out

    def win_within(self, b: int) -> bool:
        if b <= 0:
            return False
        g = self.g
        self.stats.nodes += 1
        canon = canonical_graph(g)
        key = canon.key
        if self.hi.get(key, 1 << 30) <= b:
            self.stats.memo_hits += 1
            return True
        if self.lo.get(key, -1) >= b:
            self.stats.memo_hits += 1
            return False
        won = False
        for u, v in self._moves(canon):
            ok = True
            # Painter tries the quieter color first; it is the likelier refutation.
            order = (BLUE, RED) if closes_c3(g, u, v, RED) else (RED, BLUE)
            for color in order:
                g.add_edge(u, v, color)
                try:
                    if closes_c3_after(g, u, v):
                        continue
                    if b == 1 or not self.win_within(b - 1):
                        ok = False
                        break
                finally:
                    g._pop_last()
            if ok:
                won = True
                break
        if won:
            self.hi[key] = min(self.hi.get(key, 1 << 30), b)
        else:
            self.lo[key] = max(self.lo.get(key, -1), b)
        return won

    def min_plies(self, budget: int) -> int | None:
        for b in range(1, budget + 1):
            if self.win_within(b):
                return b
        return None

    def certificate(self, b: int) -> dict:
        """Strategy tree: Builder edge, then a subtree per color ("win" at a triangle)."""
        g = self.g
        canon = canonical_graph(g)
        for u, v in self._moves(canon):
            subs = {}
            for color in (RED, BLUE):
                g.add_edge(u, v, color)
                try:
                    if closes_c3_after(g, u, v):
                        subs[color.value] = "win"
                    elif b > 1 and self.win_within(b - 1):
                        subs[color.value] = self.certificate(b - 1)
                    else:
                        break
                finally:
                    g._pop_last()
            if len(subs) == 2:
                return {"edge": [u, v], **subs}
        raise AssertionError("no winning move although the table says Builder wins")

    def principal_line(self, b: int) -> list:
        """Builder's fastest win against the Painter reply that lasts longest."""
        g = self.g
        moves = []
        try:
            while b > 0:
                best = None
                for u, v in self._moves(canonical_graph(g)):
                    vals = {}
                    for color in (RED, BLUE):
                        g.add_edge(u, v, color)
                        try:
                            if closes_c3_after(g, u, v):
                                vals[color] = 1
                            else:
                                k = self.min_plies(b - 1)
                                vals[color] = None if k is None else k + 1
                        finally:
                            g._pop_last()
                    if None in vals.values():
                        continue
                    worst = max(vals.values())
                    if best is None or worst < best[0]:
                        best = (worst, (u, v), vals)
                if best is None:
                    break
                worst, (u, v), vals = best
                color = max(vals, key=lambda col: (vals[col], col is RED))
                g.add_edge(u, v, color)
                moves.append((u, v, color))
                if vals[color] == 1:
                    break
                b = worst - 1
        finally:
            for _ in moves:
                g._pop_last()
        return moves

    # persistence

    def save(self, path) -> None:
        blob = pickle.dumps({"constraint": self.c.spec, "max_vertices": self.max_vertices,
                             "lo": self.lo, "hi": self.hi})
        Path(path).write_bytes(STORE_MAGIC + blob)

    def load(self, path) -> None:
        data = Path(path).read_bytes()
        if not data.startswith(STORE_MAGIC):
            raise ValueError(f"{path} is not a transposition store of this version")
        d = pickle.loads(data[len(STORE_MAGIC):])
        if d["constraint"] != self.c.spec or d["max_vertices"] != self.max_vertices:
            raise ValueError("transposition store belongs to a different search")
        self.lo.update(d["lo"])
        self.hi.update(d["hi"])


def closes_c3_after(g: ColoredGraph, u: int, v: int) -> bool:
    c = g.color(u, v)
    nu = g.adjacency(u)
    return any(cw is c and nu.get(w) is c for w, cw in g.adjacency(v).items() if w != u)


def solve(c: Constraint | str, max_vertices: int, max_edges: int, quotient: bool = True,
          store: str | Path | None = None, with_certificate: bool = True) -> SolveResult:
    if isinstance(c, str):
        c = parse_constraint(c)
    _check_limits(max_vertices, max_edges)
    s = Solver(c, max_vertices, quotient)
    if store is not None and Path(store).exists():
        s.load(store)
    t0 = time.perf_counter()
    wins = s.win_within(max_edges)
    res = SolveResult(Verdict.BUILDER_WINS if wins else Verdict.PAINTER_SURVIVES, None, max_edges,
                      max_vertices, c.spec, stats=s.stats)
    if wins:
        res.plies = s.min_plies(max_edges)
        if with_certificate:
            res.certificate = s.certificate(res.plies)
        line = s.principal_line(res.plies)
        res.principal = _trace(c, "solver", "solver", line, Outcome.BUILDER_WIN, max_edges=max_edges)
        hit = mono_target(ColoredGraph(line), "C3")
        if hit:
            res.principal.witness_color, res.principal.witness = hit
    s.stats.seconds = time.perf_counter() - t0
    if store is not None:
        s.save(store)
    return res


def probe_open(max_vertices: int, max_edges: int, **kw) -> SolveResult:
    """Bounded game on X5-free boards: evidence only, not an answer."""
    return solve("subgraph-free:X5", max_vertices, max_edges, **kw)


def check_certificate(cert: dict, c: Constraint | str, max_edges: int | None = None) -> int:
    """Replay a strategy tree against both replies at every node; return its depth."""
    if isinstance(c, str):
        c = parse_constraint(c)
    g = ColoredGraph()

    def walk(node, depth):
        if max_edges is not None and depth >= max_edges:
            raise AssertionError("certificate exceeds its budget")
        u, v = node["edge"]
        why = _check_edge(g, c, (u, v))
        if why:
            raise AssertionError(f"certificate move illegal: {why}")
        worst = 0
        for color in (RED, BLUE):
            g.add_edge(u, v, color)
            try:
                sub = node[color.value]
                if sub == "win":
                    if not closes_c3_after(g, u, v):
                        raise AssertionError(f"claimed win at {(u, v)} without a triangle")
                    worst = max(worst, depth + 1)
                else:
                    if closes_c3_after(g, u, v):
                        raise AssertionError("certificate continues after a win")
                    worst = max(worst, walk(sub, depth + 1))
            finally:
                g._pop_last()
        return worst

    return walk(cert, 0)
