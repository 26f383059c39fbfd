"""Referee: alternates Builder and Painter, enforces the host class, detects
the monochromatic target, and records replayable traces."""

from __future__ import annotations

import enum
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

from .graph import BLUE, RED, Color, ColoredGraph, is_forest, norm_edge
from .minors import has_k4_minor, has_k23_minor, has_minor
from .patterns import (Pattern, UnknownPatternError, catalog, contains_subgraph,
                       contains_subgraph_through, get_pattern, mono_c3, mono_c3_through)


class ConstraintSpecError(ValueError):
    pass


MINOR_NAMES = ("K4", "K23", "C3")


@dataclass(frozen=True)
class Constraint:
    """Host class: ``none``, ``subgraph-free:<pattern>``, or ``minor-free:<K4|K23|C3>``.

    ``minor-free:C3`` is the class of forests.
    """

    kind: str
    pattern: Pattern | None = None
    spec: str = "none"

    def contains(self, g: ColoredGraph) -> bool:
        """Full membership test."""
        if self.kind == "none":
            return True
        if self.kind == "subgraph-free":
            return contains_subgraph(g, self.pattern) is None
        name = self.pattern.name
        if name == "K4":
            return not has_k4_minor(g)
        if name == "K23":
            return not has_k23_minor(g)
        if name == "C3":
            return is_forest(g)
        return has_minor(g, self.pattern) is None

    def allows(self, g_after: ColoredGraph, u: int, v: int) -> bool:
        """Membership of ``g_after`` given that it minus uv was a member.

        A new copy of a forbidden subgraph has to use the new edge, so only
        those embeddings are searched.  Minor tests are cheap at this scale and
        rerun in full.
        """
        if self.kind == "subgraph-free":
            return contains_subgraph_through(g_after, self.pattern, u, v) is None
        if self.kind == "minor-free" and self.pattern.name == "C3":
            return not _connected_without(g_after, u, v)
        return self.contains(g_after)

    def __str__(self):
        return self.spec


def _connected_without(g: ColoredGraph, u: int, v: int) -> bool:
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        for y in g.adjacency(x):
            if x == u and y == v:
                continue
            if y == v:
                return True
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return False


UNRESTRICTED = Constraint("none")


def parse_constraint(spec: str) -> Constraint:
    spec = spec.strip()
    if spec in ("none", ""):
        return UNRESTRICTED
    kind, sep, arg = spec.partition(":")
    if not sep or not arg:
        raise ConstraintSpecError(
            f"bad constraint {spec!r}; expected none, subgraph-free:<pattern> or minor-free:<K4|K23|C3>")
    if kind == "subgraph-free":
        try:
            pat = get_pattern(arg)
        except UnknownPatternError as exc:
            raise ConstraintSpecError(str(exc.args[0])) from None
        return Constraint("subgraph-free", pat, spec)
    if kind == "minor-free":
        if arg not in MINOR_NAMES:
            raise ConstraintSpecError(f"minor-free supports {', '.join(MINOR_NAMES)}, not {arg!r}")
        return Constraint("minor-free", catalog()[arg], spec)
    raise ConstraintSpecError(f"unknown constraint kind {kind!r}; expected subgraph-free or minor-free")


def in_class(g: ColoredGraph, c: Constraint) -> bool:
    return c.contains(g)


# win detection


def mono_target(g: ColoredGraph, target: str, u: int | None = None, v: int | None = None):
    """(color, witness vertices) for a monochromatic copy of the target, or None.

    With an edge given, only copies through that edge are searched.
    """
    if target == "C3":
        hit = mono_c3(g) if u is None else mono_c3_through(g, u, v)
        return hit
    pat = get_pattern(target)
    for color in (RED, BLUE):
        if u is None:
            emb = contains_subgraph(g, pat, color)
        else:
            if g.get_color(u, v) is not color:
                continue
            emb = contains_subgraph_through(g, pat, u, v, color)
        if emb is not None:
            return color, tuple(emb[i] for i in range(pat.n))
    return None


class Outcome(enum.Enum):
    BUILDER_WIN = "BUILDER_WIN"
    BUDGET_EXHAUSTED = "BUDGET_EXHAUSTED"
    BUILDER_ILLEGAL = "BUILDER_ILLEGAL"
    BUILDER_STOPPED = "BUILDER_STOPPED"

    def __str__(self):
        return self.value


@dataclass
class GameTrace:
    constraint: str
    builder: str
    painter: str
    moves: list[tuple[int, int, Color]] = field(default_factory=list)
    outcome: Outcome | None = None
    witness: tuple[int, ...] | None = None
    witness_color: Color | None = None
    illegal_index: int | None = None
    illegal_edge: tuple[int, int] | None = None
    reason: str = ""
    max_edges: int | None = None
    target: str = "C3"

    def graph(self) -> ColoredGraph:
        return ColoredGraph(self.moves)

    def summary(self) -> str:
        n = len(self.moves)
        if self.outcome is Outcome.BUILDER_WIN:
            tri = "-".join(map(str, self.witness))
            return f"BUILDER_WIN in {n} moves ({self.witness_color} {self.target} {tri})"
        if self.outcome is Outcome.BUILDER_ILLEGAL:
            return f"BUILDER_ILLEGAL at move {self.illegal_index + 1}: {self.reason}"
        if self.outcome is Outcome.BUILDER_STOPPED:
            return f"BUILDER_STOPPED after {n} moves"
        return f"BUDGET_EXHAUSTED after {n} moves, no monochromatic {self.target}"

    # serialization

    def to_jsonl(self) -> str:
        out = io.StringIO()
        head = {"constraint": self.constraint, "builder": self.builder, "painter": self.painter}
        if self.max_edges is not None:
            head["max_edges"] = self.max_edges
        if self.target != "C3":
            head["target"] = self.target
        out.write(json.dumps(head) + "\n")
        for i, (u, v, c) in enumerate(self.moves, 1):
            out.write(json.dumps({"turn": i, "edge": [u, v], "color": c.value}) + "\n")
        foot = {"outcome": self.outcome.value if self.outcome else None}
        if self.witness is not None:
            foot["witness"] = list(self.witness)
            foot["witness_color"] = self.witness_color.value
        if self.illegal_index is not None:
            foot["move_index"] = self.illegal_index
            foot["edge"] = list(self.illegal_edge) if self.illegal_edge else None
            foot["reason"] = self.reason
        out.write(json.dumps(foot) + "\n")
        return out.getvalue()

    def save(self, path) -> None:
        Path(path).write_text(self.to_jsonl())

    @classmethod
    def from_jsonl(cls, text: str) -> "GameTrace":
        lines = [json.loads(x) for x in text.splitlines() if x.strip()]
        if len(lines) < 2:
            raise ValueError("trace needs a header and a footer")
        head, *body, foot = lines
        for key in ("constraint", "builder", "painter"):
            if key not in head:
                raise ValueError(f"trace header lacks {key!r}")
        t = cls(head["constraint"], head["builder"], head["painter"],
                max_edges=head.get("max_edges"), target=head.get("target", "C3"))
        for i, rec in enumerate(body, 1):
            if rec.get("turn") != i:
                raise ValueError(f"trace turn {rec.get('turn')} out of order at line {i + 1}")
            u, v = rec["edge"]
            t.moves.append((int(u), int(v), Color.parse(rec["color"])))
        if "outcome" not in foot:
            raise ValueError("trace footer lacks 'outcome'")
        t.outcome = Outcome(foot["outcome"]) if foot["outcome"] else None
        if foot.get("witness") is not None:
            t.witness = tuple(foot["witness"])
            t.witness_color = Color.parse(foot["witness_color"]) if "witness_color" in foot else None
        if "move_index" in foot:
            t.illegal_index = foot["move_index"]
            t.illegal_edge = tuple(foot["edge"]) if foot.get("edge") else None
            t.reason = foot.get("reason", "")
        return t

    @classmethod
    def load(cls, path) -> "GameTrace":
        return cls.from_jsonl(Path(path).read_text())


def _check_edge(g: ColoredGraph, c: Constraint, e) -> str | None:
    """Reason the proposed edge is illegal, or None."""
    try:
        u, v = e
        u, v = int(u), int(v)
    except (TypeError, ValueError):
        return f"malformed move {e!r}"
    if u == v:
        return f"loop at {u}"
    if u < 0 or v < 0:
        return "negative vertex id"
    if g.has_edge(u, v):
        return f"edge {norm_edge(u, v)} already drawn"
    h = g.with_edge(u, v, RED)
    if not c.allows(h, u, v):
        return f"edge {norm_edge(u, v)} leaves the class {c.spec}"
    return None


def run_game(builder, painter, constraint: Constraint, max_edges: int, target: str | None = None) -> GameTrace:
    """Play one game; illegal builder moves are recorded, not raised."""
    from .builder import CLAIM, STOP

    if max_edges < 1:
        raise ValueError("max_edges must be at least 1")
    target = target or getattr(builder, "target", "C3")
    t = GameTrace(constraint.spec, builder.name, painter.name, max_edges=max_edges, target=target)
    g = ColoredGraph()
    while True:
        m = builder.move(g)
        if m is CLAIM:
            t.outcome = Outcome.BUILDER_ILLEGAL
            t.illegal_index = len(t.moves)
            t.reason = f"claimed a win with no monochromatic {target}"
            return t
        if m is STOP:
            t.outcome = Outcome.BUILDER_STOPPED
            return t
        if len(t.moves) >= max_edges:
            t.outcome = Outcome.BUDGET_EXHAUSTED
            return t
        why = _check_edge(g, constraint, m)
        if why is not None:
            t.outcome = Outcome.BUILDER_ILLEGAL
            t.illegal_index = len(t.moves)
            t.illegal_edge = tuple(m) if isinstance(m, tuple) else None
            t.reason = why
            return t
        u, v = int(m[0]), int(m[1])
        color = painter(g, (u, v))
        if not isinstance(color, Color):
            raise TypeError(f"painter {painter.name} returned {color!r}")
        g.add_edge(u, v, color)
        t.moves.append((u, v, color))
        hit = mono_target(g, target, u, v)
        if hit is not None:
            t.outcome = Outcome.BUILDER_WIN
            t.witness_color, t.witness = hit[0], tuple(hit[1])
            return t


def replay(trace: GameTrace) -> GameTrace:
    """Re-referee a recorded game from its moves alone."""
    c = parse_constraint(trace.constraint)
    out = GameTrace(trace.constraint, trace.builder, trace.painter, max_edges=trace.max_edges, target=trace.target)
    g = ColoredGraph()
    for i, (u, v, color) in enumerate(trace.moves):
        if trace.max_edges is not None and i >= trace.max_edges:
            raise ValueError("trace has more moves than its budget")
        why = _check_edge(g, c, (u, v))
        if why is not None:
            raise ValueError(f"recorded move {i + 1} is illegal: {why}")
        g.add_edge(u, v, color)
        out.moves.append((u, v, color))
        hit = mono_target(g, trace.target, u, v)
        if hit is not None:
            if i != len(trace.moves) - 1:
                raise ValueError(f"game was already won at move {i + 1}")
            out.outcome = Outcome.BUILDER_WIN
            out.witness_color, out.witness = hit[0], tuple(hit[1])
            return out
    if trace.outcome is Outcome.BUILDER_ILLEGAL:
        if trace.illegal_edge is not None:
            why = _check_edge(g, c, trace.illegal_edge)
            if why is None:
                raise ValueError("recorded illegal move is actually legal")
            out.illegal_edge = trace.illegal_edge
            out.reason = why
        else:
            out.reason = trace.reason
        out.outcome = Outcome.BUILDER_ILLEGAL
        out.illegal_index = len(out.moves)
        return out
    if trace.outcome is Outcome.BUILDER_STOPPED:
        out.outcome = Outcome.BUILDER_STOPPED
        return out
    out.outcome = Outcome.BUDGET_EXHAUSTED
    return out


def to_dot(trace_or_graph, witness=None) -> str:
    """Graphviz text: red/blue edges, witness edges drawn thick."""
    if isinstance(trace_or_graph, GameTrace):
        g = trace_or_graph.graph()
        witness = witness or trace_or_graph.witness
    else:
        g = trace_or_graph
    bold = set()
    if witness:
        w = list(witness)
        if len(w) == 3:
            bold = {norm_edge(w[0], w[1]), norm_edge(w[1], w[2]), norm_edge(w[0], w[2])}
        else:
            bold = {norm_edge(a, b) for a, b in zip(w, w[1:])}
    lines = ["graph game {", "  node [shape=circle];"]
    for u, v, c in g.edges():
        attrs = [f"color={c.value}"]
        if norm_edge(u, v) in bold:
            attrs.append("penwidth=4")
        lines.append(f"  {u} -- {v} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
