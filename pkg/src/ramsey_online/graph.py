"""Two-edge-colored simple graphs: the game board.

Vertices are nonnegative integers.  Any id that does not appear on an edge is
an isolated vertex and is implicitly available, so the board never stores
isolated vertices.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from pathlib import Path


class Color(enum.Enum):
    RED = "red"
    BLUE = "blue"

    def swap(self) -> "Color":
        return Color.BLUE if self is Color.RED else Color.RED

    @classmethod
    def parse(cls, text: str) -> "Color":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown color {text!r} (expected red or blue)") from None

    def __str__(self) -> str:
        return self.value


RED = Color.RED
BLUE = Color.BLUE


class GraphError(ValueError):
    """Base class for illegal board operations."""


class LoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class UnknownEdgeError(GraphError):
    pass


class CycleCapExceeded(RuntimeError):
    """More cycles than the enumeration cap; the answer is unknown, not empty."""


def norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class ColoredGraph:
    """A simple graph whose edges are each colored red or blue.

    Edges can be added but never removed or recolored.  ``with_edge`` returns
    an extended copy and is what strategies use for hypothetical moves.
    """

    __slots__ = ("_adj", "_order")

    def __init__(self, edges: Iterable[tuple[int, int, Color]] = ()):
        self._adj: dict[int, dict[int, Color]] = {}
        self._order: list[tuple[int, int]] = []
        for u, v, c in edges:
            self.add_edge(u, v, c)

    # construction

    def add_edge(self, u: int, v: int, color: Color) -> "ColoredGraph":
        if u == v:
            raise LoopError(f"loop at vertex {u}")
        if u < 0 or v < 0:
            raise GraphError(f"vertex ids must be nonnegative, got {u}, {v}")
        if v in self._adj.get(u, ()):
            raise DuplicateEdgeError(f"edge {norm_edge(u, v)} already present")
        if not isinstance(color, Color):
            raise TypeError(f"expected Color, got {color!r}")
        self._adj.setdefault(u, {})[v] = color
        self._adj.setdefault(v, {})[u] = color
        self._order.append(norm_edge(u, v))
        return self

    def with_edge(self, u: int, v: int, color: Color) -> "ColoredGraph":
        return self.copy().add_edge(u, v, color)

    def copy(self) -> "ColoredGraph":
        g = ColoredGraph.__new__(ColoredGraph)
        g._adj = {v: dict(nb) for v, nb in self._adj.items()}
        g._order = list(self._order)
        return g

    def _pop_last(self) -> None:
        # Undo for search code that walks a single board; not a game operation.
        u, v = self._order.pop()
        del self._adj[u][v]
        del self._adj[v][u]
        if not self._adj[u]:
            del self._adj[u]
        if not self._adj[v]:
            del self._adj[v]

    # queries

    @property
    def vertices(self) -> list[int]:
        return sorted(self._adj)

    def num_vertices(self) -> int:
        return len(self._adj)

    def num_edges(self) -> int:
        return len(self._order)

    def __len__(self) -> int:
        return len(self._order)

    def edges(self) -> list[tuple[int, int, Color]]:
        """Edges in the order they were added."""
        return [(u, v, self._adj[u][v]) for u, v in self._order]

    def edge_set(self) -> frozenset[tuple[int, int, Color]]:
        return frozenset((u, v, self._adj[u][v]) for u, v in self._order)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def color(self, u: int, v: int) -> Color:
        try:
            return self._adj[u][v]
        except KeyError:
            raise UnknownEdgeError(f"no edge {norm_edge(u, v)}") from None

    def get_color(self, u: int, v: int) -> Color | None:
        return self._adj.get(u, {}).get(v)

    def neighbors(self, v: int, color: Color | None = None) -> list[int]:
        nb = self._adj.get(v, {})
        if color is None:
            return sorted(nb)
        return sorted(w for w, c in nb.items() if c is color)

    def adjacency(self, v: int) -> dict[int, Color]:
        return self._adj.get(v, {})

    def degree(self, v: int, color: Color | None = None) -> int:
        nb = self._adj.get(v, {})
        if color is None:
            return len(nb)
        return sum(1 for c in nb.values() if c is color)

    def fresh_vertex(self, reserved: Iterable[int] = ()) -> int:
        """Smallest id not on any edge and not in ``reserved``."""
        taken = set(self._adj) | set(reserved)
        v = 0
        while v in taken:
            v += 1
        return v

    def swapped(self) -> "ColoredGraph":
        return ColoredGraph((u, v, c.swap()) for u, v, c in self.edges())

    def relabeled(self, mapping: dict[int, int]) -> "ColoredGraph":
        return ColoredGraph((mapping[u], mapping[v], c) for u, v, c in self.edges())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColoredGraph):
            return NotImplemented
        return self.edge_set() == other.edge_set()

    def __hash__(self) -> int:
        return hash(self.edge_set())

    def __repr__(self) -> str:
        body = ", ".join(f"{u}-{v}:{c.value[0]}" for u, v, c in self.edges())
        return f"ColoredGraph([{body}])"


@dataclass(frozen=True)
class CycleView:
    """A cycle of a host graph given by its cyclic vertex sequence."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) < 3:
            raise ValueError("a cycle needs at least three vertices")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError(f"repeated vertex in cycle {self.vertices}")

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [norm_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def arcs(self, i: int, j: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
        """Edge lists of the two arcs between positions ``i`` and ``j``."""
        n = len(self.vertices)
        if i > j:
            i, j = j, i
        es = self.edges
        return es[i:j], es[j:] + es[:i]

    def check_in(self, g: ColoredGraph) -> None:
        for u, v in self.edges:
            if not g.has_edge(u, v):
                raise UnknownEdgeError(f"cycle edge {(u, v)} missing from host")


def f_value(g: ColoredGraph, edges: Iterable[tuple[int, int]]) -> int:
    """(#red - #blue) mod 3 over the given edges: 0 zero, 1 positive, 2 negative."""
    total = 0
    for u, v in edges:
        total += 1 if g.color(u, v) is RED else -1
    return total % 3


def cycles_through(g: ColoredGraph, u: int, v: int, cap: int = 10**6) -> list[CycleView]:
    """Every simple cycle containing edge uv, as u..v paths in g - uv closed by uv.

    Raises CycleCapExceeded if more than ``cap`` cycles exist.
    """
    if not g.has_edge(u, v):
        raise UnknownEdgeError(f"no edge {norm_edge(u, v)}")
    out: list[CycleView] = []
    path = [u]
    on_path = {u}

    def dfs(x: int) -> None:
        for y in g.neighbors(x):
            if x == u and y == v:
                continue
            if y == v:
                if len(path) >= 2:
                    out.append(CycleView(tuple(path) + (v,)))
                    if len(out) > cap:
                        raise CycleCapExceeded(f"more than {cap} cycles through {norm_edge(u, v)}")
                continue
            if y in on_path:
                continue
            path.append(y)
            on_path.add(y)
            dfs(y)
            path.pop()
            on_path.discard(y)

    dfs(u)
    return out


def components(g: ColoredGraph) -> list[list[int]]:
    """Connected components of the non-isolated vertices, ignoring colors."""
    seen: set[int] = set()
    comps = []
    for s in g.vertices:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.adjacency(x):
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def component_of(g: ColoredGraph, v: int) -> set[int]:
    if v not in g.adjacency(v) and g.degree(v) == 0:
        return set()
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for y in g.adjacency(x):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def component_size(g: ColoredGraph, v: int) -> int:
    return len(component_of(g, v))


def is_forest(g: ColoredGraph) -> bool:
    return g.num_edges() == g.num_vertices() - len(components(g))


# edge-list text format


def parse_edge_list(text: str) -> list[tuple[int, int]]:
    """Parse ``u v`` lines; ``#`` starts a comment, blank lines are ignored."""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected two vertex ids, got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: vertex ids must be integers, got {raw!r}") from None
        if u < 0 or v < 0:
            raise ValueError(f"line {lineno}: vertex ids must be nonnegative")
        edges.append((u, v))
    return edges


def read_edge_list(path: str | Path) -> list[tuple[int, int]]:
    return parse_edge_list(Path(path).read_text())


def format_edge_list(edges: Iterable[tuple[int, int]], header: str | None = None) -> str:
    lines = [f"# {header}"] if header else []
    lines += [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def iter_simple_paths(g: ColoredGraph, s: int, t: int, banned: Iterable[tuple[int, int]] = ()) -> Iterator[list[int]]:
    """All simple s-t paths, skipping the (undirected) edges in ``banned``."""
    skip = {norm_edge(a, b) for a, b in banned}
    path = [s]
    on = {s}

    def rec(x):
        if x == t:
            yield list(path)
            return
        for y in g.neighbors(x):
            if y in on or norm_edge(x, y) in skip:
                continue
            path.append(y)
            on.add(y)
            yield from rec(y)
            path.pop()
            on.discard(y)

    yield from rec(s)
