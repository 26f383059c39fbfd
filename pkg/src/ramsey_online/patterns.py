"""Pattern catalog and subgraph matching, optionally restricted to one color."""

from __future__ import annotations

import enum
import itertools
import os
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .canon import uncolored_key
from .graph import BLUE, RED, Color, ColoredGraph, norm_edge, parse_edge_list

CATALOG_ENV = "RAMSEY_CATALOG_DIR"

CATALOG_NAMES = ["X", "X1", "X2", "X3", "X4", "X5", "Y", "K4", "K13", "K15", "K23", "C3", "C4",
                 "P2", "P3", "P4", "P5", "P6", "P7"]


class IsolatedVertexError(ValueError):
    """A pattern has a vertex of degree 0."""


class UnknownPatternError(KeyError):
    pass


@dataclass(frozen=True)
class Pattern:
    name: str
    edges: tuple[tuple[int, int], ...]
    n: int = field(default=-1)

    def __post_init__(self):
        es = tuple(sorted({norm_edge(u, v) for u, v in self.edges}))
        if len(es) != len(self.edges):
            raise ValueError(f"pattern {self.name}: repeated edge")
        for u, v in es:
            if u == v:
                raise ValueError(f"pattern {self.name}: loop at {u}")
        if not es:
            raise ValueError(f"pattern {self.name}: no edges")
        used = {x for e in es for x in e}
        n = self.n if self.n >= 0 else max(used) + 1
        missing = sorted(set(range(n)) - used)
        if missing or min(used) < 0 or max(used) >= n:
            raise IsolatedVertexError(
                f"pattern {self.name}: vertices {missing} have no edges; "
                "patterns may not have isolated vertices (the board always has infinitely many)")
        object.__setattr__(self, "edges", es)
        object.__setattr__(self, "n", n)

    @property
    def num_vertices(self) -> int:
        return self.n

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in range(self.n)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> list[int]:
        adj = self.adjacency()
        return [len(adj[v]) for v in range(self.n)]

    def key(self) -> bytes:
        """Isomorphism-invariant key."""
        return uncolored_key(self.edges)

    def colored(self, color: Color = RED) -> ColoredGraph:
        return ColoredGraph((u, v, color) for u, v in self.edges)

    @classmethod
    def from_edges(cls, name, edges):
        """Build a pattern from arbitrary ids, compacting them to 0..n-1."""
        ids = sorted({x for e in edges for x in e})
        relabel = {v: i for i, v in enumerate(ids)}
        return cls(name, tuple((relabel[u], relabel[v]) for u, v in edges))


def _catalog_dir() -> Path | None:
    env = os.environ.get(CATALOG_ENV)
    return Path(env) if env else None


def load_pattern_file(path: str | Path, name: str | None = None) -> Pattern:
    path = Path(path)
    return Pattern(name or path.stem, tuple(parse_edge_list(path.read_text())))


@lru_cache(maxsize=None)
def _load_catalog(override: str | None) -> dict[str, Pattern]:
    out = {}
    for name in CATALOG_NAMES:
        text = None
        if override is not None:
            p = Path(override) / f"{name}.txt"
            if p.exists():
                text = p.read_text()
        if text is None:
            text = resources.files("ramsey_online").joinpath("data", "patterns", f"{name}.txt").read_text()
        out[name] = Pattern(name, tuple(parse_edge_list(text)))
    return out


def catalog() -> dict[str, Pattern]:
    d = _catalog_dir()
    return dict(_load_catalog(str(d) if d else None))


def get_pattern(name_or_file: str) -> Pattern:
    """Catalog name, or a path to an edge-list file."""
    cat = catalog()
    if name_or_file in cat:
        return cat[name_or_file]
    p = Path(name_or_file)
    if p.is_file():
        return load_pattern_file(p)
    raise UnknownPatternError(
        f"unknown pattern {name_or_file!r}; catalog: {', '.join(CATALOG_NAMES)} (or an edge-list file)")


# matching


def host_adjacency(host, color: Color | None = None) -> dict[int, set[int]]:
    """Adjacency sets of a ColoredGraph, Pattern, or edge list, optionally one color only."""
    adj: dict[int, set[int]] = {}
    if isinstance(host, ColoredGraph):
        for v in host.vertices:
            nb = host.adjacency(v)
            s = {w for w, c in nb.items() if color is None or c is color}
            if s:
                adj[v] = s
        return adj
    edges = host.edges if isinstance(host, Pattern) else host
    for e in edges:
        u, v = e[0], e[1]
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def _search_order(pat_adj, n, start=()):
    # Grow a connected order: seeds first, then the vertex with most placed
    # neighbors, ties by degree then id.
    order = list(start)
    placed = set(order)
    while len(order) < n:
        best = None
        for v in range(n):
            if v in placed:
                continue
            k = (len(pat_adj[v] & placed), len(pat_adj[v]), -v)
            if best is None or k > best[0]:
                best = (k, v)
        order.append(best[1])
        placed.add(best[1])
    return order


@lru_cache(maxsize=4096)
def _plan(pattern: Pattern, pinned: tuple[int, ...]):
    """Search order for the unpinned vertices, their already-placed neighbors, degrees."""
    pat_adj = pattern.adjacency()
    order = _search_order(pat_adj, pattern.n, pinned)[len(pinned):]
    placed = set(pinned)
    back = []
    for v in order:
        back.append(tuple(w for w in pat_adj[v] if w in placed))
        placed.add(v)
    checks = tuple((a, b) for a in pinned for b in pat_adj[a] if b in pinned and a < b)
    degs = tuple(len(pat_adj[v]) for v in range(pattern.n))
    return tuple(order), tuple(back), checks, degs


def iter_embeddings(host_adj, pattern: Pattern, partial: dict[int, int] | None = None):
    """Yield injective maps pattern vertex -> host vertex that carry edges to edges.

    ``partial`` pins some pattern vertices in advance.
    """
    partial = dict(partial or {})
    pinned = tuple(sorted(partial))
    order, back, checks, pdeg = _plan(pattern, pinned)
    if len(set(partial.values())) != len(partial):
        return
    for a, x in partial.items():
        if len(host_adj.get(x, ())) < pdeg[a]:
            return
    for a, b in checks:
        if partial[b] not in host_adj[partial[a]]:
            return
    mapping = partial
    used = set(partial.values())
    hosts_sorted = None
    last = len(order)

    def rec(i):
        nonlocal hosts_sorted
        if i == last:
            yield dict(mapping)
            return
        v = order[i]
        nbs = back[i]
        if nbs:
            cands = host_adj[mapping[nbs[0]]]
            if len(nbs) > 1:
                cands = set(cands)
                for w in nbs[1:]:
                    cands &= host_adj[mapping[w]]
            cands = sorted(cands)
        else:
            if hosts_sorted is None:
                hosts_sorted = sorted(host_adj)
            cands = hosts_sorted
        need = pdeg[v]
        for x in cands:
            if x in used or len(host_adj[x]) < need:
                continue
            mapping[v] = x
            used.add(x)
            yield from rec(i + 1)
            used.discard(x)
            del mapping[v]

    yield from rec(0)


@lru_cache(maxsize=None)
def oriented_edge_reps(pattern: Pattern) -> tuple[tuple[int, int], ...]:
    """One oriented edge (a, b) per orbit under the pattern's automorphisms."""
    adj = host_adjacency(pattern)
    autos = list(iter_embeddings(adj, pattern))
    reps = []
    seen = set()
    for a, b in pattern.edges:
        for x, y in ((a, b), (b, a)):
            if (x, y) in seen:
                continue
            reps.append((x, y))
            for m in autos:
                seen.add((m[x], m[y]))
    return tuple(reps)


def contains_subgraph(host, pattern: Pattern, color: Color | None = None) -> dict[int, int] | None:
    """First embedding of ``pattern`` into ``host`` in a fixed search order, or None.

    Subgraph semantics (not induced).  With ``color``, only host edges of that
    color are usable.
    """
    if isinstance(host, Pattern) and pattern.n > host.n:
        return None
    adj = host_adjacency(host, color)
    return next(iter_embeddings(adj, pattern), None)


def embeddings_through(host, pattern: Pattern, u: int, v: int, color: Color | None = None):
    """Embeddings whose image uses host edge uv, up to symmetries of the pattern."""
    adj = host_adjacency(host, color)
    if v not in adj.get(u, ()):
        return
    for a, b in oriented_edge_reps(pattern):
        yield from iter_embeddings(adj, pattern, {a: u, b: v})


def contains_subgraph_through(host, pattern: Pattern, u: int, v: int, color: Color | None = None):
    return next(embeddings_through(host, pattern, u, v, color), None)


def is_subgraph(small: Pattern, big: Pattern) -> bool:
    if small.n > big.n or small.num_edges > big.num_edges:
        return False
    return contains_subgraph(big, small) is not None


def isomorphic(a: Pattern, b: Pattern) -> bool:
    return a.n == b.n and a.num_edges == b.num_edges and a.key() == b.key()


def brute_force_contains(host_edges, pattern: Pattern, color_edges=None) -> bool:
    """Oracle: try every injective map.  ``host_edges`` is an edge list."""
    adj = host_adjacency(host_edges)
    verts = sorted(adj)
    for image in itertools.permutations(verts, pattern.n):
        if all(image[b] in adj[image[a]] for a, b in pattern.edges):
            return True
    return False


def mono_c3(g: ColoredGraph) -> tuple[Color, tuple[int, int, int]] | None:
    """A monochromatic triangle (red checked first), as sorted vertex triple."""
    for color in (RED, BLUE):
        for u in g.vertices:
            nb = g.neighbors(u, color)
            for i, v in enumerate(nb):
                if v < u:
                    continue
                for w in nb[i + 1:]:
                    if g.get_color(v, w) is color:
                        return color, tuple(sorted((u, v, w)))
    return None


def mono_c3_through(g: ColoredGraph, u: int, v: int) -> tuple[Color, tuple[int, int, int]] | None:
    c = g.get_color(u, v)
    if c is None:
        return None
    for w in g.neighbors(u, c):
        if g.get_color(v, w) is c:
            return c, tuple(sorted((u, v, w)))
    return None


# classification


class Verdict(enum.Enum):
    PAINTER = "PAINTER"
    BUILDER = "BUILDER"
    OPEN = "OPEN"

    def __str__(self):
        return self.value


PAINTER_TARGETS = ("X1", "X2", "X3", "X4")


@dataclass
class Classification:
    verdict: Verdict
    reason: str
    witness: str | None = None
    embedding: dict[int, int] | None = None


def classify(F: Pattern) -> Classification:
    degs = F.degrees()
    if min(degs) == 0:
        raise IsolatedVertexError(f"pattern {F.name} has an isolated vertex")
    cat = catalog()
    if isomorphic(F, cat["X5"]):
        return Classification(Verdict.OPEN, "isomorphic to X5, whose status is unresolved", "X5")
    for name in PAINTER_TARGETS:
        target = cat[name]
        if F.n <= target.n:
            emb = contains_subgraph(target, F)
            if emb is not None:
                return Classification(Verdict.PAINTER, f"subgraph of {name}", name, emb)
    if not is_subgraph(F, cat["X"]):
        return Classification(Verdict.BUILDER, "not a subgraph of X; the star-triangle builder never creates it")
    for name in ("K4", "K15", "Y"):
        if is_subgraph(cat[name], F):
            return Classification(Verdict.BUILDER, f"contains {name}", name, contains_subgraph(F, cat[name]))
    # Every subgraph of X falls in one of the cases above; reaching here means
    # the catalog data is inconsistent.
    raise AssertionError(f"pattern {F.name} escapes the classification lattice")


def classify_forbidden_graph(F: Pattern) -> Verdict:
    return classify(F).verdict


def subgraphs_without_isolated(p: Pattern) -> list[Pattern]:
    """All pairwise non-isomorphic subgraphs of ``p`` with no isolated vertex."""
    seen = {}
    es = p.edges
    for r in range(1, len(es) + 1):
        for sub in itertools.combinations(es, r):
            q = Pattern.from_edges(f"{p.name}[{len(seen)}]", sub)
            if q.key() not in seen:
                seen[q.key()] = q
    return list(seen.values())
