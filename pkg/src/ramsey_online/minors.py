"""Minor tests: fast K4 and K2,3 recognition, a generic small-minor oracle,
and the path-ordering check for K4-minor-free graphs.

K4 has maximum degree 3, so containing K4 as a minor and as a topological
minor are the same thing; nothing separate is needed for the latter.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .canon import uncolored_key
from .graph import ColoredGraph, norm_edge
from .patterns import Pattern, catalog, contains_subgraph

MAX_ORACLE_VERTICES = 12


class HostTooLargeError(ValueError):
    """The generic minor oracle only handles desk-scale hosts."""


class PreconditionError(ValueError):
    pass


def _edge_list(g) -> list[tuple[int, int]]:
    if isinstance(g, ColoredGraph):
        return [(u, v) for u, v, _ in g.edges()]
    if isinstance(g, Pattern):
        return list(g.edges)
    return [(e[0], e[1]) for e in g]


def _adj_sets(edges) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        if u == v:
            continue
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def has_k4_minor(g) -> bool:
    """Series-parallel reduction: drop degree <= 1, suppress degree 2.

    The graph is K4-minor-free exactly when this empties it.
    """
    adj = _adj_sets(_edge_list(g))
    stack = [v for v in adj if len(adj[v]) <= 2]
    while stack:
        v = stack.pop()
        if v not in adj or len(adj[v]) > 2:
            continue
        nb = list(adj.pop(v))
        for w in nb:
            adj[w].discard(v)
        if len(nb) == 2:
            a, b = nb
            adj[a].add(b)
            adj[b].add(a)
        for w in nb:
            if len(adj[w]) <= 2:
                stack.append(w)
    return bool(adj)


def is_outerplanar(edges) -> bool:
    """Outerplanar iff adding a vertex adjacent to everything keeps it planar."""
    G = nx.Graph(edges)
    if G.number_of_nodes() <= 3:
        return True
    apex = ("apex",)
    G.add_edges_from((apex, v) for v in list(G.nodes))
    return nx.check_planarity(G)[0]


def has_k23_minor(g) -> bool:
    """A graph avoids a K2,3 minor iff each block is outerplanar or a K4."""
    edges = _edge_list(g)
    if not edges:
        return False
    G = nx.Graph(edges)
    for block in nx.biconnected_component_edges(G):
        block = list(block)
        nodes = {x for e in block for x in e}
        if len(nodes) == 4 and len(block) == 6:
            continue
        if not is_outerplanar(block):
            return True
    return False


@dataclass(frozen=True)
class MinorModel:
    """Branch set per pattern vertex."""

    branch_sets: dict[int, frozenset[int]]

    def check(self, host_edges, pattern: Pattern) -> None:
        adj = _adj_sets(host_edges)
        seen: set[int] = set()
        for a in range(pattern.n):
            s = self.branch_sets[a]
            if not s:
                raise AssertionError(f"empty branch set for {a}")
            if seen & s:
                raise AssertionError("branch sets overlap")
            seen |= s
            start = next(iter(s))
            reach = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in adj.get(x, ()):
                    if y in s and y not in reach:
                        reach.add(y)
                        stack.append(y)
            if reach != s:
                raise AssertionError(f"branch set of {a} is not connected")
        for a, b in pattern.edges:
            sa, sb = self.branch_sets[a], self.branch_sets[b]
            if not any(y in sb for x in sa for y in adj.get(x, ())):
                raise AssertionError(f"no edge between branch sets of {a} and {b}")


def has_minor(g, p: Pattern) -> MinorModel | None:
    """Oracle: ``p`` is a minor iff it is a subgraph of some contraction of ``g``.

    Explores contractions depth first, memoizing failures by isomorphism class.
    """
    edges = _edge_list(g)
    verts = {x for e in edges for x in e}
    if len(verts) > MAX_ORACLE_VERTICES:
        raise HostTooLargeError(f"host has {len(verts)} vertices; oracle limit is {MAX_ORACLE_VERTICES}")
    failed: set[bytes] = set()

    def rec(cur_edges, bags):
        if len(bags) < p.n or len(cur_edges) < p.num_edges:
            return None
        key = uncolored_key(cur_edges)
        if key in failed:
            return None
        emb = contains_subgraph(list(cur_edges), p)
        if emb is not None:
            return {a: frozenset(bags[x]) for a, x in emb.items()}
        if len(bags) > p.n or len(cur_edges) > p.num_edges:
            for u, v in sorted(cur_edges):
                # contract v into u
                new = set()
                for a, b in cur_edges:
                    a = u if a == v else a
                    b = u if b == v else b
                    if a != b:
                        new.add(norm_edge(a, b))
                nb = {x: s for x, s in bags.items() if x != v}
                nb[u] = bags[u] | bags[v]
                # vertices left isolated carry nothing useful
                live = {x for e in new for x in e}
                nb = {x: s for x, s in nb.items() if x in live}
                res = rec(frozenset(new), nb)
                if res is not None:
                    return res
        failed.add(key)
        return None

    start = frozenset(norm_edge(u, v) for u, v in edges)
    res = rec(start, {v: frozenset([v]) for v in verts})
    if res is None:
        return None
    model = MinorModel(res)
    model.check(edges, p)
    return model


def in_minor_free(g, name: str) -> bool:
    if name == "K4":
        return not has_k4_minor(g)
    if name == "K23":
        return not has_k23_minor(g)
    return has_minor(g, catalog()[name]) is None


def _check_path(g: ColoredGraph, path, x, y, e):
    if len(path) < 2 or path[0] != x or path[-1] != y:
        raise PreconditionError(f"path {path} does not run from {x} to {y}")
    if len(set(path)) != len(path):
        raise PreconditionError(f"path {path} repeats a vertex")
    for a, b in zip(path, path[1:]):
        if norm_edge(a, b) == e:
            raise PreconditionError(f"path {path} uses the edge {e} itself")
        if not g.has_edge(a, b):
            raise PreconditionError(f"path {path} uses a missing edge {(a, b)}")


def check_path_ordering(g: ColoredGraph, e: tuple[int, int], P, Q) -> bool:
    """True iff the vertices common to P and Q appear in the same order on both.

    P and Q must be x,y-paths avoiding the edge e = xy, and g must be
    K4-minor-free; violations raise PreconditionError.
    """
    x, y = e
    if not g.has_edge(x, y):
        raise PreconditionError(f"{e} is not an edge")
    if has_k4_minor(g):
        raise PreconditionError("host has a K4 minor")
    ne = norm_edge(x, y)
    _check_path(g, P, x, y, ne)
    _check_path(g, Q, x, y, ne)
    common = set(P) & set(Q)
    return [v for v in P if v in common] == [v for v in Q if v in common]
