"""Canonical labeling of small edge-colored graphs.

Colors are small positive ints on edges (0 means no edge).  The search is
the usual refine, individualize, refine scheme; every leaf of the search
tree is visited except those reachable by swapping twin vertices, and the
lexicographically least adjacency encoding wins.  Leaves that tie with the
best one give automorphisms for free, which the solver uses to merge
symmetric moves.
"""

from __future__ import annotations

from .graph import BLUE, RED, ColoredGraph

COLOR_CODE = {RED: 1, BLUE: 2}
MARK = 3


def colored_matrix(g: ColoredGraph, mark: tuple[int, int] | None = None):
    """Vertex list and dict-of-dicts of color codes for the non-isolated vertices."""
    verts = g.vertices
    if mark is not None:
        verts = sorted(set(verts) | set(mark))
    adj = {v: {w: COLOR_CODE[c] for w, c in g.adjacency(v).items()} for v in verts}
    if mark is not None:
        a, b = mark
        adj[a][b] = MARK
        adj[b][a] = MARK
    return verts, adj


def _refine(verts, adj, label):
    """Equitable refinement; labels stay canonical because ranks come from invariants."""
    ncells = len(set(label.values()))
    while True:
        sig = {}
        for v in verts:
            nb = sorted((label[w], c) for w, c in adj[v].items())
            sig[v] = (label[v], tuple(nb))
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        label = {v: ranks[sig[v]] for v in verts}
        k = len(ranks)
        if k == ncells:
            return label
        ncells = k


def _twin_classes(verts, adj):
    # Two vertices are twins if swapping them is an automorphism:
    # same colored neighborhood outside the pair, and either adjacent or not.
    key = {}
    for v in verts:
        key[v] = frozenset(adj[v].items())
    rep = {}
    classes = {}
    for v in verts:
        found = None
        for r in classes:
            a = key[v] - {(r, adj[v].get(r))}
            b = key[r] - {(v, adj[r].get(v))}
            if a == b and adj[v].get(r) == adj[r].get(v):
                found = r
                break
        if found is None:
            classes[v] = [v]
            rep[v] = v
        else:
            classes[found].append(v)
            rep[v] = found
    return rep, classes


class Canon:
    """Result of canonical labeling.

    ``key`` is a hashable encoding shared exactly by isomorphic inputs;
    ``order`` lists original vertices in canonical position order;
    ``automorphisms`` are vertex permutations (dicts) found along the way.
    """

    __slots__ = ("key", "order", "automorphisms")

    def __init__(self, key, order, automorphisms):
        self.key = key
        self.order = order
        self.automorphisms = automorphisms


def _encode(order, adj):
    n = len(order)
    out = bytearray([n])
    for i in range(n):
        ai = adj[order[i]]
        for j in range(i + 1, n):
            out.append(ai.get(order[j], 0))
    return bytes(out)


def canonical(verts, adj, vertex_labels=None) -> Canon:
    """Canonical form of a colored graph given as vertex list plus color dicts."""
    if not verts:
        return Canon(b"\x00", [], [])
    if vertex_labels is None:
        label = {v: 0 for v in verts}
    else:
        ranks = {s: i for i, s in enumerate(sorted(set(vertex_labels[v] for v in verts)))}
        label = {v: ranks[vertex_labels[v]] for v in verts}
    rep, classes = _twin_classes(verts, adj)
    best = [None, None]
    autos = []

    def leaf(lab):
        order = sorted(verts, key=lambda v: lab[v])
        enc = _encode(order, adj)
        if best[0] is None or enc < best[0]:
            best[0], best[1] = enc, order
        elif enc == best[0]:
            # order[i] and best_order[i] play the same role: an automorphism.
            autos.append({best[1][i]: order[i] for i in range(len(order))})

    def search(lab):
        lab = _refine(verts, adj, lab)
        if len(set(lab.values())) == len(verts):
            leaf(lab)
            return
        cells = {}
        for v in verts:
            cells.setdefault(lab[v], []).append(v)
        # first smallest non-singleton cell
        target = min((c for c in cells.values() if len(c) > 1), key=lambda c: (len(c), lab[c[0]]))
        tried = set()
        for v in target:
            r = rep[v]
            if r in tried:
                continue
            tried.add(r)
            new = {w: 2 * lab[w] + (0 if w == v else 1) for w in verts}
            search(new)

    search(label)
    # twin swaps are automorphisms too
    for members in classes.values():
        for a, b in zip(members, members[1:]):
            perm = {v: v for v in verts}
            perm[a], perm[b] = b, a
            autos.append(perm)
    return Canon(best[0], best[1], autos)


def canonical_graph(g: ColoredGraph, mark: tuple[int, int] | None = None) -> Canon:
    verts, adj = colored_matrix(g, mark)
    return canonical(verts, adj)


def canonical_key(g: ColoredGraph) -> bytes:
    return canonical_graph(g).key


def uncolored_key(edges) -> bytes:
    """Canonical key of an uncolored simple graph given as an edge list."""
    adj: dict[int, dict[int, int]] = {}
    for u, v in edges:
        adj.setdefault(u, {})[v] = 1
        adj.setdefault(v, {})[u] = 1
    return canonical(sorted(adj), adj).key


def edge_orbits(candidates, autos):
    """Partition candidate edges (pairs) into orbits under the generated group.

    Vertices missing from a permutation are fixed by it.
    """
    parent = {e: e for e in candidates}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in autos:
        for u, v in candidates:
            a, b = perm.get(u, u), perm.get(v, v)
            img = (a, b) if a < b else (b, a)
            if img in parent:
                ra, rb = find((u, v)), find(img)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    groups: dict = {}
    for e in candidates:
        groups.setdefault(find(e), []).append(e)
    return [sorted(g) for g in groups.values()]
