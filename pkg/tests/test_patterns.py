import itertools
import random

import pytest
from oracles import brute_mono_triangle, perm_contains, random_graph, relabel

from ramsey_online.graph import BLUE, RED, ColoredGraph
from ramsey_online.patterns import (CATALOG_NAMES, IsolatedVertexError, Pattern, UnknownPatternError, Verdict,
                                    brute_force_contains, catalog, classify, contains_subgraph,
                                    embeddings_through, get_pattern, is_subgraph, isomorphic, mono_c3,
                                    mono_c3_through, subgraphs_without_isolated)

CAT = catalog()


def test_catalog_sizes():
    sizes = {name: (p.n, p.num_edges) for name, p in CAT.items()}
    assert sizes["X"] == (6, 8)
    assert sizes["Y"] == (6, 7)
    assert sizes["X1"] == sizes["X2"] == sizes["X5"] == (6, 6)
    assert sizes["X3"] == sizes["X4"] == (5, 6)
    assert sizes["K4"] == (4, 6) and sizes["K23"] == (5, 6) and sizes["K15"] == (6, 5)
    assert sizes["P7"] == (7, 6) and sizes["C4"] == (4, 4)
    assert set(CAT) == set(CATALOG_NAMES)


def test_x_family_sits_inside_x_and_is_an_antichain():
    X = CAT["X"]
    fam = ["X1", "X2", "X3", "X4", "X5", "Y"]
    for name in fam:
        assert perm_contains(X.edges, CAT[name].edges), name
    for a, b in itertools.permutations(fam[:5], 2):
        assert not perm_contains(CAT[b].edges, CAT[a].edges), (a, b)


def test_x_family_degree_sequences():
    degs = {name: sorted(CAT[name].degrees(), reverse=True) for name in ("X", "X1", "X2", "X3", "X4", "X5", "Y")}
    assert degs["X"] == [5, 3, 3, 3, 1, 1]
    assert degs["X3"] == [3, 3, 3, 2, 1]
    assert degs["X4"] == [4, 3, 2, 2, 1]
    assert degs["Y"] == [4, 3, 3, 2, 1, 1]


def test_pattern_validation():
    with pytest.raises(IsolatedVertexError):
        Pattern("gap", ((0, 2),))
    with pytest.raises(IsolatedVertexError):
        Pattern("pad", ((0, 1),), n=3)
    with pytest.raises(ValueError):
        Pattern("dup", ((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        Pattern("loop", ((0, 0), (0, 1)))
    with pytest.raises(ValueError):
        Pattern("empty", ())
    assert Pattern.from_edges("p", [(10, 20), (20, 35)]).edges == ((0, 1), (1, 2))


def test_get_pattern_file_and_unknown(tmp_path):
    f = tmp_path / "bowtie.txt"
    f.write_text("# bowtie\n0 1\n1 2\n0 2\n0 3\n3 4\n0 4\n")
    p = get_pattern(str(f))
    assert p.name == "bowtie" and p.num_edges == 6
    with pytest.raises(UnknownPatternError):
        get_pattern("nope")
    f.write_text("0 1\n2 3\n5 6\n")
    with pytest.raises(IsolatedVertexError):
        get_pattern(str(f))


def test_catalog_dir_override(tmp_path, monkeypatch):
    (tmp_path / "K4.txt").write_text("0 1\n1 2\n")
    monkeypatch.setenv("RAMSEY_CATALOG_DIR", str(tmp_path))
    assert catalog()["K4"].num_edges == 2
    assert catalog()["X"].num_edges == 8
    monkeypatch.delenv("RAMSEY_CATALOG_DIR")
    assert catalog()["K4"].num_edges == 6


def test_matcher_against_permutation_oracle():
    rng = random.Random(5)
    for _ in range(120):
        host = relabel(random_graph(rng.randint(3, 7), rng.choice((0.3, 0.5, 0.7)), rng), rng, offset=rng.randint(0, 4))
        if not host:
            continue
        for name in ("C3", "C4", "K13", "P4", "X3", "K4", "K23"):
            pat = CAT[name]
            got = contains_subgraph(host, pat)
            assert (got is not None) == perm_contains(host, pat.edges), (host, name)
            if got is not None:
                hs = {frozenset(e) for e in host}
                assert all(frozenset((got[a], got[b])) in hs for a, b in pat.edges)
                assert len(set(got.values())) == pat.n


def test_package_brute_force_agrees_with_oracle():
    rng = random.Random(9)
    for _ in range(40):
        host = random_graph(6, 0.5, rng)
        if host:
            assert brute_force_contains(host, CAT["C4"]) == perm_contains(host, CAT["C4"].edges)


def test_color_restricted_matching():
    rng = random.Random(2)
    for _ in range(80):
        es = [(u, v, rng.choice((RED, BLUE))) for u, v in random_graph(6, 0.6, rng)]
        g = ColoredGraph(es)
        for color in (RED, BLUE):
            sub = [(u, v) for u, v, c in es if c is color]
            for name in ("C3", "P4", "K13"):
                want = bool(sub) and perm_contains(sub, CAT[name].edges)
                assert (contains_subgraph(g, CAT[name], color) is not None) == want


def test_embeddings_through_an_edge():
    rng = random.Random(4)
    for _ in range(60):
        host = random_graph(6, 0.55, rng)
        if not host:
            continue
        u, v = rng.choice(host)
        for name in ("C3", "C4", "P4"):
            pat = CAT[name]
            embs = list(embeddings_through(host, pat, u, v))
            for emb in embs:
                img = {frozenset((emb[a], emb[b])) for a, b in pat.edges}
                assert frozenset((u, v)) in img
            rest = [e for e in host if set(e) != {u, v}]
            uses = perm_contains(host, pat.edges) and not (rest and perm_contains(rest, pat.edges))
            if uses:
                assert embs


def test_mono_triangle_search():
    rng = random.Random(8)
    for _ in range(150):
        es = [(u, v, rng.choice((RED, BLUE))) for u, v in random_graph(6, 0.5, rng)]
        g = ColoredGraph(es)
        hit = mono_c3(g)
        assert (hit is not None) == brute_mono_triangle(es)
        if hit:
            color, (a, b, c) = hit
            assert g.get_color(a, b) is g.get_color(b, c) is g.get_color(a, c) is color
        if es:
            u, v, _ = es[-1]
            t = mono_c3_through(g, u, v)
            if t is not None:
                assert {u, v} <= set(t[1])


def test_is_subgraph_and_isomorphic():
    assert is_subgraph(CAT["C3"], CAT["K4"])
    assert is_subgraph(CAT["K4"], CAT["X"])
    assert not is_subgraph(CAT["K4"], CAT["Y"])
    assert isomorphic(Pattern.from_edges("c", [(5, 7), (7, 9), (9, 5)]), CAT["C3"])
    assert not isomorphic(CAT["P4"], CAT["K13"])


def test_classify_basics():
    assert classify(CAT["X5"]).verdict is Verdict.OPEN
    assert classify(CAT["K4"]).verdict is Verdict.BUILDER
    assert classify(CAT["C3"]).verdict is Verdict.PAINTER
    assert classify(CAT["X"]).verdict is Verdict.BUILDER
    r = classify(CAT["X2"])
    assert r.verdict is Verdict.PAINTER and r.witness == "X2"


def test_subgraphs_of_x_are_distinct_classes():
    subs = subgraphs_without_isolated(CAT["X"])
    keys = {s.key() for s in subs}
    assert len(keys) == len(subs) == 36
    for s in subs:
        assert perm_contains(CAT["X"].edges, s.edges)
        assert min(s.degrees()) > 0
