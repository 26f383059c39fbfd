import itertools
import random

import networkx as nx
import pytest
from oracles import perm_contains

from ramsey_online.engine import _check_edge, parse_constraint
from ramsey_online.graph import BLUE, RED, ColoredGraph, CycleView
from ramsey_online.minors import has_k4_minor
from ramsey_online.painter import (PAINTERS, TEMPLATES, HostClassError, NotRedError, NotZeroCycleError,
                                   bad_zero_cycles, closes_c3, closes_c4, closes_k13, get_painter, is_good,
                                   is_zero_cycle_good, red_claws, red_squares, strategy2, strategy3, strategy4,
                                   strategy_zero_cycle, subject_edges)
from ramsey_online.patterns import catalog, contains_subgraph_through

CAT = catalog()


def random_colored(rng, n, p):
    return ColoredGraph((u, v, rng.choice((RED, BLUE))) for u, v in itertools.combinations(range(n), 2)
                        if rng.random() < p)


def test_local_threats_match_generic_matcher():
    rng = random.Random(21)
    for _ in range(150):
        g = random_colored(rng, 7, 0.4)
        non = [(u, v) for u, v in itertools.combinations(range(7), 2) if not g.has_edge(u, v)]
        if not non:
            continue
        u, v = rng.choice(non)
        for color in (RED, BLUE):
            h = g.with_edge(u, v, color)
            assert closes_c3(g, u, v, color) == (contains_subgraph_through(h, CAT["C3"], u, v, color) is not None)
            assert closes_c4(g, u, v, color) == (contains_subgraph_through(h, CAT["C4"], u, v, color) is not None)
            assert closes_k13(g, u, v, color) == (contains_subgraph_through(h, CAT["K13"], u, v, color) is not None)


def test_red_claws_and_squares_enumerate_everything():
    rng = random.Random(22)
    for _ in range(80):
        g = random_colored(rng, 7, 0.5)
        red = {frozenset((u, v)) for u, v, c in g.edges() if c is RED}
        want_claws = set()
        for c in g.vertices:
            for ls in itertools.combinations(sorted(g.vertices), 3):
                if c not in ls and all(frozenset((c, x)) in red for x in ls):
                    want_claws.add((c,) + ls)
        assert set(red_claws(g)) == want_claws
        want_sq = set()
        for quad in itertools.permutations(g.vertices, 4):
            if all(frozenset(e) in red for e in zip(quad, quad[1:] + quad[:1])):
                want_sq.add(frozenset(frozenset(e) for e in zip(quad, quad[1:] + quad[:1])))
        got = [frozenset(frozenset(e) for e in subject_edges("C4", s)) for s in red_squares(g)]
        assert len(got) == len(set(got)) and set(got) == want_sq


def _placements(kind, verts):
    if kind == "K13":
        c, *ls = verts
        for p in itertools.permutations(ls):
            yield (c,) + p
    else:
        for r in range(4):
            rot = verts[r:] + verts[:r]
            yield rot
            yield (rot[0],) + tuple(reversed(rot[1:]))


def oracle_good(g, kind, verts):
    hs = {frozenset((u, v)) for u, v, _ in g.edges()}
    for t in TEMPLATES:
        if t.subject != kind:
            continue
        extra = sorted({x for e in t.extra for x in e} - {0, 1, 2, 3})
        others = [v for v in g.vertices if v not in verts]
        for place in _placements(kind, tuple(verts)):
            for img in itertools.permutations(others, len(extra)):
                m = dict(enumerate(place))
                m.update(zip(extra, img))
                if all(frozenset((m[a], m[b])) in hs for a, b in t.extra):
                    return True
    return False


def test_goodness_matches_pinned_search():
    rng = random.Random(23)
    checked = 0
    for _ in range(200):
        g = random_colored(rng, 8, 0.45)
        for s in red_claws(g):
            assert is_good(g, "K13", s).good == oracle_good(g, "K13", s)
            checked += 1
        for s in red_squares(g):
            assert is_good(g, "C4", s).good == oracle_good(g, "C4", s)
            checked += 1
    assert checked > 100


def test_template_examples():
    claw = ColoredGraph([(0, 1, RED), (0, 2, RED), (0, 3, RED)])
    assert not is_good(claw, "K13", (0, 1, 2, 3)).good
    g = claw.with_edge(0, 4, BLUE).with_edge(0, 5, BLUE)
    assert "A1" in is_good(g, "K13", (0, 1, 2, 3), all_witnesses=True).witnesses
    g = claw.with_edge(3, 7, BLUE).with_edge(7, 2, RED).with_edge(7, 8, BLUE)
    assert "A4" in is_good(g, "K13", (0, 1, 2, 3), all_witnesses=True).witnesses
    sq = ColoredGraph([(0, 1, RED), (1, 2, RED), (2, 3, RED), (3, 0, RED)])
    assert not is_good(sq, "C4", (0, 1, 2, 3)).good
    g = sq.with_edge(1, 9, BLUE).with_edge(3, 9, BLUE).with_edge(9, 10, RED)
    v = is_good(g, "C4", (0, 1, 2, 3), all_witnesses=True)
    assert set(v.witnesses) == {"B5"}
    g = sq.with_edge(2, 9, BLUE).with_edge(3, 9, BLUE).with_edge(9, 10, RED)
    assert "B4" in is_good(g, "C4", (0, 1, 2, 3), all_witnesses=True).witnesses


def test_goodness_argument_errors():
    claw = ColoredGraph([(0, 1, RED), (0, 2, RED), (0, 3, BLUE)])
    with pytest.raises(NotRedError):
        is_good(claw, "K13", (0, 1, 2, 3))
    with pytest.raises(ValueError):
        is_good(claw, "K14", (0, 1, 2, 3))
    with pytest.raises(ValueError):
        is_good(claw, "K13", (0, 1, 1, 3))


def test_claw_templates_on_k4_force_x2():
    # A claw whose leaves span a triangle is a K4; any claw template on top of it
    # already contains X2, so on X2-free boards such a claw is always bad.
    k4 = list(CAT["K4"].edges)
    for t in TEMPLATES:
        if t.subject == "K13":
            assert perm_contains(k4 + list(t.extra), CAT["X2"].edges), t.name


def _oracle_zero_good(g, cyc):
    G = nx.Graph([(u, v) for u, v, _ in g.edges()])
    vs = list(cyc.vertices)
    n = len(vs)
    sign = [1 if g.color(a, b) is RED else -1 for a, b in zip(vs, vs[1:] + vs[:1])]
    on = set(vs)
    for i, j in itertools.combinations(range(n), 2):
        if j - i in (1, n - 1):
            continue
        if sum(sign[i:j]) % 3:
            continue
        a, b = vs[i], vs[j]
        keep = (set(G) - on) | {a, b}
        if nx.has_path(G.subgraph(keep), a, b):
            return True
    return False


def test_zero_cycle_goodness_matches_connectivity_oracle():
    rng = random.Random(24)
    seen = 0
    for _ in range(300):
        g = random_colored(rng, 7, 0.4)
        if has_k4_minor([(u, v) for u, v, _ in g.edges()]):
            continue
        G = nx.Graph([(u, v) for u, v, _ in g.edges()])
        for cyc in nx.simple_cycles(G):
            cv = CycleView(tuple(cyc))
            s = sum(1 if g.color(a, b) is RED else -1 for a, b in cv.edges)
            if s % 3:
                with pytest.raises(NotZeroCycleError):
                    is_zero_cycle_good(g, cv)
                continue
            seen += 1
            assert is_zero_cycle_good(g, cv) == _oracle_zero_good(g, cv)
    assert seen > 20


def test_zero_cycle_painter_needs_k4_minor_free_board():
    g = ColoredGraph([(0, 1, RED), (0, 2, BLUE), (0, 3, RED), (1, 2, BLUE), (1, 3, BLUE)])
    with pytest.raises(HostClassError):
        strategy_zero_cycle(g, (2, 3))


def test_strategy_decisions():
    g = ColoredGraph([(0, 1, RED), (0, 2, RED)])
    assert strategy2(g, (0, 3)) is BLUE          # red claw
    assert strategy2(g, (1, 2)) is BLUE          # red triangle
    assert strategy2(g, (1, 5)) is RED
    assert strategy3(g, (1, 2)) is BLUE
    assert strategy3(g, (0, 3)) is BLUE          # bare claw is bad
    assert strategy4(ColoredGraph(), (0, 1)) is RED
    h = ColoredGraph([(0, 1, RED), (2, 3, BLUE), (3, 4, BLUE)])
    assert strategy4(h, (0, 5)) is BLUE
    assert strategy4(h, (2, 4)) is RED           # blue would close a blue triangle
    assert get_painter("strategy2") is PAINTERS["strategy2"]
    with pytest.raises(KeyError):
        get_painter("nobody")


CLASSES = {"strategy2": "subgraph-free:X1", "strategy3": "subgraph-free:X2",
           "strategy4": "subgraph-free:X3", "zero-cycle": "minor-free:K4"}


@pytest.mark.parametrize("name", sorted(CLASSES))
def test_local_invariant_agrees_with_full(name):
    from ramsey_online.solver import _local_invariant

    p = get_painter(name)
    c = parse_constraint(CLASSES[name])
    rng = random.Random(name)
    for _ in range(40):
        g = ColoredGraph()
        for _ in range(14):
            cands = [e for e in itertools.combinations(range(8), 2)
                     if not g.has_edge(*e) and _check_edge(g, c, e) is None]
            if not cands:
                break
            e = rng.choice(cands)
            g.add_edge(*e, p(g, e))
            full = p.invariant(g)
            assert bool(full) == bool(_local_invariant(p, g, e)), (g, e, full)
            if full:
                break


def test_bad_zero_cycles_on_plain_cycle():
    # three red then three blue: a zero hexagon with nothing outside it
    g = ColoredGraph([(0, 1, RED), (1, 2, RED), (2, 3, RED), (3, 4, BLUE), (4, 5, BLUE), (5, 0, BLUE)])
    assert [len(c) for c in bad_zero_cycles(g)] == [6]
    # the chord 0-3 cuts off the zero arc 0-1-2-3; the two new cycles are not zero
    g.add_edge(0, 3, RED)
    assert bad_zero_cycles(g) == []
