import random

import pytest

from ramsey_online.builder import BUILDER_NAMES, CLAIM, STOP, BuilderStuck, make_builder
from ramsey_online.engine import Outcome, parse_constraint, run_game
from ramsey_online.graph import BLUE, RED, ColoredGraph
from ramsey_online.painter import PainterPolicy, get_painter
from ramsey_online.solver import verify_builder

FAST = ["star-triangle", "k15free", "yfree", "mono-path:4"]


def coin_painter(seed, flip=False):
    rng = random.Random(seed)

    def decide(g, e):
        c = rng.choice((RED, BLUE))
        return c.swap() if flip else c
    return PainterPolicy(f"coin{seed}", decide)


def play_moves(name, painter):
    b = make_builder(name)
    t = run_game(b, painter, parse_constraint(b.declared), 64)
    return t


@pytest.mark.parametrize("name", ["star-triangle", "k4free", "k15free", "yfree", "mono-path:5"])
def test_builders_are_color_swap_equivariant(name):
    for seed in range(25):
        a = play_moves(name, coin_painter(seed))
        b = play_moves(name, coin_painter(seed, flip=True))
        assert [m[:2] for m in a.moves] == [m[:2] for m in b.moves]
        assert [m[2].swap() for m in a.moves] == [m[2] for m in b.moves]
        assert a.outcome is b.outcome is Outcome.BUILDER_WIN


@pytest.mark.parametrize("name,worst", [("star-triangle", 8), ("k15free", 21), ("yfree", 21), ("mono-path:4", 10)])
def test_worst_case_lengths(name, worst):
    b = make_builder(name)
    r = verify_builder(b)
    assert r.wins and r.violations == 0
    assert r.worst_case == worst
    assert worst <= getattr(b, "max_moves", worst)


def test_pendant_subroutine_meets_its_contract():
    b = make_builder("y-pendant")
    r = verify_builder(b)
    assert r.wins and r.violations == 0
    assert r.worst_case <= b.max_moves


def test_pendant_subroutine_stops_with_blue_pendant():
    t = play_moves("y-pendant", get_painter("always-blue"))
    assert t.outcome is Outcome.BUILDER_STOPPED
    b = make_builder("y-pendant")
    g = ColoredGraph()
    while True:
        m = b.move(g)
        if m is STOP or m is CLAIM:
            break
        g.add_edge(*m, BLUE)
    assert m is STOP and b.contract_ok(g)


def test_clone_is_independent():
    b = make_builder("star-triangle")
    g = ColoredGraph()
    for color in (RED, BLUE, RED):
        g.add_edge(*b.move(g), color)
    c = b.clone()
    h = g.copy()
    e1 = b.move(g)
    g.add_edge(*e1, BLUE)
    b.move(g)
    e2 = c.move(h)
    assert e1 == e2
    assert c.drawn == 4 and b.drawn == 5


def test_claims_after_a_win():
    b = make_builder("star-triangle")
    g = ColoredGraph()
    while True:
        m = b.move(g)
        if m is CLAIM:
            break
        g.add_edge(*m, RED)
    assert b.won(g)


def test_make_builder_names():
    for name in BUILDER_NAMES:
        make_builder(name.replace("<k>", "3"))
    with pytest.raises(KeyError):
        make_builder("nobody")
    with pytest.raises(KeyError):
        make_builder("mono-path:x")


def test_stuck_builder_reports_phase():
    b = make_builder("star-triangle")
    b.phase = "nowhere"
    with pytest.raises(BuilderStuck):
        b.move(ColoredGraph())


def test_builder_never_draws_illegal_edges_against_random_painters():
    for name in FAST + ["k4free"]:
        for seed in range(15):
            t = play_moves(name, coin_painter(100 + seed))
            assert t.outcome is Outcome.BUILDER_WIN, (name, seed, t.summary())
