import itertools

import pytest
from oracles import perm_contains

from ramsey_online.builder import make_builder
from ramsey_online.engine import Outcome, parse_constraint, replay
from ramsey_online.patterns import catalog
from ramsey_online.solver import (LimitError, Solver, Verdict, check_certificate, probe_open, solve,
                                  verify_builder, verify_painter)

CAT = catalog()


def naive_builder_wins(n, budget, legal=lambda es: True):
    """Plain minimax on the raw colored edge set over vertices 0..n-1."""
    pairs = list(itertools.combinations(range(n), 2))
    memo = {}

    def closes(col, u, v, c):
        return any(col.get(frozenset((u, w))) == c and col.get(frozenset((v, w))) == c
                   for w in range(n) if w not in (u, v))

    def win(col, b):
        if b == 0:
            return False
        key = (frozenset(col.items()), b)
        if key in memo:
            return memo[key]
        res = False
        for u, v in pairs:
            e = frozenset((u, v))
            if e in col or not legal([tuple(x) for x in col] + [(u, v)]):
                continue
            ok = True
            for c in "rb":
                if closes(col, u, v, c):
                    continue
                col[e] = c
                sub = win(col, b - 1)
                del col[e]
                if not sub:
                    ok = False
                    break
            if ok:
                res = True
                break
        memo[key] = res
        return res
    return win({}, budget)


@pytest.mark.parametrize("n,budget", [(5, 6), (6, 6), (6, 7), (6, 8)])
def test_solver_agrees_with_naive_minimax(n, budget):
    want = naive_builder_wins(n, budget)
    got = solve("none", n, budget, with_certificate=False)
    assert (got.verdict is Verdict.BUILDER_WINS) == want


def test_solver_agrees_with_naive_minimax_on_c4_free_boards():
    def legal(es):
        # a 4-cycle exists iff two vertices share two neighbors
        adj = {}
        for u, v in es:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        return all(len(adj[a] & adj[b]) < 2 for a, b in itertools.combinations(adj, 2))

    assert legal([(0, 1), (1, 2), (2, 0)]) and not legal([(0, 1), (1, 2), (2, 3), (3, 0)])
    assert perm_contains([(0, 1), (1, 2), (2, 3), (3, 0)], CAT["C4"].edges)
    for budget in (6, 7, 8):
        want = naive_builder_wins(6, budget, legal)
        got = solve("subgraph-free:C4", 6, budget, with_certificate=False)
        assert (got.verdict is Verdict.BUILDER_WINS) == want, budget


def test_fastest_win_on_six_vertices_takes_eight_edges():
    r = solve("none", 6, 8)
    assert r.verdict is Verdict.BUILDER_WINS and r.plies == 8
    assert check_certificate(r.certificate, "none", 8) == 8
    assert r.principal.outcome is Outcome.BUILDER_WIN
    assert replay(r.principal).outcome is Outcome.BUILDER_WIN


@pytest.mark.parametrize("spec,n,budget", [("none", 5, 6), ("minor-free:K23", 6, 8), ("subgraph-free:X1", 6, 7),
                                           ("minor-free:K4", 6, 7)])
def test_quotient_does_not_change_verdicts(spec, n, budget):
    a = solve(spec, n, budget, with_certificate=False)
    b = solve(spec, n, budget, quotient=False, with_certificate=False)
    assert a.verdict is b.verdict and a.plies == b.plies
    assert b.stats.nodes >= a.stats.nodes


@pytest.mark.parametrize("spec", ["none", "minor-free:K23", "subgraph-free:Y"])
def test_budget_monotonicity(spec):
    s = Solver(parse_constraint(spec), 6)
    wins = [s.win_within(b) for b in range(1, 10)]
    assert wins == sorted(wins)
    first = wins.index(True) + 1 if True in wins else None
    assert s.min_plies(9) == first


def test_certificate_rejects_tampering():
    r = solve("minor-free:K23", 6, 8)
    assert check_certificate(r.certificate, "minor-free:K23", 8) == r.plies
    with pytest.raises(AssertionError):
        check_certificate(r.certificate, "minor-free:K23", 7)
    node = r.certificate
    while node["red"] != "win":
        node = node["red"]
    node["red"] = node["blue"] if node["blue"] != "win" else {"edge": node["edge"], "red": "win", "blue": "win"}
    with pytest.raises(AssertionError):
        check_certificate(r.certificate, "minor-free:K23")


def test_store_round_trip(tmp_path):
    f = tmp_path / "tt.bin"
    a = solve("minor-free:K23", 6, 8, store=f)
    assert f.read_bytes().startswith(b"RAMSEY-TT v1\n")
    b = solve("minor-free:K23", 6, 8, store=f)
    assert a.verdict is b.verdict and a.plies == b.plies
    assert b.stats.nodes < a.stats.nodes
    with pytest.raises(ValueError):
        solve("none", 6, 8, store=f)
    f.write_bytes(b"junk")
    with pytest.raises(ValueError):
        solve("minor-free:K23", 6, 8, store=f)


def test_limits():
    with pytest.raises(LimitError):
        solve("none", 11, 5)
    with pytest.raises(LimitError):
        verify_painter("strategy2", "none", 8, 15)
    with pytest.raises(LimitError):
        solve("none", 6, 0)


def test_probe_is_evidence_only():
    r = probe_open(6, 6)
    assert r.constraint == "subgraph-free:X5"
    assert r.verdict is Verdict.PAINTER_SURVIVES


def test_painter_counterexample_replays():
    r = verify_painter("always-red", "none", 6, 4)
    assert not r.survives
    t = r.counterexample
    assert t.outcome is Outcome.BUILDER_WIN and len(t.moves) == 3
    assert replay(t).outcome is Outcome.BUILDER_WIN


def test_strategy2_loses_off_its_class():
    # once two vertices each hold two red edges, every edge they get is blue, so
    # Builder closes a blue triangle on them
    r = verify_painter("strategy2", "none", 6, 7)
    assert not r.survives
    assert r.counterexample.outcome is Outcome.BUILDER_WIN and r.counterexample.witness_color.value == "blue"


@pytest.mark.parametrize("name,spec", [("strategy2", "subgraph-free:X1"), ("zero-cycle", "minor-free:K4")])
def test_painter_quotient_and_jobs_agree(name, spec):
    a = verify_painter(name, spec, 6, 6)
    b = verify_painter(name, spec, 6, 6, quotient=False)
    c = verify_painter(name, spec, 6, 6, jobs=2)
    assert a.survives and b.survives and c.survives
    assert b.stats.nodes >= a.stats.nodes


def test_builder_counterexample_on_wrong_class():
    r = verify_builder(make_builder("star-triangle"), "subgraph-free:K13")
    assert not r.wins
    assert r.counterexample.outcome is Outcome.BUILDER_ILLEGAL


def test_builder_extra_check_flags_boards():
    r = verify_builder(make_builder("star-triangle"), extra_check=lambda g: "too big" if g.num_edges() > 6 else None)
    assert not r.wins and r.violations > 0
