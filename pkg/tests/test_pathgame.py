import pytest

from ramsey_online.pathgame import FRESH, candidate_joins, check_table, join_outcomes, load_table, solve_table
from ramsey_online.solver import verify_builder
from ramsey_online.builder import make_builder


def test_join_two_fresh_vertices():
    (red, rlen), (blue, blen) = join_outcomes(FRESH, FRESH)
    assert rlen == blen == 1
    assert red[2] == (1, 0) and blue[2] == (0, 1)


def test_join_lengths_add():
    (red, rlen), (blue, blen) = join_outcomes((2, 1), (1, 3))
    assert rlen == 2 + 1 + 1 and blen == 1 + 3 + 1
    # keeping the second side's root: its red path may now run through the new edge
    assert red[0] == (3, 3)
    assert blue[1] == (2, 4)


def test_candidate_joins_are_distinct():
    state = ((1, 0), (1, 0), (0, 2))
    js = list(candidate_joins(state))
    keys = [(p, q) for _, p, q in js]
    assert len(keys) == len(set(keys))
    # live profiles are never FRESH, so each non-fresh end uses up one component
    for rest, p, q in js:
        assert len(rest) == len(state) - sum(x != FRESH for x in (p, q))


@pytest.mark.parametrize("k,budget,leaves", [(2, 3, 6), (3, 7, 34), (4, 10, 256)])
def test_small_plans_are_minimal(k, budget, leaves):
    t = load_table(k)
    assert t.budget == budget
    assert check_table(t) == t.leaves == leaves
    assert solve_table(k, t.max_components, budget - 1) is None


def test_shipped_plan_replays():
    t = load_table(6)
    assert (t.budget, t.max_components) == (22, 5)
    assert check_table(t) == t.leaves == 101242


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_board_game_matches_abstract_plan(k):
    # the concrete builder meets exactly the painter branches the plan counts
    t = load_table(k)
    r = verify_builder(make_builder(f"mono-path:{k}"))
    assert r.wins and r.violations == 0
    assert r.leaves == t.leaves
    assert r.worst_case <= t.budget
