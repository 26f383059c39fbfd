import random

import pytest
from oracles import atlas, branch_set_minor, random_graph, relabel

from ramsey_online.graph import BLUE, RED, ColoredGraph
from ramsey_online.minors import (HostTooLargeError, PreconditionError, check_path_ordering, has_k4_minor,
                                  has_k23_minor, has_minor, in_minor_free, is_outerplanar)
from ramsey_online.patterns import catalog

K4 = catalog()["K4"]
K23 = catalog()["K23"]


def test_k4_contraction_search_matches_branch_sets():
    for es in atlas(6):
        assert (has_minor(es, K4) is not None) == branch_set_minor(es, K4.edges), es


def test_k23_contraction_search_matches_branch_sets():
    rng = random.Random(1)
    small = list(atlas(5))
    six = list(atlas(6, 6))
    for es in small + rng.sample(six, 25):
        assert (has_minor(es, K23) is not None) == branch_set_minor(es, K23.edges), es


def test_k23_block_test_matches_oracle():
    rng = random.Random(6)
    for es in atlas(7):
        es = relabel(es, rng)
        assert has_k23_minor(es) == (has_minor(es, K23) is not None), es


def test_minor_model_is_valid():
    rng = random.Random(12)
    for _ in range(60):
        es = random_graph(rng.randint(4, 8), 0.5, rng)
        if not es:
            continue
        m = has_minor(es, K4)
        if m is None:
            continue
        m.check(es, K4)
        # independent look at the same model
        bags = [m.branch_sets[a] for a in range(K4.n)]
        assert sum(len(b) for b in bags) == len(set().union(*bags))
        hs = {frozenset(e) for e in es}
        for a, b in K4.edges:
            assert any(frozenset((x, y)) in hs for x in bags[a] for y in bags[b])


def test_host_size_limit():
    es = [(i, i + 1) for i in range(15)]
    with pytest.raises(HostTooLargeError):
        has_minor(es, K4)
    # the fast test has no such limit
    assert not has_k4_minor(es)


def test_outerplanarity():
    assert is_outerplanar([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])
    assert not is_outerplanar(K4.edges)
    assert not is_outerplanar(K23.edges)


def test_in_minor_free_names():
    c5 = [(i, (i + 1) % 5) for i in range(5)]
    assert in_minor_free(c5, "K4") and in_minor_free(c5, "K23")
    assert not in_minor_free(K4.edges, "K4")
    assert in_minor_free(K4.edges, "K23")


def _colored(es):
    return ColoredGraph([(u, v, RED if i % 2 else BLUE) for i, (u, v) in enumerate(es)])


def test_path_ordering_on_a_theta_graph():
    # x=0, y=1, with internally disjoint routes 0-2-1 and 0-3-4-1
    g = _colored([(0, 1), (0, 2), (2, 1), (0, 3), (3, 4), (4, 1)])
    assert check_path_ordering(g, (0, 1), [0, 2, 1], [0, 3, 4, 1])
    assert check_path_ordering(g, (0, 1), [0, 3, 4, 1], [0, 3, 4, 1])


def test_path_ordering_preconditions():
    g = _colored(K4.edges)
    with pytest.raises(PreconditionError):
        check_path_ordering(g, (0, 1), [0, 2, 1], [0, 3, 1])
    h = _colored([(0, 1), (0, 2), (2, 1)])
    with pytest.raises(PreconditionError):
        check_path_ordering(h, (0, 3), [0, 2, 1], [0, 2, 1])
    with pytest.raises(PreconditionError):
        check_path_ordering(h, (0, 1), [0, 1], [0, 2, 1])
    with pytest.raises(PreconditionError):
        check_path_ordering(h, (0, 1), [0, 2], [0, 2, 1])


def test_path_ordering_can_fail_with_a_k4_minor():
    # on K4 itself the K4-minor-free assumption fails, and the order really differs:
    # paths 0-2-3-1 and 0-3-2-1 meet {2, 3} in opposite orders.
    P, Q = [0, 2, 3, 1], [0, 3, 2, 1]
    common = set(P) & set(Q)
    assert [v for v in P if v in common] != [v for v in Q if v in common]
