"""Tests for exhaustive small-graph corpus generation."""

import itertools

import pytest

from kronkit.corpus import all_graphs, are_isomorphic, connected_graphs, graphs_up_to
from kronkit.graphs import is_connected, make_complete, make_cycle, validate

# published counts of graphs / connected graphs on n vertices
ALL_COUNTS = {0: 1, 1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}
CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}


@pytest.mark.parametrize("order,count", sorted(ALL_COUNTS.items()))
def test_all_graph_counts_match_published_values(order, count):
    assert len(all_graphs(order)) == count


@pytest.mark.parametrize("order,count", sorted(CONNECTED_COUNTS.items()))
def test_connected_graph_counts_match_published_values(order, count):
    assert len(connected_graphs(order)) == count


def test_connected_corpus_members_are_connected_and_valid():
    for g in graphs_up_to(6):
        validate(g)
        assert is_connected(g)


def test_no_duplicates_up_to_order_5():
    pool = list(all_graphs(5))
    for a, b in itertools.combinations(pool, 2):
        assert not are_isomorphic(a, b)


def test_known_graphs_are_present():
    four = connected_graphs(4)
    assert any(are_isomorphic(g, make_complete(4)) for g in four)
    assert any(are_isomorphic(g, make_cycle(4)) for g in four)
    five = connected_graphs(5)
    assert any(are_isomorphic(g, make_cycle(5)) for g in five)


def test_isomorphism_test_basics():
    assert are_isomorphic(make_cycle(3), make_complete(3))
    assert not are_isomorphic(make_cycle(4), make_complete(4))
    # same degree sequence, different structure: C_6 vs two triangles
    from kronkit.graphs import graph_from_edges
    two_triangles = graph_from_edges(6, [(0, 1), (1, 2), (0, 2),
                                         (3, 4), (4, 5), (3, 5)])
    assert not are_isomorphic(make_cycle(6), two_triangles)
    relabeled = graph_from_edges(6, [(5, 1), (1, 3), (5, 3),
                                     (0, 2), (2, 4), (0, 4)])
    assert are_isomorphic(two_triangles, relabeled)


def test_generation_is_deterministic():
    a = [g.adj for g in connected_graphs(5)]
    connected_graphs.cache_clear()
    b = [g.adj for g in connected_graphs(5)]
    assert a == b
