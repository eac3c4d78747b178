"""Tests for residue systems, the auxiliary graph, and verification records."""

import itertools

import pytest

from kronkit.connectivity import classify_cut, vertex_connectivity
from kronkit.corpus import connected_graphs
from kronkit.errors import BudgetExceededError, PreconditionError
from kronkit.graphs import (
    delete_vertex,
    graph_from_edges,
    is_connected,
    make_complete,
    make_cycle,
    random_graph,
)
from kronkit.product_analysis import (
    BatchSummary,
    SkipRecord,
    VerificationReport,
    batch_verify,
    build_gstar,
    build_residue_system,
    check_gstar_connected,
    check_residue_components,
    report_record,
    summary_record,
    verify_connectivity_formula,
    verify_super_connectivity,
)
from kronkit.products import kronecker


C5_REMOVAL = (0, 3, 6, 9)  # first column of the first four fibers of C5 x K3


def test_residue_system_on_c5_first_column():
    rs = build_residue_system(make_cycle(5), 3, C5_REMOVAL)
    assert rs.conditions.size_ok  # 4 == (3-1) * 2
    assert rs.conditions.residues_nonempty
    assert rs.conditions.no_isolated
    assert rs.conditions.all_met()
    assert rs.residues[0] == (1, 2)
    assert rs.residues[4] == (12, 13, 14)
    flat = [v for r in rs.residues for v in r]
    assert sorted(flat + list(rs.removed)) == list(range(15))


def test_residue_system_with_whole_fiber_removed():
    rs = build_residue_system(make_cycle(5), 3, {0, 1, 2})
    assert not rs.conditions.residues_nonempty
    assert not rs.conditions.size_ok  # 3 != 4


def test_residue_system_with_empty_removal():
    rs = build_residue_system(make_cycle(5), 3, set())
    assert not rs.conditions.size_ok
    assert rs.conditions.residues_nonempty
    assert rs.conditions.no_isolated


def test_residue_system_rejects_small_n_and_bad_ids():
    with pytest.raises(ValueError):
        build_residue_system(make_cycle(5), 2, set())
    with pytest.raises(ValueError):
        build_residue_system(make_cycle(5), 3, {99})
    with pytest.raises(PreconditionError):
        build_residue_system(graph_from_edges(4, [(0, 1)]), 3, set())


def test_gstar_on_c5_removal_is_connected():
    rs = build_residue_system(make_cycle(5), 3, C5_REMOVAL)
    star = build_gstar(rs)
    assert star.graph.order == 5
    assert is_connected(star.graph)
    assert star.singleton_classes == frozenset()
    for (i, j), (a, b) in star.edge_witnesses.items():
        assert a in rs.residues[i] and b in rs.residues[j]
        assert rs.product.graph.has_edge(a, b)


def test_gstar_with_empty_removal_reproduces_factor_adjacency():
    for g in (make_cycle(5), make_complete(4), make_cycle(6)):
        rs = build_residue_system(g, 3, set())
        star = build_gstar(rs)
        assert star.graph.adj == g.adj


def test_gstar_rejects_empty_residue():
    rs = build_residue_system(make_cycle(5), 3, {0, 1, 2})
    with pytest.raises(PreconditionError) as err:
        build_gstar(rs)
    assert "fiber 0" in str(err.value)


def test_gstar_singleton_classes():
    # remove two of three vertices from fiber 0
    rs = build_residue_system(make_cycle(5), 3, {0, 1, 5, 8})
    star = build_gstar(rs)
    assert 0 in star.singleton_classes


# -- sampled checks -----------------------------------------------------------

def test_gstar_connected_on_sampled_removals():
    for g in (make_cycle(5), make_complete(4)):
        records = check_gstar_connected(g, 3, trials=100, seed=7)
        assert len(records) == 100
        assert all(r.error is None for r in records)
        assert all(r.gstar_connected for r in records)
        # sampled removals all meet the size condition by construction
        assert all(len(r.removed) == 2 * g.min_degree for r in records)


def test_gstar_checker_preconditions():
    with pytest.raises(PreconditionError):
        check_gstar_connected(graph_from_edges(4, [(0, 1)]), 3, 5, 0)
    # kappa != delta: two triangles sharing a vertex
    bowtie = graph_from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    assert vertex_connectivity(bowtie) == 1 and bowtie.min_degree == 2
    with pytest.raises(PreconditionError):
        check_gstar_connected(bowtie, 3, 5, 0)


def test_residue_component_checker():
    for g in (make_cycle(5), make_complete(4)):
        records = check_residue_components(g, 3, trials=100, seed=11)
        assert len(records) == 100
        assert all(r.error is None for r in records)
        assert all(r.split_residues == () for r in records)


def test_residue_component_checker_rejects_bipartite():
    with pytest.raises(PreconditionError):
        check_residue_components(make_cycle(6), 3, 5, 0)


def test_checkers_are_deterministic():
    a = check_gstar_connected(make_cycle(5), 3, trials=20, seed=3)
    b = check_gstar_connected(make_cycle(5), 3, trials=20, seed=3)
    assert a == b
    c = check_gstar_connected(make_cycle(5), 3, trials=20, seed=4)
    assert [r.removed for r in a] != [r.removed for r in c]


def test_gstar_connected_for_smaller_removal_sizes():
    # the connectedness claim covers removals below (n-1)*delta too
    for size in (1, 2, 3):
        records = check_gstar_connected(make_cycle(5), 3, trials=25, seed=13,
                                        removal_size=size)
        assert all(r.error is None and r.gstar_connected for r in records)
        assert all(len(r.removed) == size for r in records)


# -- verification -------------------------------------------------------------

def test_formula_on_c5():
    rep = verify_connectivity_formula(make_cycle(5), 3)
    assert rep.kappa_G == 2 and rep.delta_G == 2
    assert rep.product_kappa == 4
    assert rep.formula_rhs == 4
    assert rep.theorem11_holds and rep.severity is None


def test_formula_on_k4():
    rep = verify_connectivity_formula(make_complete(4), 3)
    assert rep.formula_rhs == 6
    assert rep.product_kappa == 6
    assert rep.theorem11_holds


def test_formula_on_disconnected_graph_is_zero_both_sides():
    g = graph_from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    rep = verify_connectivity_formula(g, 3)
    assert rep.product_kappa == 0 and rep.formula_rhs == 0
    assert rep.theorem11_holds


def test_super_connectivity_on_c5():
    rep = verify_super_connectivity(make_cycle(5), 3)
    assert rep.super_kappa_verdict is True
    assert rep.min_cut_count and rep.min_cut_count > 0
    assert rep.non_isolating_cut is None
    assert rep.theorem11_holds and rep.severity is None


def test_super_connectivity_on_bipartite_c6():
    rep = verify_super_connectivity(make_cycle(6), 3)
    assert rep.super_kappa_verdict is True
    assert rep.severity is None


def test_super_connectivity_degenerate_one_vertex_factor():
    rep = verify_super_connectivity(make_complete(1), 3)
    assert rep.kappa_G == 0 and rep.delta_G == 0
    assert rep.product_kappa == 0 and rep.formula_rhs == 0
    assert rep.super_kappa_verdict is False
    assert rep.min_cut_count == 0
    assert rep.non_isolating_cut is None
    assert rep.severity is None  # vacuous case, not a violation


def test_super_connectivity_requires_kd_equal():
    bowtie = graph_from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    with pytest.raises(PreconditionError):
        verify_super_connectivity(bowtie, 3)


def test_super_connectivity_budget_error():
    with pytest.raises(BudgetExceededError):
        verify_super_connectivity(make_complete(6), 3, budget=100)


def test_fiber_deletion_identity_on_sampled_instances():
    # removing a whole fiber plus extras equals deleting the factor vertex
    # first and removing the leftover ids, under the documented relabeling
    n = 3
    for g, fiber_idx, extra in [
        (make_cycle(5), 1, (0, 8, 14)),
        (make_complete(4), 0, (5, 7)),
        (make_cycle(6), 3, (1, 2, 16)),
    ]:
        product = kronecker(g, make_complete(n))
        fiber_ids = set(range(fiber_idx * n, (fiber_idx + 1) * n))
        removal = fiber_ids | set(extra)
        assert not fiber_ids & set(extra)

        def survivor_edges_full():
            alive = [v for v in range(product.graph.order) if v not in removal]
            relabel = {v: i for i, v in enumerate(alive)}
            return {(min(relabel[a], relabel[b]), max(relabel[a], relabel[b]))
                    for a, b in product.graph.edges()
                    if a not in removal and b not in removal}

        reduced = kronecker(delete_vertex(g, fiber_idx), make_complete(n))

        def map_old(v):
            u, w = divmod(v, n)
            return (u if u < fiber_idx else u - 1) * n + w

        leftover = sorted(map_old(v) for v in extra)
        alive2 = [v for v in range(reduced.graph.order) if v not in leftover]
        relabel2 = {v: i for i, v in enumerate(alive2)}
        survivor_edges_reduced = {
            (min(relabel2[a], relabel2[b]), max(relabel2[a], relabel2[b]))
            for a, b in reduced.graph.edges()
            if a not in leftover and b not in leftover}
        assert survivor_edges_full() == survivor_edges_reduced


# -- batch --------------------------------------------------------------------

def test_batch_over_order_5_kd_equal_corpus():
    records = list(batch_verify(connected_graphs(5), [3],
                                filters=("connected", "kd-equal")))
    summary = records[-1]
    assert isinstance(summary, BatchSummary)
    reports = [r for r in records[:-1]]
    assert all(isinstance(r, VerificationReport) for r in reports)
    assert all(r.theorem11_holds and r.super_kappa_verdict for r in reports)
    assert summary.violations == 0 and summary.skips == 0
    assert summary.instances == len(reports) == summary.holds
    assert summary.instances > 0


def test_batch_empty_corpus():
    records = list(batch_verify([], [3]))
    assert records == [BatchSummary(0, 0, 0, 0)]


def test_batch_skips_oversized_instance():
    big = random_graph(30, 0.5, 1)
    assert is_connected(big)
    records = list(batch_verify([big], [3]))
    assert isinstance(records[0], SkipRecord)
    assert records[0].reason == "size-limit"
    assert records[-1] == BatchSummary(1, 0, 0, 1)


def test_batch_rejects_small_n_and_unknown_filter():
    with pytest.raises(ValueError):
        list(batch_verify([make_cycle(5)], [2]))
    with pytest.raises(ValueError):
        list(batch_verify([make_cycle(5)], [3], filters=("planar",)))


def test_batch_parallel_matches_serial():
    corpus = list(connected_graphs(4))
    serial = list(batch_verify(corpus, [3], workers=1))
    parallel = list(batch_verify(corpus, [3], workers=2))
    strip = lambda recs: [
        report_record(r) if isinstance(r, VerificationReport)
        else r for r in recs]
    assert strip(serial) == strip(parallel)


def test_record_serialization_shapes():
    rep = verify_super_connectivity(make_cycle(5), 3)
    rec = report_record(rep)
    assert list(rec) == ["instance", "kappa_G", "delta_G", "product_kappa",
                         "formula_rhs", "theorem11_holds", "super_kappa_verdict",
                         "min_cut_count", "non_isolating_cut", "runtime_ms"]
    assert rec["runtime_ms"] == 0
    assert report_record(rep, with_timing=True)["runtime_ms"] == rep.runtime_ms
    assert summary_record(BatchSummary(2, 1, 0, 1)) == {
        "instances": 2, "holds": 1, "violations": 0, "skips": 1}
