import numpy as np
import pytest

from coremaint import (BatchError, Graph, build_delete_batch,
                       build_insert_batch, edge_level, pending_levels,
                       plan_round)
from coremaint.batch import restore_plan, select_level_edges
from coremaint.static_core import CoreMap


def graph_with_cores(core_by_vertex):
    """Edgeless graph plus a hand-set core map; planning only reads cores."""
    n = len(core_by_vertex)
    g = Graph.from_edges([], num_vertices=n, dense_labels=True)
    return g, CoreMap(np.asarray(core_by_vertex, dtype=np.int32))


def test_edge_level_is_min_endpoint_core():
    g, cores = graph_with_cores([2, 5, 3, 3, 0, 7])
    assert edge_level(g, cores, 0, 1) == 2
    assert edge_level(g, cores, 2, 3) == 3
    assert edge_level(g, cores, 4, 5) == 0


def test_edge_level_unknown_vertex_counts_as_zero():
    g, cores = graph_with_cores([7])
    assert edge_level(g, cores, 0, 12345) == 0


def test_batches_accept_edge_objects():
    from coremaint import Edge

    g, cores = graph_with_cores([1, 1, 1])
    b = build_insert_batch(g, [Edge(1, 0), (1, 2)])
    assert b.size == 2
    assert b.pairs.tolist() == [[0, 1], [1, 2]]


def test_pending_levels():
    g, cores = graph_with_cores([0, 0, 3, 3])
    b = build_insert_batch(g, [(0, 1), (0, 2), (2, 3)])
    assert pending_levels(b, cores) == {0, 3}
    b2 = build_insert_batch(g, [])
    assert pending_levels(b2, cores) == set()


def test_pending_levels_single_level():
    g, cores = graph_with_cores([2, 2, 2, 2])
    b = build_insert_batch(g, [(0, 1), (2, 3)])
    assert pending_levels(b, cores) == {2}


def test_one_edge_per_level_vertex():
    # two pending edges at vertex 0 (core k); far endpoints above the level
    g, cores = graph_with_cores([1, 3, 3])
    b = build_insert_batch(g, [(0, 1), (0, 2)])
    sel = select_level_edges(b, cores, 1)
    assert sel == [(0, 1)]  # canonical-order first


def test_equal_core_edge_covers_both_endpoints():
    g, cores = graph_with_cores([1, 1, 1])
    b = build_insert_batch(g, [(0, 1), (1, 2)])
    plan = plan_round(b, cores)
    assert plan.edges_at_level[1] == [(0, 1)]
    assert b.remaining == 1  # (1, 2) left for the next round


def test_shared_higher_core_endpoint_allowed():
    g, cores = graph_with_cores([1, 1, 2])
    b = build_insert_batch(g, [(0, 2), (1, 2)])
    plan = plan_round(b, cores)
    assert plan.edges_at_level[1] == [(0, 2), (1, 2)]


def test_plan_round_single_edge_batch():
    g, cores = graph_with_cores([2, 2])
    b = build_insert_batch(g, [(0, 1)])
    plan = plan_round(b, cores)
    assert plan.levels == [2]
    assert b.remaining == 0


def test_multiplicity_forces_rounds():
    g, cores = graph_with_cores([1, 4, 4, 4])
    b = build_insert_batch(g, [(0, 1), (0, 2), (0, 3)])
    assert b.max_multiplicity == 3
    rounds = 0
    while b.remaining:
        plan = plan_round(b, cores)
        assert plan.edge_count == 1  # vertex 0 serializes its edges
        rounds += 1
    assert rounds == 3


def test_distinct_levels_go_in_one_round():
    g, cores = graph_with_cores([1, 1, 4, 4, 9, 9])
    b = build_insert_batch(g, [(0, 1), (2, 3), (4, 5)])
    plan = plan_round(b, cores)
    assert plan.levels == [1, 4, 9]
    assert b.remaining == 0


def test_plan_invariants_on_random_batches():
    rng = np.random.default_rng(17)
    for _ in range(50):
        n = 40
        cores = CoreMap(rng.integers(0, 5, size=n).astype(np.int32))
        g = Graph.from_edges([], num_vertices=n, dense_labels=True)
        pairs = set()
        while len(pairs) < 30:
            u, v = int(rng.integers(n)), int(rng.integers(n))
            if u != v:
                pairs.add((min(u, v), max(u, v)))
        b = build_insert_batch(g, sorted(pairs))
        while b.remaining:
            before = b.remaining
            plan = plan_round(b, cores)
            assert b.remaining < before  # progress every round
            vals = cores.values
            for k in plan.levels:
                covered = set()
                for u, v in plan.edges_at_level[k]:
                    assert min(vals[u], vals[v]) == k
                    for x in (u, v):
                        if vals[x] == k:
                            assert x not in covered
                            covered.add(x)


def test_insert_batch_dedup_and_existing():
    g = Graph.from_edges([(0, 1)], dense_labels=True)
    b = build_insert_batch(g, [(1, 2), (2, 1), (0, 1), (3, 3)])
    assert b.size == 1  # only (1, 2) pending
    assert b.dropped_duplicates == 1
    assert b.dropped_existing == 1
    assert b.dropped_self_loops == 1


def test_insert_batch_creates_vertices():
    g = Graph.from_edges([(0, 1)], dense_labels=True)
    build_insert_batch(g, [(5, 6)])
    assert g.vertex_count == 4  # labels 5 and 6 now exist, isolated


def test_delete_batch_requires_present_edges():
    g = Graph.from_edges([(0, 1), (1, 2)], dense_labels=True)
    with pytest.raises(BatchError) as err:
        build_delete_batch(g, [(0, 1), (0, 2)])
    assert "(0, 2)" in str(err.value)


def test_restore_plan_puts_edges_back():
    g, cores = graph_with_cores([2, 2, 2, 2])
    b = build_insert_batch(g, [(0, 1), (2, 3)])
    plan = plan_round(b, cores)
    assert b.remaining == 0
    restore_plan(b, plan)
    assert b.remaining == 2


def test_repeated_plans_drain_within_selection_bound():
    # provable bound for the greedy selection: 2 * multiplicity - 1 rounds
    rng = np.random.default_rng(4)
    for _ in range(30):
        n = 25
        cores = CoreMap(rng.integers(0, 4, size=n).astype(np.int32))
        g = Graph.from_edges([], num_vertices=n, dense_labels=True)
        pairs = set()
        while len(pairs) < 25:
            u, v = int(rng.integers(n)), int(rng.integers(n))
            if u != v:
                pairs.add((min(u, v), max(u, v)))
        b = build_insert_batch(g, sorted(pairs))
        mult = b.max_multiplicity
        rounds = 0
        while b.remaining:
            plan_round(b, cores)
            rounds += 1
        assert rounds <= max(1, 2 * mult - 1)
