"""Batched core maintenance engines.

``insert_edges`` and ``delete_edges`` consume a pending batch round by
round: plan one per-level edge selection, apply it to the graph in an
exclusive phase, traverse every level concurrently to find the vertices
whose core moves, then shift those cores by exactly one.  The selection
rule (at most one pending edge per vertex at its own core level) is what
makes the one-step shift correct.

``sequential_baseline`` applies the same kernels one edge at a time,
mirroring how single-edge maintenance algorithms process a batch; it is
the comparison target for the round-based engines.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .batch import EdgeBatch, plan_round, restore_plan
from .graph import Graph
from .kernels import get_backend
from .runtime import LevelTaskResult, TaskCounters, run_level_tasks
from .static_core import CoreMap


@dataclass
class RoundRecord:
    index: int
    levels: tuple[int, ...]
    edges_at_level: dict[int, list[tuple[int, int]]]
    changed: tuple[int, ...]  # dense ids, ascending
    counters: TaskCounters


@dataclass
class MaintenanceLog:
    mode: str
    batch_size: int
    max_multiplicity: int
    rounds: list[RoundRecord] = field(default_factory=list)
    counters: TaskCounters = field(default_factory=TaskCounters)
    edges_applied: int = 0
    dropped_existing: int = 0
    audit_violations: list[str] = field(default_factory=list)

    @property
    def rounds_executed(self) -> int:
        return len(self.rounds)

    @property
    def changed_total(self) -> int:
        return sum(len(r.changed) for r in self.rounds)

    def write_text(self, fh, g: Graph):
        """Line-oriented round records with external vertex labels."""
        lab = g.label_of
        for rec in self.rounds:
            fh.write(f"round {rec.index} levels "
                     f"{','.join(map(str, rec.levels))}\n")
            for k in rec.levels:
                for u, v in rec.edges_at_level[k]:
                    fh.write(f"applied {k} {lab(u)} {lab(v)}\n")
            verb = "raised" if self.mode == "insert" else "lowered"
            fh.write(f"{verb} {' '.join(str(lab(v)) for v in rec.changed)}\n")


def _audit_round(log: MaintenanceLog, pre: np.ndarray, post: np.ndarray,
                 levels: tuple[int, ...], direction: int, rnd: int):
    diff = post.astype(np.int64) - pre.astype(np.int64)
    moved = np.nonzero(diff)[0]
    if len(moved) and int(np.abs(diff[moved]).max()) > 1:
        log.audit_violations.append(
            f"round {rnd}: core changed by more than 1")
    level_set = set(levels)
    for v in moved.tolist():
        if int(pre[v]) not in level_set:
            log.audit_violations.append(
                f"round {rnd}: vertex {v} changed outside the round's levels")
            break
    if direction > 0 and len(moved) and diff[moved].min() < 0:
        log.audit_violations.append(f"round {rnd}: core decreased on insert")
    if direction < 0 and len(moved) and diff[moved].max() > 0:
        log.audit_violations.append(f"round {rnd}: core increased on delete")


def _edge_arrays(edges):
    eu = np.fromiter((e[0] for e in edges), np.int32, len(edges))
    ev = np.fromiter((e[1] for e in edges), np.int32, len(edges))
    return eu, ev


def _run_batch(g: Graph, cores: CoreMap, batch: EdgeBatch, mode: str, *,
               workers: int, backend, audit: bool) -> MaintenanceLog:
    insert = mode == "insert"
    be = get_backend(backend) if isinstance(backend, (str, type(None))) else backend
    cores.grow_inplace(g.vertex_count)
    scratch = be.make_scratch(g.vertex_count)
    kernel = be.insert_level if insert else be.delete_level
    log = MaintenanceLog(mode=mode, batch_size=batch.size,
                         max_multiplicity=batch.max_multiplicity)
    while batch.remaining:
        plan = plan_round(batch, cores, g, drop_existing=insert)
        log.dropped_existing += plan.dropped_existing
        if not plan.levels:
            continue
        pre = cores.values.copy() if audit else None
        for u, v in plan.all_edges():
            if insert:
                g._add_dense(u, v)
            else:
                g._remove_dense(u, v)
        starts, lens, pool = g.adjacency_arrays()
        plan_edges = plan.edges_at_level

        def task(k: int) -> LevelTaskResult:
            eu, ev = _edge_arrays(plan_edges[k])
            moved, counters = kernel(starts, lens, pool, cores.values,
                                     k, eu, ev, scratch)
            return LevelTaskResult(k, moved, TaskCounters.from_tuple(counters))

        weights = {k: len(plan_edges[k]) for k in plan.levels}
        try:
            results = run_level_tasks(plan.levels, workers, task, weights)
        except Exception:
            for u, v in plan.all_edges():  # re-playable round rollback
                if insert:
                    g._remove_dense(u, v)
                else:
                    g._add_dense(u, v)
            restore_plan(batch, plan)
            raise
        changed: list[int] = []
        agg = TaskCounters()
        for res in results:
            if insert:
                cores.values[res.vertices] += 1
            else:
                cores.values[res.vertices] -= 1
            changed.extend(res.vertices.tolist())
            agg = agg + res.counters
        changed.sort()
        log.edges_applied += plan.edge_count
        rec = RoundRecord(len(log.rounds) + 1, tuple(plan.levels),
                          {k: list(plan_edges[k]) for k in plan.levels},
                          tuple(changed), agg)
        log.rounds.append(rec)
        log.counters = log.counters + agg
        if audit:
            _audit_round(log, pre, cores.values, rec.levels,
                         +1 if insert else -1, rec.index)
    return log


def insert_edges(g: Graph, cores: CoreMap, batch: EdgeBatch, *,
                 workers: int = 1, backend=None,
                 audit: bool = False) -> MaintenanceLog:
    """Apply a batch of insertions and update ``cores`` in place."""
    return _run_batch(g, cores, batch, "insert", workers=workers,
                      backend=backend, audit=audit)


def delete_edges(g: Graph, cores: CoreMap, batch: EdgeBatch, *,
                 workers: int = 1, backend=None,
                 audit: bool = False) -> MaintenanceLog:
    """Apply a batch of deletions and update ``cores`` in place."""
    return _run_batch(g, cores, batch, "delete", workers=workers,
                      backend=backend, audit=audit)


def sequential_baseline(g: Graph, cores: CoreMap, batch: EdgeBatch,
                        mode: str, backend=None) -> MaintenanceLog:
    """Process the batch strictly one edge at a time.

    Each edge runs through the same per-level kernel as a one-edge level,
    with cores updated immediately after it, exactly as single-edge
    maintenance would do.  Final cores must match the round-based engine.
    """
    insert = mode == "insert"
    be = get_backend(backend) if isinstance(backend, (str, type(None))) else backend
    cores.grow_inplace(g.vertex_count)
    scratch = be.make_scratch(g.vertex_count)
    kernel = be.insert_level if insert else be.delete_level
    log = MaintenanceLog(mode=f"{mode}-baseline", batch_size=batch.size,
                         max_multiplicity=batch.max_multiplicity)
    vals = cores.values
    for i, u, v in batch.live_pairs():
        batch.alive[i] = False
        if insert:
            if g._add_dense(u, v) == "duplicate":
                log.dropped_existing += 1
                continue
        else:
            g._remove_dense(u, v)
        k = int(min(vals[u], vals[v]))
        starts, lens, pool = g.adjacency_arrays()
        eu, ev = _edge_arrays([(u, v)])
        moved, counters = kernel(starts, lens, pool, vals, k, eu, ev, scratch)
        if insert:
            vals[moved] += 1
        else:
            vals[moved] -= 1
        log.edges_applied += 1
        log.counters = log.counters + TaskCounters.from_tuple(counters)
    return log


# ----------------------------------------------------------------------
# support queries (label-based, cache-friendly; used by tests and audits)


def support_degree(g: Graph, cores: CoreMap, u: int) -> int:
    """Number of u's neighbors with core at least core(u)."""
    cu = cores.of(g, u)
    return sum(1 for w in g.neighbors(u) if cores.of(g, w) >= cu)


def constrained_support(g: Graph, cores: CoreMap, u: int,
                        sup_cache: dict | None = None) -> int:
    """Number of u's neighbors that could back a one-step rise of u.

    A neighbor w counts when core(w) > core(u), or core(w) == core(u) and
    w itself has more than core(u) same-or-higher-core neighbors.  The
    optional ``sup_cache`` (label -> support degree) is filled on demand.
    """
    cache = {} if sup_cache is None else sup_cache
    cu = cores.of(g, u)
    count = 0
    for w in g.neighbors(u):
        cw = cores.of(g, w)
        if cw > cu:
            count += 1
        elif cw == cu:
            if w not in cache:
                cache[w] = support_degree(g, cores, w)
            if cache[w] > cu:
                count += 1
    return count
