"""Pure-Python traversal kernels.

Reference implementation of the hot paths; the compiled backend in
``_kernels_c`` mirrors these routines step for step so that both produce
identical result sets *and* identical instrumentation counters.  Per-task
state is kept in dicts/sets, so no shared scratch arena is needed.

Counter tuple layout (shared with the compiled backend):
    (visited, removed, neg_touches, sup_evals, csup_evals)
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

NAME = "python"


def make_scratch(n: int):
    """No shared scratch needed for the dict-based kernels."""
    return None


# ----------------------------------------------------------------------
# static peeling (bucket sort by effective degree, ties by ascending id)


def peel_kernel(n, starts, lens, pool) -> np.ndarray:
    cores = np.zeros(n, dtype=np.int32)
    if n == 0:
        return cores
    starts_l = starts.tolist()
    lens_l = lens.tolist()
    pool_l = pool.tolist()
    deg = list(lens_l)
    max_deg = max(deg)

    bin_start = [0] * (max_deg + 2)
    for d in deg:
        bin_start[d + 1] += 1
    for d in range(1, max_deg + 2):
        bin_start[d] += bin_start[d - 1]
    vert = [0] * n
    pos = [0] * n
    fill = list(bin_start)
    for v in range(n):
        p = fill[deg[v]]
        vert[p] = v
        pos[v] = p
        fill[deg[v]] += 1

    out = [0] * n
    for i in range(n):
        v = vert[i]
        dv = deg[v]
        out[v] = dv
        s = starts_l[v]
        for j in range(s, s + lens_l[v]):
            w = pool_l[j]
            dw = deg[w]
            if dw > dv:
                pw = pos[w]
                pf = bin_start[dw]
                u = vert[pf]
                if u != w:
                    vert[pw] = u
                    pos[u] = pw
                    vert[pf] = w
                    pos[w] = pf
                bin_start[dw] += 1
                deg[w] = dw - 1
    cores[:] = out
    return cores


# ----------------------------------------------------------------------
# per-level maintenance tasks


@dataclass
class TaskState:
    """Scratch for one core level's traversal within one round.

    ``slack`` tracks each vertex's remaining support as the traversal rules
    vertices out; it may go negative for vertices touched before being
    visited, which the seeding rules account for.
    """

    level: int
    visited: set = field(default_factory=set)
    removed: set = field(default_factory=set)
    slack: dict = field(default_factory=dict)
    sup: dict = field(default_factory=dict)
    csup: dict = field(default_factory=dict)
    visit_order: list = field(default_factory=list)
    visits: int = 0
    removals: int = 0
    neg_touches: int = 0
    sup_evals: int = 0
    csup_evals: int = 0

    def counters(self) -> tuple[int, int, int, int, int]:
        return (self.visits, self.removals, self.neg_touches,
                self.sup_evals, self.csup_evals)


class _Adj:
    """Neighbor access over the graph's pooled adjacency arrays."""

    __slots__ = ("starts", "lens", "pool")

    def __init__(self, starts, lens, pool):
        self.starts = starts.tolist()
        self.lens = lens.tolist()
        self.pool = pool

    def __call__(self, v: int) -> list[int]:
        s = self.starts[v]
        return self.pool[s : s + self.lens[v]].tolist()


def _support(adj, cores, st: TaskState, u: int) -> int:
    """Number of u's neighbors whose core is at least u's own (cached)."""
    s = st.sup.get(u)
    if s is None:
        cu = cores[u]
        s = 0
        for x in adj(u):
            if cores[x] >= cu:
                s += 1
        st.sup[u] = s
        st.sup_evals += 1
    return s


def _constrained_support(adj, cores, st: TaskState, u: int) -> int:
    """Number of u's neighbors able to back a rise of u's core (cached).

    A neighbor counts if its core is strictly higher, or equal while itself
    holding more same-or-higher-core neighbors than the level.
    """
    c = st.csup.get(u)
    if c is None:
        cu = cores[u]
        c = 0
        for x in adj(u):
            cx = cores[x]
            if cx > cu:
                c += 1
            elif cx == cu and _support(adj, cores, st, x) > cu:
                c += 1
        st.csup[u] = c
        st.csup_evals += 1
    return c


def _mark_visited(st: TaskState, v: int):
    st.visited.add(v)
    st.visit_order.append(v)
    st.visits += 1


def rule_out_cascade(adj, cores, st: TaskState, r: int):
    """Remove r as a rise candidate and propagate lost support.

    Every same-level neighbor of a removed vertex loses one unit of slack;
    a vertex whose slack falls to exactly the level is removed in turn.
    Untouched vertices may be driven negative, which later seeding adds
    back in.
    """
    k = st.level
    st.removed.add(r)
    st.removals += 1
    stack = [r]
    while stack:
        v = stack.pop()
        for w in adj(v):
            if cores[w] == k:
                st.slack[w] = st.slack.get(w, 0) - 1
                st.neg_touches += 1
                if st.slack[w] == k and w not in st.removed:
                    stack.append(w)
                    st.removed.add(w)
                    st.removals += 1


def insert_level(starts, lens, pool, cores, k, eu, ev, scratch=None,
                 state: TaskState | None = None):
    """Find the vertices of core level k that rise after inserting the
    level's edges (the edges must already be present in the arrays).

    Returns (ascending vertex id array, counter tuple).
    """
    adj = _Adj(starts, lens, pool)
    st = state if state is not None else TaskState(k)
    eu_l = eu.tolist() if hasattr(eu, "tolist") else list(eu)
    ev_l = ev.tolist() if hasattr(ev, "tolist") else list(ev)
    for a, b in zip(eu_l, ev_l):
        r = b if cores[a] >= cores[b] else a
        if r in st.visited or r in st.removed:
            continue
        c = _constrained_support(adj, cores, st, r)
        cur = st.slack.get(r, 0)
        st.slack[r] = c if cur >= 0 else cur + c
        _mark_visited(st, r)
        stack = [r]
        while stack:
            v = stack.pop()
            if st.slack[v] > k:
                for w in adj(v):
                    if cores[w] == k and w not in st.visited:
                        if _support(adj, cores, st, w) > k:
                            _mark_visited(st, w)
                            cw = _constrained_support(adj, cores, st, w)
                            st.slack[w] = st.slack.get(w, 0) + cw
                            stack.append(w)
            elif v not in st.removed:
                rule_out_cascade(adj, cores, st, v)
    rising = sorted(v for v in st.visit_order if v not in st.removed)
    return np.asarray(rising, dtype=np.int32), st.counters()


def drop_cascade(adj, cores, st: TaskState, r: int):
    """Remove r from its current core level and propagate the loss.

    Same-level neighbors are seeded with their support on first touch,
    then decremented; falling strictly below the level removes them too.
    """
    k = st.level
    st.removed.add(r)
    st.removals += 1
    stack = [r]
    while stack:
        v = stack.pop()
        for w in adj(v):
            if cores[w] == k:
                if w not in st.visited:
                    _mark_visited(st, w)
                    st.slack[w] = st.slack.get(w, 0) + \
                        _support(adj, cores, st, w)
                st.slack[w] -= 1
                st.neg_touches += 1
                if st.slack[w] < k and w not in st.removed:
                    stack.append(w)
                    st.removed.add(w)
                    st.removals += 1


def delete_level(starts, lens, pool, cores, k, eu, ev, scratch=None,
                 state: TaskState | None = None):
    """Find the vertices of core level k that fall after deleting the
    level's edges (the edges must already be gone from the arrays).

    Returns (ascending vertex id array, counter tuple).
    """
    adj = _Adj(starts, lens, pool)
    st = state if state is not None else TaskState(k)
    eu_l = eu.tolist() if hasattr(eu, "tolist") else list(eu)
    ev_l = ev.tolist() if hasattr(ev, "tolist") else list(ev)

    def check(r):
        if r not in st.visited:
            _mark_visited(st, r)
            st.slack[r] = _support(adj, cores, st, r)
        if r not in st.removed and st.slack[r] < k:
            drop_cascade(adj, cores, st, r)

    for a, b in zip(eu_l, ev_l):
        if cores[a] != cores[b]:
            check(b if cores[a] >= cores[b] else a)
        else:
            check(a)
            check(b)
    falling = sorted(v for v in st.visit_order if v in st.removed)
    return np.asarray(falling, dtype=np.int32), st.counters()
