# cython: language_level=3, boundscheck=False, wraparound=False
# cython: initializedcheck=False, cdivision=True
"""Compiled traversal kernels.

Step-for-step mirror of ``_kernels_py`` (same visit order, same counters),
with the loops in C and the GIL released so per-level tasks run in
parallel.  Per-vertex scratch lives in a shared arena whose slots are
owned by core level, so concurrent tasks never write the same slot; each
call resets only the slots it touched.
"""

from libc.stdint cimport int32_t, int64_t, uint8_t
from libc.stdlib cimport free, malloc, realloc

import numpy as np

NAME = "c"

DEF UNSET = -1


cdef struct IStack:
    int32_t* data
    Py_ssize_t size
    Py_ssize_t cap


cdef inline bint ist_init(IStack* s, Py_ssize_t cap) noexcept nogil:
    s.data = <int32_t*> malloc(cap * sizeof(int32_t))
    s.size = 0
    s.cap = cap
    return s.data != NULL


cdef inline bint ist_push(IStack* s, int32_t v) noexcept nogil:
    cdef int32_t* p
    if s.size == s.cap:
        s.cap = s.cap * 2
        p = <int32_t*> realloc(s.data, s.cap * sizeof(int32_t))
        if p == NULL:
            return False
        s.data = p
    s.data[s.size] = v
    s.size += 1
    return True


cdef class Scratch:
    """Shared per-vertex arena; slot ownership is partitioned by core level."""

    cdef public Py_ssize_t n
    cdef object _keep  # numpy arrays backing the views
    cdef uint8_t[::1] visited
    cdef uint8_t[::1] removed
    cdef int32_t[::1] slack
    cdef int32_t[::1] sup
    cdef int32_t[::1] csup

    def __init__(self, Py_ssize_t n):
        visited = np.zeros(n, dtype=np.uint8)
        removed = np.zeros(n, dtype=np.uint8)
        slack = np.zeros(n, dtype=np.int32)
        sup = np.full(n, UNSET, dtype=np.int32)
        csup = np.full(n, UNSET, dtype=np.int32)
        self._keep = (visited, removed, slack, sup, csup)
        self.visited = visited
        self.removed = removed
        self.slack = slack
        self.sup = sup
        self.csup = csup
        self.n = n


def make_scratch(n):
    return Scratch(n)


# ----------------------------------------------------------------------
# static peeling (bucket sort by effective degree, ties by ascending id)


def peel_kernel(n, starts, lens, pool):
    cores = np.zeros(int(n), dtype=np.int32)
    if n == 0:
        return cores
    cdef int64_t[::1] starts_v = starts
    cdef int32_t[::1] lens_v = lens
    cdef int32_t[::1] pool_v = pool
    cdef int32_t[::1] out = cores
    cdef Py_ssize_t nn = n
    cdef int32_t* deg = <int32_t*> malloc(nn * sizeof(int32_t))
    cdef int32_t* vert = <int32_t*> malloc(nn * sizeof(int32_t))
    cdef int32_t* pos = <int32_t*> malloc(nn * sizeof(int32_t))
    cdef int64_t* bin_start = NULL
    cdef int64_t* fill = NULL
    cdef Py_ssize_t i, j
    cdef int64_t s, p, pf
    cdef int32_t v, w, u, dv, dw, max_deg
    cdef bint ok = deg != NULL and vert != NULL and pos != NULL
    if ok:
        with nogil:
            max_deg = 0
            for i in range(nn):
                deg[i] = lens_v[i]
                if deg[i] > max_deg:
                    max_deg = deg[i]
            bin_start = <int64_t*> malloc((max_deg + 2) * sizeof(int64_t))
            fill = <int64_t*> malloc((max_deg + 2) * sizeof(int64_t))
            if bin_start == NULL or fill == NULL:
                ok = False
            else:
                for i in range(max_deg + 2):
                    bin_start[i] = 0
                for i in range(nn):
                    bin_start[deg[i] + 1] += 1
                for i in range(1, max_deg + 2):
                    bin_start[i] += bin_start[i - 1]
                for i in range(max_deg + 2):
                    fill[i] = bin_start[i]
                for i in range(nn):
                    p = fill[deg[i]]
                    vert[p] = <int32_t> i
                    pos[i] = <int32_t> p
                    fill[deg[i]] += 1
                for i in range(nn):
                    v = vert[i]
                    dv = deg[v]
                    out[v] = dv
                    s = starts_v[v]
                    for j in range(s, s + lens_v[v]):
                        w = pool_v[j]
                        dw = deg[w]
                        if dw > dv:
                            p = pos[w]
                            pf = bin_start[dw]
                            u = vert[pf]
                            if u != w:
                                vert[p] = u
                                pos[u] = <int32_t> p
                                vert[pf] = w
                                pos[w] = <int32_t> pf
                            bin_start[dw] += 1
                            deg[w] = dw - 1
    free(deg)
    free(vert)
    free(pos)
    free(bin_start)
    free(fill)
    if not ok:
        raise MemoryError("peel_kernel allocation failed")
    return cores


# ----------------------------------------------------------------------
# per-level maintenance kernels


cdef inline int32_t _sd(int32_t u, int64_t[::1] starts, int32_t[::1] lens,
                        int32_t[::1] pool, int32_t[::1] cores,
                        int32_t[::1] sup, IStack* dirty, int64_t* ctr,
                        bint* err) noexcept nogil:
    cdef int32_t cached = sup[u]
    if cached != UNSET:
        return cached
    cdef int64_t s = starts[u]
    cdef int32_t cu = cores[u]
    cdef int32_t cnt = 0
    cdef Py_ssize_t j
    for j in range(s, s + lens[u]):
        if cores[pool[j]] >= cu:
            cnt += 1
    sup[u] = cnt
    ctr[3] += 1
    if not ist_push(dirty, u):
        err[0] = True
    return cnt


cdef inline int32_t _csd(int32_t u, int64_t[::1] starts, int32_t[::1] lens,
                         int32_t[::1] pool, int32_t[::1] cores,
                         int32_t[::1] sup, int32_t[::1] csup, IStack* dirty,
                         int64_t* ctr, bint* err) noexcept nogil:
    cdef int32_t cached = csup[u]
    if cached != UNSET:
        return cached
    cdef int64_t s = starts[u]
    cdef int32_t cu = cores[u]
    cdef int32_t cnt = 0
    cdef int32_t w, cw
    cdef Py_ssize_t j
    for j in range(s, s + lens[u]):
        w = pool[j]
        cw = cores[w]
        if cw > cu:
            cnt += 1
        elif cw == cu and _sd(w, starts, lens, pool, cores, sup, dirty,
                              ctr, err) > cu:
            cnt += 1
    csup[u] = cnt
    ctr[4] += 1
    if not ist_push(dirty, u):
        err[0] = True
    return cnt


cdef inline void _rule_out(int32_t r, int32_t k, int64_t[::1] starts,
                           int32_t[::1] lens, int32_t[::1] pool,
                           int32_t[::1] cores, uint8_t[::1] visited,
                           uint8_t[::1] removed, int32_t[::1] slack,
                           int32_t[::1] sup, IStack* stack, IStack* dirty,
                           int64_t* ctr, bint* err) noexcept nogil:
    cdef int32_t v, w
    cdef int64_t s
    cdef Py_ssize_t j
    stack.size = 0
    removed[r] = 1
    ctr[1] += 1
    if not ist_push(stack, r):
        err[0] = True
        return
    while stack.size:
        stack.size -= 1
        v = stack.data[stack.size]
        s = starts[v]
        for j in range(s, s + lens[v]):
            w = pool[j]
            if cores[w] == k:
                if visited[w] == 0 and sup[w] == UNSET and slack[w] == 0:
                    if not ist_push(dirty, w):
                        err[0] = True
                        return
                slack[w] -= 1
                ctr[2] += 1
                if slack[w] == k and removed[w] == 0:
                    removed[w] = 1
                    ctr[1] += 1
                    if not ist_push(stack, w):
                        err[0] = True
                        return


def insert_level(starts, lens, pool, cores, k, eu, ev, Scratch scratch):
    """Vertices of core level k that rise after the level's edges were
    inserted.  Returns (ascending id array, counter tuple)."""
    cdef int64_t[::1] starts_v = starts
    cdef int32_t[::1] lens_v = lens
    cdef int32_t[::1] pool_v = pool
    cdef int32_t[::1] cores_v = cores
    cdef int32_t[::1] eu_v = eu
    cdef int32_t[::1] ev_v = ev
    if scratch is None or scratch.n < starts_v.shape[0]:
        raise ValueError("scratch arena smaller than the vertex range")
    cdef uint8_t[::1] visited = scratch.visited
    cdef uint8_t[::1] removed = scratch.removed
    cdef int32_t[::1] slack = scratch.slack
    cdef int32_t[::1] sup = scratch.sup
    cdef int32_t[::1] csup = scratch.csup
    cdef int32_t kk = k
    cdef Py_ssize_t p = eu_v.shape[0]
    cdef int64_t ctr[5]
    cdef IStack pos_stack, neg_stack, order, dirty
    cdef bint err = False
    cdef Py_ssize_t i, j
    cdef int64_t s
    cdef int32_t a, b, r, v, w, c, cur
    for i in range(5):
        ctr[i] = 0
    if not (ist_init(&pos_stack, 256) and ist_init(&neg_stack, 256)
            and ist_init(&order, 256) and ist_init(&dirty, 256)):
        err = True
    if not err:
        with nogil:
            for i in range(p):
                a = eu_v[i]
                b = ev_v[i]
                r = b if cores_v[a] >= cores_v[b] else a
                if visited[r] or removed[r]:
                    continue
                c = _csd(r, starts_v, lens_v, pool_v, cores_v, sup, csup,
                         &dirty, ctr, &err)
                cur = slack[r]
                slack[r] = c if cur >= 0 else cur + c
                visited[r] = 1
                ctr[0] += 1
                if not (ist_push(&order, r) and ist_push(&dirty, r)):
                    err = True
                pos_stack.size = 0
                if not ist_push(&pos_stack, r):
                    err = True
                while pos_stack.size and not err:
                    pos_stack.size -= 1
                    v = pos_stack.data[pos_stack.size]
                    if slack[v] > kk:
                        s = starts_v[v]
                        for j in range(s, s + lens_v[v]):
                            w = pool_v[j]
                            if cores_v[w] == kk and visited[w] == 0:
                                if _sd(w, starts_v, lens_v, pool_v, cores_v,
                                       sup, &dirty, ctr, &err) > kk:
                                    visited[w] = 1
                                    ctr[0] += 1
                                    if not (ist_push(&order, w)
                                            and ist_push(&dirty, w)):
                                        err = True
                                        break
                                    c = _csd(w, starts_v, lens_v, pool_v,
                                             cores_v, sup, csup, &dirty,
                                             ctr, &err)
                                    slack[w] = slack[w] + c
                                    if not ist_push(&pos_stack, w):
                                        err = True
                                        break
                    elif removed[v] == 0:
                        _rule_out(v, kk, starts_v, lens_v, pool_v, cores_v,
                                  visited, removed, slack, sup, &neg_stack,
                                  &dirty, ctr, &err)
                if err:
                    break
    moved = _collect(&order, removed, keep_removed=False)
    _reset(&dirty, visited, removed, slack, sup, csup)
    free(pos_stack.data)
    free(neg_stack.data)
    free(order.data)
    free(dirty.data)
    if err:
        raise MemoryError("insert_level allocation failed")
    return moved, (ctr[0], ctr[1], ctr[2], ctr[3], ctr[4])


cdef inline void _drop_out(int32_t r, int32_t k, int64_t[::1] starts,
                           int32_t[::1] lens, int32_t[::1] pool,
                           int32_t[::1] cores, uint8_t[::1] visited,
                           uint8_t[::1] removed, int32_t[::1] slack,
                           int32_t[::1] sup, IStack* stack, IStack* order,
                           IStack* dirty, int64_t* ctr,
                           bint* err) noexcept nogil:
    cdef int32_t v, w
    cdef int64_t s
    cdef Py_ssize_t j
    stack.size = 0
    removed[r] = 1
    ctr[1] += 1
    if not ist_push(stack, r):
        err[0] = True
        return
    while stack.size:
        stack.size -= 1
        v = stack.data[stack.size]
        s = starts[v]
        for j in range(s, s + lens[v]):
            w = pool[j]
            if cores[w] == k:
                if visited[w] == 0:
                    visited[w] = 1
                    ctr[0] += 1
                    if not (ist_push(order, w) and ist_push(dirty, w)):
                        err[0] = True
                        return
                    slack[w] = slack[w] + _sd(w, starts, lens, pool, cores,
                                              sup, dirty, ctr, err)
                slack[w] -= 1
                ctr[2] += 1
                if slack[w] < k and removed[w] == 0:
                    removed[w] = 1
                    ctr[1] += 1
                    if not ist_push(stack, w):
                        err[0] = True
                        return


def delete_level(starts, lens, pool, cores, k, eu, ev, Scratch scratch):
    """Vertices of core level k that fall after the level's edges were
    deleted.  Returns (ascending id array, counter tuple)."""
    cdef int64_t[::1] starts_v = starts
    cdef int32_t[::1] lens_v = lens
    cdef int32_t[::1] pool_v = pool
    cdef int32_t[::1] cores_v = cores
    cdef int32_t[::1] eu_v = eu
    cdef int32_t[::1] ev_v = ev
    if scratch is None or scratch.n < starts_v.shape[0]:
        raise ValueError("scratch arena smaller than the vertex range")
    cdef uint8_t[::1] visited = scratch.visited
    cdef uint8_t[::1] removed = scratch.removed
    cdef int32_t[::1] slack = scratch.slack
    cdef int32_t[::1] sup = scratch.sup
    cdef int32_t[::1] csup = scratch.csup
    cdef int32_t kk = k
    cdef Py_ssize_t p = eu_v.shape[0]
    cdef int64_t ctr[5]
    cdef IStack neg_stack, order, dirty
    cdef bint err = False
    cdef Py_ssize_t i, side
    cdef int32_t a, b, r
    for i in range(5):
        ctr[i] = 0
    if not (ist_init(&neg_stack, 256) and ist_init(&order, 256)
            and ist_init(&dirty, 256)):
        err = True
    if not err:
        with nogil:
            for i in range(p):
                a = eu_v[i]
                b = ev_v[i]
                if cores_v[a] != cores_v[b]:
                    r = b if cores_v[a] >= cores_v[b] else a
                    side = 2  # single check
                else:
                    r = a
                    side = 0  # check a then b
                while side <= 2 and not err:
                    if visited[r] == 0:
                        visited[r] = 1
                        ctr[0] += 1
                        if not (ist_push(&order, r) and ist_push(&dirty, r)):
                            err = True
                            break
                        slack[r] = _sd(r, starts_v, lens_v, pool_v, cores_v,
                                       sup, &dirty, ctr, &err)
                    if removed[r] == 0 and slack[r] < kk:
                        _drop_out(r, kk, starts_v, lens_v, pool_v, cores_v,
                                  visited, removed, slack, sup, &neg_stack,
                                  &order, &dirty, ctr, &err)
                    if side == 0:
                        r = b
                        side = 1
                    else:
                        break
                if err:
                    break
    moved = _collect(&order, removed, keep_removed=True)
    _reset(&dirty, visited, removed, slack, sup, csup)
    free(neg_stack.data)
    free(order.data)
    free(dirty.data)
    if err:
        raise MemoryError("delete_level allocation failed")
    return moved, (ctr[0], ctr[1], ctr[2], ctr[3], ctr[4])


cdef object _collect(IStack* order, uint8_t[::1] removed, bint keep_removed):
    cdef Py_ssize_t i, cnt = 0
    cdef int32_t v
    for i in range(order.size):
        v = order.data[i]
        if (removed[v] != 0) == keep_removed:
            cnt += 1
    out = np.empty(cnt, dtype=np.int32)
    cdef int32_t[::1] out_v = out
    cnt = 0
    for i in range(order.size):
        v = order.data[i]
        if (removed[v] != 0) == keep_removed:
            out_v[cnt] = v
            cnt += 1
    out.sort()
    return out


cdef void _reset(IStack* dirty, uint8_t[::1] visited, uint8_t[::1] removed,
                 int32_t[::1] slack, int32_t[::1] sup, int32_t[::1] csup):
    cdef Py_ssize_t i
    cdef int32_t v
    for i in range(dirty.size):
        v = dirty.data[i]
        visited[v] = 0
        removed[v] = 0
        slack[v] = 0
        sup[v] = UNSET
        csup[v] = UNSET
