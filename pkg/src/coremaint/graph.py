"""Mutable undirected simple graph with dense internal vertex ids.

Vertices are addressed by non-negative integer labels.  Labels are remapped
to dense internal ids (0..n-1) on first sight, so per-vertex engine state
can live in flat arrays.  Adjacency is stored in one shared pool array with
per-vertex (start, length, capacity) blocks; appending past capacity
relocates the block to the end of the pool.  Mutations must happen in
exclusive phases; between mutations the arrays may be read concurrently.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass

import numpy as np

_POOL_DTYPE = np.int32
_MIN_BLOCK = 4


class SelfLoopError(ValueError):
    pass


class EdgeListParseError(ValueError):
    def __init__(self, line_no: int, line: str):
        super().__init__(f"malformed edge list line {line_no}: {line!r}")
        self.line_no = line_no


@dataclass(frozen=True)
class Edge:
    """Undirected edge; endpoints are stored in canonical (min, max) order."""

    u: int
    v: int

    def __post_init__(self):
        if self.u == self.v:
            raise SelfLoopError(f"self-loop at vertex {self.u}")
        if self.u > self.v:
            u, v = self.u, self.v
            object.__setattr__(self, "u", v)
            object.__setattr__(self, "v", u)

    def as_pair(self) -> tuple[int, int]:
        return (self.u, self.v)


@dataclass
class LoadStats:
    edges: int = 0
    comment_lines: int = 0
    dropped_self_loops: int = 0
    dropped_duplicates: int = 0


def _as_pair(e) -> tuple[int, int]:
    if isinstance(e, Edge):
        return e.as_pair()
    u, v = e
    return (int(u), int(v))


class Graph:
    """Undirected simple graph over integer vertex labels."""

    def __init__(self):
        self._starts = np.zeros(0, dtype=np.int64)
        self._lens = np.zeros(0, dtype=np.int32)
        self._caps = np.zeros(0, dtype=np.int32)
        self._pool = np.zeros(0, dtype=_POOL_DTYPE)
        self._pool_used = 0
        self._labels: list[int] = []
        self._label_map: dict[int, int] | None = None  # None means identity
        self.edge_count = 0

    # ------------------------------------------------------------------
    # construction

    @classmethod
    def from_edges(cls, edges, num_vertices: int | None = None,
                   dense_labels: bool = False) -> "Graph":
        """Bulk constructor from an iterable or (m, 2) array of label pairs.

        Self-loops and duplicate edges are dropped (counts on ``load_stats``).
        With ``dense_labels`` the labels are taken as internal ids directly
        (0..n-1); otherwise distinct labels are remapped in sorted order.
        ``num_vertices`` forces trailing isolated vertices to exist.
        """
        g = cls()
        stats = LoadStats()
        arr = np.asarray(edges, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("edges must be an (m, 2) array of vertex pairs")
        if arr.size and arr.min() < 0:
            raise ValueError("vertex labels must be non-negative")

        if dense_labels:
            n = int(num_vertices if num_vertices is not None
                    else (arr.max() + 1 if arr.size else 0))
            if arr.size and arr.max() >= n:
                raise ValueError("edge endpoint outside 0..num_vertices-1")
            dense = arr
            g._labels = list(range(n))
            g._label_map = None
        else:
            uniq = np.unique(arr) if arr.size else np.zeros(0, dtype=np.int64)
            n = len(uniq)
            dense = np.searchsorted(uniq, arr) if arr.size else arr
            g._labels = [int(x) for x in uniq]
            if n and uniq[-1] == n - 1:  # labels already 0..n-1
                g._label_map = None
            else:
                g._label_map = {int(lab): i for i, lab in enumerate(uniq)}
            if num_vertices is not None and num_vertices > n:
                raise ValueError("num_vertices requires dense_labels")

        lo = np.minimum(dense[:, 0], dense[:, 1]).astype(np.int64)
        hi = np.maximum(dense[:, 0], dense[:, 1]).astype(np.int64)
        loops = lo == hi
        stats.dropped_self_loops = int(loops.sum())
        if stats.dropped_self_loops:
            lo, hi = lo[~loops], hi[~loops]
        key = lo * n + hi if n else lo
        uniq_key = np.unique(key)
        stats.dropped_duplicates = len(key) - len(uniq_key)
        lo = (uniq_key // n).astype(np.int64) if n else uniq_key
        hi = (uniq_key % n).astype(np.int64) if n else uniq_key
        m = len(lo)
        stats.edges = m

        deg = np.bincount(lo, minlength=n) + np.bincount(hi, minlength=n)
        g._lens = deg.astype(np.int32)
        g._caps = g._lens.copy()
        g._starts = np.zeros(n, dtype=np.int64)
        if n:
            np.cumsum(deg[:-1], out=g._starts[1:])
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.argsort(src, kind="stable")
        g._pool = dst[order].astype(_POOL_DTYPE)
        g._pool_used = 2 * m
        g.edge_count = m
        g.load_stats = stats
        return g

    def copy(self) -> "Graph":
        g = Graph()
        g._starts = self._starts.copy()
        g._lens = self._lens.copy()
        g._caps = self._caps.copy()
        g._pool = self._pool.copy()
        g._pool_used = self._pool_used
        g._labels = list(self._labels)
        g._label_map = None if self._label_map is None else dict(self._label_map)
        g.edge_count = self.edge_count
        return g

    # ------------------------------------------------------------------
    # label mapping

    @property
    def vertex_count(self) -> int:
        return len(self._labels)

    def label_of(self, dense: int) -> int:
        return self._labels[dense]

    def dense_of(self, label: int) -> int:
        """Dense id for a label; KeyError if the label is unknown."""
        if self._label_map is None:
            if 0 <= label < len(self._labels):
                return label
            raise KeyError(label)
        return self._label_map[label]

    def has_vertex(self, label: int) -> bool:
        try:
            self.dense_of(label)
            return True
        except KeyError:
            return False

    def _intern(self, label: int) -> int:
        """Dense id for a label, creating the vertex on first sight."""
        if label < 0:
            raise ValueError("vertex labels must be non-negative")
        if self._label_map is None:
            if 0 <= label < len(self._labels):
                return label
            if label == len(self._labels):  # stays an identity mapping
                self._labels.append(label)
                self._grow_vertex_arrays()
                return label
            self._label_map = {lab: i for i, lab in enumerate(self._labels)}
        dense = self._label_map.get(label)
        if dense is None:
            dense = len(self._labels)
            self._label_map[label] = dense
            self._labels.append(label)
            self._grow_vertex_arrays()
        return dense

    def _grow_vertex_arrays(self):
        n = len(self._labels)
        if n > len(self._lens):
            grow = max(n, 2 * len(self._lens), 16)
            starts = np.zeros(grow, dtype=np.int64)
            lens = np.zeros(grow, dtype=np.int32)
            caps = np.zeros(grow, dtype=np.int32)
            starts[: len(self._starts)] = self._starts
            lens[: len(self._lens)] = self._lens
            caps[: len(self._caps)] = self._caps
            self._starts, self._lens, self._caps = starts, lens, caps

    # kernel-facing views, trimmed to the live vertex range
    def adjacency_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        n = self.vertex_count
        return self._starts[:n], self._lens[:n], self._pool

    # ------------------------------------------------------------------
    # mutation (exclusive phases only)

    def add_edge(self, u: int, v: int) -> str:
        """Insert the undirected edge {u, v}; returns "new" or "duplicate".

        Unknown endpoints are created as isolated vertices first.
        """
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        du = self._intern(int(u))
        dv = self._intern(int(v))
        return self._add_dense(du, dv)

    def remove_edge(self, u: int, v: int) -> str:
        """Delete the undirected edge {u, v}; returns "removed" or "absent"."""
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        try:
            du = self.dense_of(int(u))
            dv = self.dense_of(int(v))
        except KeyError:
            return "absent"
        return self._remove_dense(du, dv)

    def _add_dense(self, du: int, dv: int) -> str:
        if self._has_dense(du, dv):
            return "duplicate"
        self._append_neighbor(du, dv)
        self._append_neighbor(dv, du)
        self.edge_count += 1
        return "new"

    def _remove_dense(self, du: int, dv: int) -> str:
        if not self._has_dense(du, dv):
            return "absent"
        self._drop_neighbor(du, dv)
        self._drop_neighbor(dv, du)
        self.edge_count -= 1
        return "removed"

    def _has_dense(self, du: int, dv: int) -> bool:
        s = self._starts[du]
        ln = self._lens[du]
        if ln == 0:
            return False
        return bool((self._pool[s : s + ln] == dv).any())

    def _append_neighbor(self, du: int, w: int):
        ln = int(self._lens[du])
        cap = int(self._caps[du])
        if ln == cap:  # relocate block to the pool tail
            new_cap = max(_MIN_BLOCK, 2 * cap)
            need = self._pool_used + new_cap
            if need > len(self._pool):
                pool = np.zeros(max(need, 2 * len(self._pool), 64),
                                dtype=_POOL_DTYPE)
                pool[: self._pool_used] = self._pool[: self._pool_used]
                self._pool = pool
            s = int(self._starts[du])
            self._pool[self._pool_used : self._pool_used + ln] = \
                self._pool[s : s + ln]
            self._starts[du] = self._pool_used
            self._caps[du] = new_cap
            self._pool_used += new_cap
        s = int(self._starts[du])
        self._pool[s + ln] = w
        self._lens[du] = ln + 1

    def _drop_neighbor(self, du: int, w: int):
        s = int(self._starts[du])
        ln = int(self._lens[du])
        block = self._pool[s : s + ln]
        idx = int(np.nonzero(block == w)[0][0])
        block[idx] = block[ln - 1]
        self._lens[du] = ln - 1

    # ------------------------------------------------------------------
    # queries

    def has_edge(self, u: int, v: int) -> bool:
        try:
            return self._has_dense(self.dense_of(int(u)), self.dense_of(int(v)))
        except KeyError:
            return False

    def degree(self, u: int) -> int:
        return int(self._lens[self.dense_of(int(u))])

    def neighbors(self, u: int) -> list[int]:
        """Neighbor labels of u, in internal storage order."""
        du = self.dense_of(int(u))
        s = self._starts[du]
        block = self._pool[s : s + self._lens[du]]
        return [self._labels[w] for w in block]

    def edge_array(self) -> np.ndarray:
        """All edges as an (m, 2) array of canonical dense-id pairs."""
        n = self.vertex_count
        starts, lens, pool = self.adjacency_arrays()
        total = int(lens.sum())
        if total == 0:
            return np.zeros((0, 2), dtype=np.int64)
        src = np.repeat(np.arange(n, dtype=np.int64), lens)
        base = np.repeat(starts, lens)
        offsets = np.concatenate([[0], np.cumsum(lens[:-1])])
        within = np.arange(total, dtype=np.int64) - np.repeat(offsets, lens)
        dst = pool[base + within].astype(np.int64)
        keep = src < dst
        return np.stack([src[keep], dst[keep]], axis=1)

    def edges(self):
        """Yield each undirected edge once as a canonical label pair."""
        for du in range(self.vertex_count):
            s = int(self._starts[du])
            for w in self._pool[s : s + int(self._lens[du])]:
                if du < w:
                    a, b = self._labels[du], self._labels[int(w)]
                    yield (a, b) if a < b else (b, a)

    def check_invariants(self):
        """Assert symmetry, simplicity, and the edge-count identity."""
        n = self.vertex_count
        total = 0
        for du in range(n):
            s = int(self._starts[du])
            block = self._pool[s : s + int(self._lens[du])]
            assert len(set(block.tolist())) == len(block), "parallel edge"
            assert not (block == du).any(), "self-loop"
            total += len(block)
            for w in block.tolist():
                assert self._has_dense(int(w), du), "asymmetric adjacency"
        assert total == 2 * self.edge_count, "edge_count mismatch"


# ----------------------------------------------------------------------
# edge-list text format (SNAP-style: "u v" per line, '#' comments)


def _iter_lines(source):
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rt", encoding="utf-8") as fh:
            yield from fh
    elif isinstance(source, bytes):
        yield from io.StringIO(source.decode("utf-8"))
    else:
        for line in source:
            yield line.decode("utf-8") if isinstance(line, bytes) else line


def read_edge_pairs(source) -> tuple[list[tuple[int, int]], int]:
    """Raw label pairs from edge-list text, plus the comment-line count.

    No dedup or self-loop handling here; that is the consumer's business.
    """
    pairs: list[tuple[int, int]] = []
    comments = 0
    for line_no, raw in enumerate(_iter_lines(source), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments += 1
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(line_no, raw.rstrip("\n"))
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(line_no, raw.rstrip("\n")) from None
        if u < 0 or v < 0:
            raise EdgeListParseError(line_no, raw.rstrip("\n"))
        pairs.append((u, v))
    return pairs, comments


def load_edge_list_with_stats(source) -> tuple[Graph, LoadStats]:
    """Parse an edge-list text file/stream into a Graph plus drop counts."""
    pairs, comments = read_edge_pairs(source)
    g = Graph.from_edges(np.asarray(pairs, dtype=np.int64).reshape(-1, 2))
    g.load_stats.comment_lines = comments
    return g, g.load_stats


def load_edge_list(source) -> Graph:
    return load_edge_list_with_stats(source)[0]


def save_edge_list(g: Graph, path):
    """Write the graph back out, one canonical label pair per line."""
    dense = g.edge_array()
    labels = np.asarray(g._labels, dtype=np.int64)
    su, sv = labels[dense[:, 0]], labels[dense[:, 1]]
    lo, hi = np.minimum(su, sv), np.maximum(su, sv)
    order = np.lexsort((hi, lo))
    out = np.stack([lo[order], hi[order]], axis=1)
    if isinstance(path, (str, os.PathLike)):
        with open(path, "wt", encoding="utf-8") as fh:
            np.savetxt(fh, out, fmt="%d")
    else:
        np.savetxt(path, out, fmt="%d")
