"""Static core decomposition: linear-time peeling plus a naive reference.

``peel`` is the initializer and the correctness yardstick for the dynamic
engines.  ``naive_core_numbers`` recomputes cores by literal repeated
minimum-degree deletion and exists purely as an independent check; it never
shares code with the peeling kernels.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph
from .kernels import get_backend


@dataclass
class CoreMap:
    """Per-vertex core numbers, indexed by dense vertex id."""

    values: np.ndarray = field(default_factory=lambda: np.zeros(0, np.int32))

    def copy(self) -> "CoreMap":
        return CoreMap(self.values.copy())

    def of(self, g: Graph, label: int) -> int:
        return int(self.values[g.dense_of(label)])

    def as_label_dict(self, g: Graph) -> dict[int, int]:
        return {g.label_of(i): int(c) for i, c in enumerate(self.values)}

    def grow_inplace(self, n: int):
        """Extend with zero entries for newly created vertices."""
        if n > len(self.values):
            out = np.zeros(n, dtype=np.int32)
            out[: len(self.values)] = self.values
            self.values = out

    def __eq__(self, other):
        if not isinstance(other, CoreMap):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def __len__(self):
        return len(self.values)


def peel(g: Graph, backend: str | None = None) -> CoreMap:
    """Exact core numbers by bucket peeling, O(n + m)."""
    starts, lens, pool = g.adjacency_arrays()
    kern = get_backend(backend)
    return CoreMap(kern.peel_kernel(g.vertex_count, starts, lens, pool))


def naive_core_numbers(g: Graph) -> CoreMap:
    """Independent reference: repeatedly delete a vertex of minimum degree.

    A vertex's core is the largest minimum degree seen up to the moment it
    is deleted.  Quadratic; intended for small graphs and tests only.
    """
    n = g.vertex_count
    starts, lens, pool = g.adjacency_arrays()
    adj = {v: set(pool[starts[v] : starts[v] + lens[v]].tolist())
           for v in range(n)}
    cores = np.zeros(n, dtype=np.int32)
    running_max = 0
    while adj:
        v = min(adj, key=lambda x: (len(adj[x]), x))
        running_max = max(running_max, len(adj[v]))
        cores[v] = running_max
        for w in adj[v]:
            adj[w].discard(v)
        del adj[v]
    return CoreMap(cores)


def first_mismatch(a: CoreMap, b: CoreMap) -> int | None:
    """Lowest dense vertex id where the two maps disagree, or None."""
    if len(a.values) != len(b.values):
        return min(len(a.values), len(b.values))
    diff = np.nonzero(a.values != b.values)[0]
    return int(diff[0]) if len(diff) else None


# ----------------------------------------------------------------------
# core output files: "external_vertex_id core_number", ascending id


def write_core_file(path, g: Graph, cores: CoreMap):
    labels = np.asarray([g.label_of(i) for i in range(g.vertex_count)],
                        dtype=np.int64)
    order = np.argsort(labels)
    out = np.stack([labels[order], cores.values.astype(np.int64)[order]],
                   axis=1)
    if isinstance(path, (str, os.PathLike)):
        with open(path, "wt", encoding="utf-8") as fh:
            np.savetxt(fh, out, fmt="%d")
    else:
        np.savetxt(path, out, fmt="%d")


def read_core_file(path) -> dict[int, int]:
    out: dict[int, int] = {}
    with open(path, "rt", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            label, core = line.split()
            out[int(label)] = int(core)
    return out
