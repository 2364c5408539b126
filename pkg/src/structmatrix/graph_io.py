"""Edge-list loading and compact undirected graph storage.

Graphs are stored in CSR form (``indptr``/``indices``) with dense internal
ids assigned in first-seen order.  Input is always symmetrized and
deduplicated; self-loops are dropped (counted on the graph).
"""
from __future__ import annotations

import logging
from array import array
from pathlib import Path

import numpy as np

logger = logging.getLogger(__name__)

INDEX_DTYPE = np.int32


class GraphFormatError(ValueError):
    """Unreadable, malformed, or empty edge-list input."""


class Graph:
    """Immutable undirected graph with sorted CSR adjacency.

    Internal node ids are dense in ``[0, node_count)``.  ``external_ids[i]``
    is the original label of internal node ``i``.
    """

    __slots__ = ("indptr", "indices", "external_ids", "self_loops_dropped")

    def __init__(self, indptr: np.ndarray, indices: np.ndarray,
                 external_ids: list[str], self_loops_dropped: int = 0):
        self.indptr = indptr
        self.indices = indices
        self.external_ids = external_ids
        self.self_loops_dropped = self_loops_dropped

    @property
    def node_count(self) -> int:
        return len(self.indptr) - 1

    @property
    def edge_count(self) -> int:
        return self.indices.size // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, u: int) -> np.ndarray:
        """Sorted internal ids adjacent to ``u``."""
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def degree(self, u: int) -> int:
        return int(self.indptr[u + 1] - self.indptr[u])

    def edges(self):
        """Yield each undirected edge once as ``(u, v)`` with ``u < v``."""
        indptr, indices = self.indptr, self.indices
        for u in range(self.node_count):
            for v in indices[indptr[u]:indptr[u + 1]]:
                if u < v:
                    yield u, int(v)

    def __repr__(self) -> str:
        return f"Graph(nodes={self.node_count}, edges={self.edge_count})"


def as_node_array(nodes, node_count: int | None = None) -> np.ndarray:
    """Normalize a node subset to a sorted unique int64 array, validating range."""
    arr = np.asarray(sorted(nodes) if isinstance(nodes, set) else nodes, dtype=np.int64)
    arr = np.unique(arr)
    if arr.size and node_count is not None:
        if arr[0] < 0 or arr[-1] >= node_count:
            raise IndexError(f"node id out of range [0, {node_count}): {arr[0] if arr[0] < 0 else arr[-1]}")
    return arr


def build_graph(n: int, src: np.ndarray, dst: np.ndarray,
                external_ids: list[str], self_loops_dropped: int = 0) -> Graph:
    """Assemble a Graph from raw endpoint arrays (symmetrize + dedupe)."""
    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    loops = src == dst
    dropped = self_loops_dropped + int(loops.sum())
    if dropped:
        logger.warning("dropped %d self-loop(s)", dropped)
    src, dst = src[~loops], dst[~loops]
    a = np.minimum(src, dst)
    b = np.maximum(src, dst)
    key = np.unique(a * np.int64(n) + b)
    a, b = key // n, key % n
    rows = np.concatenate([a, b])
    cols = np.concatenate([b, a])
    order = np.lexsort((cols, rows))
    indices = cols[order].astype(INDEX_DTYPE)
    counts = np.bincount(rows, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return Graph(indptr, indices, external_ids, dropped)


def load_edge_list(path, comment_prefix: str = "#", delimiter: str | None = None) -> Graph:
    """Parse a whitespace-delimited edge-list file into a Graph.

    One edge per line, two labels; lines starting with ``comment_prefix``
    and blank lines are skipped.  ``delimiter=None`` splits on any
    whitespace run.  Directed input is symmetrized, duplicates collapse,
    self-loops are dropped with a counted warning.

    Raises GraphFormatError for unreadable files, lines with fewer than two
    tokens (reporting the line number), or an empty graph.
    """
    path = Path(path)
    ids: dict[str, int] = {}
    us = array("i")
    vs = array("i")
    try:
        fh = open(path, "r", encoding="utf-8", errors="surrogateescape")
    except OSError as exc:
        raise GraphFormatError(f"cannot read {path}: {exc}") from exc
    with fh:
        for lineno, line in enumerate(fh, start=1):
            if line.startswith(comment_prefix):
                continue
            parts = line.split(delimiter)
            if not parts:
                continue
            if len(parts) < 2:
                raise GraphFormatError(f"{path}:{lineno}: expected two node labels, got {line.strip()!r}")
            a, b = parts[0], parts[1]
            u = ids.setdefault(a, len(ids))
            v = ids.setdefault(b, len(ids))
            us.append(u)
            vs.append(v)
    if not ids:
        raise GraphFormatError(f"{path}: empty graph")
    external = [""] * len(ids)
    for label, i in ids.items():
        external[i] = label
    return build_graph(len(ids), np.frombuffer(us, dtype=np.int32),
                       np.frombuffer(vs, dtype=np.int32), external)


def write_edge_list(g: Graph, path) -> None:
    """Write one ``u v`` line per undirected edge, using external labels."""
    ext = g.external_ids
    with open(path, "w", encoding="utf-8") as fh:
        for u, v in g.edges():
            fh.write(f"{ext[u]} {ext[v]}\n")


def slice_csr(indptr: np.ndarray, indices: np.ndarray, nodes: np.ndarray):
    """CSR of the induced subgraph on sorted id array ``nodes``.

    Returns ``(new_indptr, new_indices)`` with endpoints remapped to local
    positions ``0..len(nodes)-1``.  Rows stay sorted.
    """
    k = len(nodes)
    starts = indptr[nodes]
    lens = (indptr[nodes + 1] - starts).astype(np.int64)
    total = int(lens.sum())
    if total == 0:
        return np.zeros(k + 1, dtype=np.int64), np.empty(0, dtype=INDEX_DTYPE)
    out_starts = np.cumsum(lens) - lens
    pos = np.arange(total, dtype=np.int64) - np.repeat(out_starts, lens) + np.repeat(starts, lens)
    neigh = indices[pos]
    loc = np.searchsorted(nodes, neigh)
    loc[loc >= k] = k - 1
    keep = nodes[loc] == neigh
    seg = np.repeat(np.arange(k, dtype=np.int64), lens)
    new_counts = np.bincount(seg[keep], minlength=k)
    new_indptr = np.zeros(k + 1, dtype=np.int64)
    np.cumsum(new_counts, out=new_indptr[1:])
    return new_indptr, loc[keep].astype(INDEX_DTYPE)


def gather_rows(indptr: np.ndarray, indices: np.ndarray, rows: np.ndarray):
    """Concatenate the CSR rows of ``rows``; returns ``(seg, values)``.

    ``seg[i]`` is the position in ``rows`` that ``values[i]`` came from.
    """
    starts = indptr[rows]
    lens = (indptr[rows + 1] - starts).astype(np.int64)
    total = int(lens.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=INDEX_DTYPE)
    out_starts = np.cumsum(lens) - lens
    pos = np.arange(total, dtype=np.int64) - np.repeat(out_starts, lens) + np.repeat(starts, lens)
    seg = np.repeat(np.arange(len(rows), dtype=np.int64), lens)
    return seg, indices[pos]


def induced_subgraph(g: Graph, nodes) -> Graph:
    """Subgraph on ``nodes`` with ids remapped densely, labels preserved."""
    arr = as_node_array(nodes, g.node_count)
    indptr, indices = slice_csr(g.indptr, g.indices, arr)
    external = [g.external_ids[u] for u in arr]
    return Graph(indptr, indices, external)


def induced_edge_count(g: Graph, nodes: np.ndarray) -> int:
    """Number of edges of ``g`` with both endpoints in sorted array ``nodes``."""
    seg, vals = gather_rows(g.indptr, g.indices, nodes)
    if vals.size == 0:
        return 0
    loc = np.searchsorted(nodes, vals)
    loc[loc >= len(nodes)] = len(nodes) - 1
    return int((nodes[loc] == vals).sum()) // 2


def bfs_sample(g: Graph, seed_node: int, target_edges: int) -> np.ndarray:
    """Breadth-first ball around ``seed_node`` grown level by level.

    Whole levels are added until the induced edge count first reaches
    ``target_edges``; returns the entire component if the target is out of
    reach.  Deterministic: levels are processed in sorted id order.
    """
    if not 0 <= seed_node < g.node_count:
        raise IndexError(f"seed node {seed_node} out of range")
    if target_edges < 1:
        raise ValueError("target_edges must be >= 1")
    included = np.zeros(g.node_count, dtype=bool)
    included[seed_node] = True
    frontier = np.array([seed_node], dtype=np.int64)
    edge_total = 0
    while frontier.size and edge_total < target_edges:
        _, vals = gather_rows(g.indptr, g.indices, frontier)
        vals = vals.astype(np.int64)
        nxt = np.unique(vals[~included[vals]])
        if nxt.size == 0:
            break
        _, nvals = gather_rows(g.indptr, g.indices, nxt)
        nvals = nvals.astype(np.int64)
        to_prev = int(included[nvals].sum())
        in_level = np.zeros(g.node_count, dtype=bool)
        in_level[nxt] = True
        within = int(in_level[nvals].sum()) // 2
        edge_total += to_prev + within
        included[nxt] = True
        frontier = nxt
    return np.flatnonzero(included)
