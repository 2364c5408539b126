"""Hub-removal shattering of a graph into structure instances.

Each pending connected component is processed independently: the top-degree
hubs are removed and turned into star candidates, the surviving connected
pieces are classified or requeued.  Components are node-disjoint, so any
number of workers may process them concurrently; the condensation is
canonically ordered afterwards, making the result worker-count independent.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _cc_labels

from .classifier import (CHAIN_MODES, STRICT_PATH, StructureType, as_epsilon,
                         classify_csr)
from .condenser import Condensation, StructureInstance, condense
from .graph_io import Graph, as_node_array, gather_rows, slice_csr


@dataclass
class ShatterConfig:
    """Knobs of the shattering loop; defaults match the reference setup
    (1% hubs, epsilon 0.2, minimum structure size 5)."""
    hub_fraction: Fraction | float | str = 0.01
    min_structure_size: int = 5
    epsilon: Fraction | float | str = 0.2
    chain_mode: str = STRICT_PATH
    worker_count: int | None = None

    def __post_init__(self):
        # exact fractions: ceil(0.01 * 200) must be 2, not a float artifact
        if not isinstance(self.hub_fraction, Fraction):
            self.hub_fraction = Fraction(str(self.hub_fraction))
        if not 0 < self.hub_fraction <= 1:
            raise ValueError(f"hub_fraction must be in (0, 1], got {self.hub_fraction}")
        self.epsilon = as_epsilon(self.epsilon)
        if self.min_structure_size < 2:
            raise ValueError("min_structure_size must be >= 2")
        if self.chain_mode not in CHAIN_MODES:
            raise ValueError(f"chain_mode must be one of {CHAIN_MODES}")
        if self.worker_count is not None and self.worker_count < 1:
            raise ValueError("worker_count must be >= 1")

    def resolved_workers(self) -> int:
        return self.worker_count or os.cpu_count() or 1


def hub_count(hub_fraction: Fraction, component_size: int) -> int:
    """Number of hubs to remove: max(1, ceil(fraction * size))."""
    return max(1, math.ceil(hub_fraction * component_size))


@dataclass
class _Entry:
    """Work-queue item: a connected component with its own CSR."""
    to_global: np.ndarray  # sorted original-graph ids, local id -> global id
    indptr: np.ndarray
    indices: np.ndarray
    checked: bool = False  # classification already attempted (requeued piece)


@dataclass
class _Result:
    instances: list[StructureInstance] = field(default_factory=list)
    unclassified: list[int] = field(default_factory=list)
    requeue: list[_Entry] = field(default_factory=list)


def _component_groups(indptr: np.ndarray, indices: np.ndarray) -> list[np.ndarray]:
    """Local-id node groups of the CSR's connected components, each sorted,
    ordered by smallest member."""
    n = len(indptr) - 1
    if n == 0:
        return []
    mat = csr_matrix((np.ones(len(indices), dtype=np.int8), indices, indptr), shape=(n, n))
    _, labels = _cc_labels(mat, directed=False)
    order = np.argsort(labels, kind="stable")
    boundaries = np.flatnonzero(np.diff(labels[order])) + 1
    groups = np.split(order, boundaries)
    groups.sort(key=lambda grp: int(grp[0]))
    return groups


def connected_components(g: Graph, nodes) -> list[np.ndarray]:
    """Partition ``nodes`` into the connected components of the induced
    subgraph, ordered by smallest member id."""
    arr = as_node_array(nodes, g.node_count)
    if arr.size == 0:
        return []
    indptr, indices = slice_csr(g.indptr, g.indices, arr)
    return [arr[grp] for grp in _component_groups(indptr, indices)]


def select_hubs(g: Graph, component, hub_fraction: Fraction | float | str = 0.01) -> np.ndarray:
    """Top-degree nodes of the component (degree within the component),
    highest degree first, ties by ascending node id."""
    nodes = as_node_array(component, g.node_count)
    if nodes.size == 0:
        raise ValueError("component must be non-empty")
    indptr, _ = slice_csr(g.indptr, g.indices, nodes)
    frac = hub_fraction if isinstance(hub_fraction, Fraction) else Fraction(str(hub_fraction))
    return nodes[_hub_order(np.diff(indptr), nodes, hub_count(frac, len(nodes)))]


def _hub_order(local_deg: np.ndarray, tie_key: np.ndarray, k: int) -> np.ndarray:
    """Local positions of the k hubs, in removal order."""
    order = np.lexsort((tie_key, -local_deg))
    return order[:k]


def _extract_stars(indptr: np.ndarray, indices: np.ndarray, to_global: np.ndarray,
                   hubs_local: np.ndarray, min_size: int) -> tuple[list[StructureInstance], list[int], np.ndarray]:
    """Carve star candidates around each hub, in hub order.

    A satellite is consumed by the earliest hub for which it has no other
    edge into the surviving residual; a candidate star keeps its hub plus
    the consumed satellites.  Candidates below ``min_size`` are dropped:
    the hub becomes unclassified and its satellites stay in the residual.
    Returns (instances, unclassified globals, residual local ids).
    """
    n = len(indptr) - 1
    in_residual = np.ones(n, dtype=bool)
    in_residual[hubs_local] = False
    instances: list[StructureInstance] = []
    unclassified: list[int] = []
    for h in hubs_local:
        row = indices[indptr[h]:indptr[h + 1]]
        sats = row[in_residual[row]]
        if sats.size:
            seg, vals = gather_rows(indptr, indices, sats.astype(np.int64))
            outside = np.bincount(seg[in_residual[vals]], minlength=len(sats))
            consumed = sats[outside == 0]
        else:
            consumed = sats
        if 1 + len(consumed) >= min_size:
            stype = StructureType.ST if len(consumed) == len(sats) else StructureType.FS
            members = np.sort(to_global[np.append(consumed, h)])
            instances.append(StructureInstance(stype, members, internal_edges=len(consumed)))
            in_residual[consumed] = False
        else:
            unclassified.append(int(to_global[h]))
    return instances, unclassified, np.flatnonzero(in_residual)


def extract_hub_stars(g: Graph, component, hubs, config: ShatterConfig) -> tuple[list[StructureInstance], np.ndarray]:
    """Star extraction over a component of ``g``; returns the emitted
    instances and the residual node set (global ids).

    Hubs of discarded candidates are absent from both: they are
    unclassified (query their absence via the returned sets).
    """
    nodes = as_node_array(component, g.node_count)
    hubs = np.asarray(hubs, dtype=np.int64)
    if not np.all(np.isin(hubs, nodes)):
        raise ValueError("hubs must belong to the component")
    indptr, indices = slice_csr(g.indptr, g.indices, nodes)
    hubs_local = np.searchsorted(nodes, hubs)
    instances, _, residual_local = _extract_stars(
        indptr, indices, nodes, hubs_local, config.min_structure_size)
    return instances, nodes[residual_local]


def _process_entry(entry: _Entry, config: ShatterConfig) -> _Result:
    """One pop of the work queue: classify, or shatter and sort the pieces."""
    out = _Result()
    n = len(entry.to_global)
    if n < config.min_structure_size:
        out.unclassified.extend(int(u) for u in entry.to_global)
        return out
    if not entry.checked:
        stype = classify_csr(entry.indptr, entry.indices, config.epsilon, config.chain_mode)
        if stype is not StructureType.UNDEFINED:
            out.instances.append(StructureInstance(
                stype, entry.to_global.copy(), internal_edges=int(entry.indices.size) // 2))
            return out
    local_deg = np.diff(entry.indptr)
    hubs_local = _hub_order(local_deg, entry.to_global, hub_count(config.hub_fraction, n))
    instances, unclassified, residual_local = _extract_stars(
        entry.indptr, entry.indices, entry.to_global, hubs_local, config.min_structure_size)
    out.instances.extend(instances)
    out.unclassified.extend(unclassified)
    if residual_local.size:
        res_indptr, res_indices = slice_csr(entry.indptr, entry.indices, residual_local)
        res_global = entry.to_global[residual_local]
        for grp in _component_groups(res_indptr, res_indices):
            comp_global = res_global[grp]
            if len(grp) < config.min_structure_size:
                out.unclassified.extend(int(u) for u in comp_global)
                continue
            sub_indptr, sub_indices = slice_csr(res_indptr, res_indices, grp.astype(np.int64))
            stype = classify_csr(sub_indptr, sub_indices, config.epsilon, config.chain_mode)
            if stype is not StructureType.UNDEFINED:
                out.instances.append(StructureInstance(
                    stype, comp_global, internal_edges=int(sub_indices.size) // 2))
            else:
                out.requeue.append(_Entry(comp_global, sub_indptr, sub_indices, checked=True))
    return out


def shatter(g: Graph, config: ShatterConfig | None = None) -> Condensation:
    """Run the full shattering loop over ``g`` and assemble the condensation.

    The queue is seeded with the connected components of the input.  Each
    round processes every pending component (in parallel when
    ``worker_count`` > 1); pieces that remain unrecognized go back on the
    queue.  Every round removes at least one hub from each pending
    component, so the loop terminates.
    """
    if g.node_count == 0:
        raise ValueError("cannot shatter an empty graph")
    config = config or ShatterConfig()
    pending: list[_Entry] = []
    for comp in connected_components(g, np.arange(g.node_count, dtype=np.int64)):
        indptr, indices = slice_csr(g.indptr, g.indices, comp)
        pending.append(_Entry(comp, indptr, indices))
    instances: list[StructureInstance] = []
    unclassified: list[int] = []
    workers = config.resolved_workers()
    executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while pending:
            if executor is not None:
                results = list(executor.map(_process_entry, pending,
                                            [config] * len(pending)))
            else:
                results = [_process_entry(e, config) for e in pending]
            pending = []
            for res in results:
                instances.extend(res.instances)
                unclassified.extend(res.unclassified)
                pending.extend(res.requeue)
    finally:
        if executor is not None:
            executor.shutdown()
    return condense(g, instances, unclassified)
