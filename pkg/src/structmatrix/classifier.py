"""Structure-type decision for connected subgraphs.

The decision ladder works purely on edge arithmetic plus a bipartiteness
test.  Near-structure thresholds compare integer cross-products, so the
epsilon boundary is exact regardless of how epsilon was written.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .graph_io import Graph, as_node_array, gather_rows, slice_csr


class StructureType(str, Enum):
    FS = "fs"
    ST = "st"
    CH = "ch"
    NC = "nc"
    FC = "fc"
    NB = "nb"
    FB = "fb"
    UNDEFINED = "undefined"

    def __str__(self) -> str:  # tsv/json friendliness
        return self.value


#: Canonical vocabulary order; also the matrix segment order.
VOCABULARY: tuple[StructureType, ...] = (
    StructureType.FS, StructureType.ST, StructureType.CH, StructureType.NC,
    StructureType.FC, StructureType.NB, StructureType.FB,
)

TYPE_RANK = {t: i for i, t in enumerate(VOCABULARY)}

STRICT_PATH = "strict_path"
TREE_LITERAL = "tree_literal"
CHAIN_MODES = (STRICT_PATH, TREE_LITERAL)


@dataclass(frozen=True)
class Bipartition:
    """Two-coloring of a connected component; side_a holds the smallest id."""
    side_a: np.ndarray
    side_b: np.ndarray


def as_epsilon(value) -> Fraction:
    """Normalize epsilon to an exact Fraction in (0, 1).

    Floats go through their decimal string so 0.2 means exactly 1/5.
    """
    eps = value if isinstance(value, Fraction) else Fraction(str(value))
    if not 0 < eps < 1:
        raise ValueError(f"epsilon must be in (0, 1), got {value}")
    return eps


def two_color_csr(indptr: np.ndarray, indices: np.ndarray) -> np.ndarray | None:
    """BFS two-coloring of a connected CSR graph; None on an odd cycle."""
    n = len(indptr) - 1
    color = np.full(n, -1, dtype=np.int8)
    color[0] = 0
    frontier = np.array([0], dtype=np.int64)
    while frontier.size:
        seg, vals = gather_rows(indptr, indices, frontier)
        vals = vals.astype(np.int64)
        src_color = color[frontier][seg]
        val_color = color[vals]
        if np.any(val_color == src_color):
            return None
        fresh = val_color == -1
        if not np.any(fresh):
            break
        color[vals[fresh]] = 1 - src_color[fresh]
        frontier = np.unique(vals[fresh])
    return color


def classify_csr(indptr: np.ndarray, indices: np.ndarray,
                 epsilon: Fraction, chain_mode: str = STRICT_PATH) -> StructureType:
    """Decision ladder over a connected component given as local CSR."""
    n = len(indptr) - 1
    m = int(indices.size) // 2
    pairs2 = n * (n - 1)  # 2 * max clique edges
    if 2 * m == pairs2:
        return StructureType.FC
    num, den = epsilon.numerator, epsilon.denominator
    if 2 * m * den > (den - num) * pairs2:
        return StructureType.NC
    if 4 * m < n * n:
        color = two_color_csr(indptr, indices)
        if color is not None:
            na = int((color == 0).sum())
            nb = n - na
            # star test ahead of the complete-bipartite test: K(1,k) is a
            # star, never a bipartite core
            if na == 1 or nb == 1:
                return StructureType.ST
            cross = na * nb
            if m == cross:
                return StructureType.FB
            if m * den > (den - num) * cross:
                return StructureType.NB
            if m == n - 1:
                if chain_mode == TREE_LITERAL:
                    return StructureType.CH
                if int(np.diff(indptr).max()) <= 2:
                    return StructureType.CH
    return StructureType.UNDEFINED


def check_bipartite(g: Graph, component) -> Bipartition | None:
    """Two-color a connected component of ``g``; None if not bipartite."""
    nodes = as_node_array(component, g.node_count)
    indptr, indices = slice_csr(g.indptr, g.indices, nodes)
    color = two_color_csr(indptr, indices)
    if color is None:
        return None
    return Bipartition(side_a=nodes[color == 0], side_b=nodes[color == 1])


def classify(g: Graph, component, epsilon=Fraction(1, 5),
             chain_mode: str = STRICT_PATH) -> StructureType:
    """Classify the connected component ``component`` of ``g``.

    The component must be connected with at least 2 nodes; this is the
    caller's responsibility (the shattering loop guarantees it).
    """
    if chain_mode not in CHAIN_MODES:
        raise ValueError(f"unknown chain_mode {chain_mode!r}")
    nodes = as_node_array(component, g.node_count)
    if len(nodes) < 2:
        raise ValueError("classification needs a connected component of >= 2 nodes")
    indptr, indices = slice_csr(g.indptr, g.indices, nodes)
    return classify_csr(indptr, indices, as_epsilon(epsilon), chain_mode)
