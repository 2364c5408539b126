"""Assembly of shattering output into the matrix-ready condensation.

A condensation is the structure set, a total node assignment, the sparse
inter-structure edge counts D, and the tally of edges incident to
unclassified nodes.  The edge counts partition the source edge set exactly:

    sum(internal) + sum(D) + unclassified_incident == edge_count
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .classifier import TYPE_RANK, VOCABULARY, StructureType
from .graph_io import Graph

UNASSIGNED = -1


@dataclass
class StructureInstance:
    """One detected structure: a typed set of nodes plus edge bookkeeping.

    ``members`` holds sorted internal node ids; it is None for instances
    rebuilt from a structures TSV, where only ``n_nodes`` and optional
    ``member_labels`` survive.
    """
    stype: StructureType
    members: np.ndarray | None
    internal_edges: int
    id: int = UNASSIGNED
    total_external_degree: int = 0
    n_nodes: int = 0
    member_labels: list[str] | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.members is not None:
            self.members = np.asarray(self.members, dtype=np.int64)
            self.n_nodes = len(self.members)


@dataclass
class EdgeTally:
    """Single-pass edge accounting against a node assignment."""
    inter: dict[tuple[int, int], int]
    internal_by_structure: np.ndarray
    unclassified_incident: int


@dataclass
class Condensation:
    """A graph expressed as structure instances plus their interconnections."""
    instances: list[StructureInstance]
    node_assignment: np.ndarray | None
    unclassified_nodes: np.ndarray
    inter_edges: dict[tuple[int, int], int]
    unclassified_incident: int
    node_count: int
    edge_count: int

    @property
    def internal_edge_total(self) -> int:
        return sum(inst.internal_edges for inst in self.instances)

    @property
    def inter_edge_total(self) -> int:
        return sum(self.inter_edges.values())

    def d(self, i: int, j: int) -> int:
        """Symmetric lookup of D(s_i, s_j); 0 when no edges cross."""
        if i == j:
            raise ValueError("D is defined only for distinct structures")
        return self.inter_edges.get((min(i, j), max(i, j)), 0)

    def type_counts(self) -> dict[StructureType, int]:
        counts = {t: 0 for t in VOCABULARY}
        for inst in self.instances:
            counts[inst.stype] += 1
        return counts


def compute_inter_edges(g: Graph, assignment: np.ndarray) -> EdgeTally:
    """Tally every edge of ``g`` against a node->structure assignment.

    Edges inside one structure count as internal, edges between two
    structures feed the sparse D map, and edges touching any unassigned
    node (``UNASSIGNED``) are tallied separately.
    """
    n_struct = int(assignment.max()) + 1 if assignment.size else 0
    rows = np.repeat(np.arange(g.node_count, dtype=np.int64), np.diff(g.indptr))
    cols = g.indices.astype(np.int64)
    once = rows < cols
    au = assignment[rows[once]]
    av = assignment[cols[once]]
    touched = (au == UNASSIGNED) | (av == UNASSIGNED)
    unclassified_incident = int(touched.sum())
    au, av = au[~touched], av[~touched]
    internal = au == av
    internal_by_structure = np.bincount(au[internal], minlength=n_struct)
    ai, aj = au[~internal], av[~internal]
    lo = np.minimum(ai, aj)
    hi = np.maximum(ai, aj)
    key, counts = np.unique(lo * np.int64(max(n_struct, 1)) + hi, return_counts=True)
    inter = {(int(k // max(n_struct, 1)), int(k % max(n_struct, 1))): int(c)
             for k, c in zip(key, counts)}
    return EdgeTally(inter, internal_by_structure, unclassified_incident)


def condense(g: Graph, raw_instances: list[StructureInstance],
             unclassified_nodes) -> Condensation:
    """Canonicalize instances, build the assignment, and tally all edges.

    Instances get dense ids in order of their smallest member id, which
    makes the output independent of discovery order (and of worker count).
    Raises ValueError if the instances plus the unclassified set fail to
    partition the node set, or if an instance's internal edge count
    disagrees with the single-pass tally.
    """
    instances = sorted(raw_instances, key=lambda s: int(s.members[0]))
    assignment = np.full(g.node_count, UNASSIGNED, dtype=np.int64)
    assigned_total = 0
    for i, inst in enumerate(instances):
        inst.id = i
        assignment[inst.members] = i
        assigned_total += inst.n_nodes
    unclassified = np.asarray(sorted(unclassified_nodes), dtype=np.int64)
    if assigned_total + len(unclassified) != g.node_count:
        raise ValueError(
            f"node conservation violated: {assigned_total} assigned + "
            f"{len(unclassified)} unclassified != {g.node_count} nodes")
    if int((assignment != UNASSIGNED).sum()) != assigned_total:
        raise ValueError("structure member sets overlap")
    if np.any(assignment[unclassified] != UNASSIGNED):
        raise ValueError("unclassified set overlaps structure members")

    tally = compute_inter_edges(g, assignment)
    for inst in instances:
        counted = int(tally.internal_by_structure[inst.id]) if inst.id < len(tally.internal_by_structure) else 0
        if counted != inst.internal_edges:
            raise ValueError(
                f"structure {inst.id} ({inst.stype}) claims {inst.internal_edges} "
                f"internal edges but the edge tally found {counted}")
    ext = np.zeros(len(instances), dtype=np.int64)
    for (i, j), d in tally.inter.items():
        ext[i] += d
        ext[j] += d
    for inst in instances:
        inst.total_external_degree = int(ext[inst.id])
    return Condensation(
        instances=instances,
        node_assignment=assignment,
        unclassified_nodes=unclassified,
        inter_edges=tally.inter,
        unclassified_incident=tally.unclassified_incident,
        node_count=g.node_count,
        edge_count=g.edge_count,
    )


def order_segments(cond: Condensation) -> np.ndarray:
    """Matrix position of every instance id.

    Instances are grouped into segments by type (vocabulary order) and
    sorted inside each segment by total external degree descending, ties by
    ascending id.  Returns ``positions`` with ``positions[id] = row``.
    """
    order = sorted(cond.instances,
                   key=lambda s: (TYPE_RANK[s.stype], -s.total_external_degree, s.id))
    positions = np.empty(len(order), dtype=np.int64)
    for pos, inst in enumerate(order):
        positions[inst.id] = pos
    return positions


STRUCTURES_COLUMNS = ["id", "type", "n_nodes", "internal_edges", "total_external_degree", "members"]


def write_structures_tsv(cond: Condensation, path, g: Graph | None = None,
                         include_members: bool = True) -> None:
    """One row per instance; members column holds external labels when
    ``g`` is given, internal ids otherwise."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, delimiter="\t", lineterminator="\n")
        writer.writerow(STRUCTURES_COLUMNS)
        for inst in cond.instances:
            if not include_members:
                members = ""
            elif inst.members is not None:
                if g is not None:
                    members = ",".join(g.external_ids[u] for u in inst.members)
                else:
                    members = ",".join(str(int(u)) for u in inst.members)
            else:
                members = ",".join(inst.member_labels or [])
            writer.writerow([inst.id, inst.stype.value, inst.n_nodes,
                             inst.internal_edges, inst.total_external_degree, members])


def write_inter_edges_tsv(cond: Condensation, path) -> None:
    """Rows ``i j d`` with i < j, ordered by (i, j)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, delimiter="\t", lineterminator="\n")
        writer.writerow(["i", "j", "d"])
        for (i, j) in sorted(cond.inter_edges):
            writer.writerow([i, j, cond.inter_edges[(i, j)]])


def read_structures_tsv(path) -> list[dict]:
    """Parse rows written by write_structures_tsv into plain dicts."""
    records = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter="\t")
        header = next(reader, None)
        if header is None or header[:5] != STRUCTURES_COLUMNS[:5]:
            raise ValueError(f"{path}: not a structures TSV (bad header)")
        for row in reader:
            records.append({
                "id": int(row[0]),
                "type": StructureType(row[1]),
                "n_nodes": int(row[2]),
                "internal_edges": int(row[3]),
                "total_external_degree": int(row[4]),
                "members": row[5].split(",") if len(row) > 5 and row[5] else [],
            })
    return records


def read_inter_edges_tsv(path) -> dict[tuple[int, int], int]:
    inter = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter="\t")
        header = next(reader, None)
        if header != ["i", "j", "d"]:
            raise ValueError(f"{path}: not an inter-edges TSV (bad header)")
        for row in reader:
            inter[(int(row[0]), int(row[1]))] = int(row[2])
    return inter


def condensation_from_tsv(structures_path, inter_path, node_count: int = 0,
                          edge_count: int = 0, unclassified_count: int = 0,
                          unclassified_incident: int = 0) -> Condensation:
    """Rebuild a matrix-ready condensation from the TSV pair.

    The node assignment is not recoverable from the TSVs; rendering and
    export only need instances and D.
    """
    records = read_structures_tsv(structures_path)
    instances = [
        StructureInstance(
            stype=rec["type"],
            members=None,
            internal_edges=rec["internal_edges"],
            id=rec["id"],
            total_external_degree=rec["total_external_degree"],
            n_nodes=rec["n_nodes"],
            member_labels=rec["members"] or None,
        )
        for rec in records
    ]
    instances.sort(key=lambda s: s.id)
    return Condensation(
        instances=instances,
        node_assignment=None,
        unclassified_nodes=np.empty(unclassified_count, dtype=np.int64),
        inter_edges=read_inter_edges_tsv(inter_path),
        unclassified_incident=unclassified_incident,
        node_count=node_count,
        edge_count=edge_count,
    )
