import numpy as np
import pytest

from structmatrix.classifier import TYPE_RANK, StructureType
from structmatrix.condenser import (Condensation, StructureInstance,
                                    compute_inter_edges, condensation_from_tsv,
                                    condense, order_segments,
                                    write_inter_edges_tsv, write_structures_tsv)
from structmatrix.shatter import shatter

from conftest import graph_from_edges, powerlaw_graph
from oracles import tally_edges_by_assignment


def klique(n, offset=0):
    return [(i + offset, j + offset) for i in range(n) for j in range(i + 1, n)]


def two_triangles_bridge():
    return graph_from_edges(klique(3) + klique(3, offset=3) + [(2, 3)])


def hand_instances(g, member_sets, types):
    raw = []
    for members, stype in zip(member_sets, types):
        members = np.asarray(sorted(members), dtype=np.int64)
        sub = set(members.tolist())
        internal = sum(1 for u in sub for v in g.neighbors(u) if v in sub and u < v)
        raw.append(StructureInstance(stype, members, internal_edges=internal))
    assigned = set().union(*(set(m) for m in member_sets)) if member_sets else set()
    unclassified = [u for u in range(g.node_count) if u not in assigned]
    return condense(g, raw, unclassified)


def test_inter_edges_bridge():
    g = two_triangles_bridge()
    cond = hand_instances(g, [{0, 1, 2}, {3, 4, 5}], [StructureType.FC, StructureType.FC])
    assert cond.inter_edges == {(0, 1): 1}
    assert cond.d(0, 1) == 1
    assert cond.d(1, 0) == 1
    assert cond.unclassified_incident == 0


def test_inter_edges_empty_when_no_crossings():
    g = graph_from_edges(klique(3) + klique(3, offset=3))
    cond = hand_instances(g, [{0, 1, 2}, {3, 4, 5}], [StructureType.FC, StructureType.FC])
    assert cond.inter_edges == {}


def test_inter_edges_match_brute_force_tally():
    g = powerlaw_graph(800, 10_000, seed=31)
    rng = np.random.default_rng(5)
    assignment = rng.integers(-1, 40, size=g.node_count)
    tally = compute_inter_edges(g, assignment)
    edges = [(u, v) for u, v in g.edges()]
    mapping = {u: int(a) for u, a in enumerate(assignment) if a != -1}
    inter, internal, uncls = tally_edges_by_assignment(edges, mapping)
    assert tally.inter == inter
    assert tally.unclassified_incident == uncls
    for sid, count in internal.items():
        assert tally.internal_by_structure[sid] == count


def test_condense_rejects_wrong_internal_count():
    g = two_triangles_bridge()
    raw = [StructureInstance(StructureType.FC, np.array([0, 1, 2]), internal_edges=2),
           StructureInstance(StructureType.FC, np.array([3, 4, 5]), internal_edges=3)]
    with pytest.raises(ValueError, match="internal edges"):
        condense(g, raw, [])


def test_condense_rejects_overlap():
    g = two_triangles_bridge()
    raw = [StructureInstance(StructureType.FC, np.array([0, 1, 2]), internal_edges=3),
           StructureInstance(StructureType.FC, np.array([2, 3, 4]), internal_edges=1)]
    with pytest.raises(ValueError):
        condense(g, raw, [5])


def test_condense_rejects_incomplete_cover():
    g = two_triangles_bridge()
    raw = [StructureInstance(StructureType.FC, np.array([0, 1, 2]), internal_edges=3)]
    with pytest.raises(ValueError, match="conservation"):
        condense(g, raw, [3, 4])


def test_edge_conservation_identity_on_shattered_graphs():
    for seed in (41, 42, 43):
        g = powerlaw_graph(1500, 9_000, seed=seed)
        cond = shatter(g)
        assert (cond.internal_edge_total + cond.inter_edge_total
                + cond.unclassified_incident) == g.edge_count


def test_order_segments_by_external_degree():
    # three stars chained hub-to-hub with different cross weights
    g = graph_from_edges(
        [(0, i) for i in range(3, 8)]          # star A, hub 0
        + [(1, i) for i in range(8, 13)]       # star B, hub 1
        + [(2, i) for i in range(13, 18)]      # star C, hub 2
        + [(0, 1), (1, 2), (0, 2)]             # triangle of hubs
        + [(3, 8), (4, 9)]                     # extra A-B crossings
    )
    cond = hand_instances(
        g,
        [{0, 3, 4, 5, 6, 7}, {1, 8, 9, 10, 11, 12}, {2, 13, 14, 15, 16, 17}],
        [StructureType.ST, StructureType.ST, StructureType.ST])
    ext = [inst.total_external_degree for inst in cond.instances]
    assert ext == [4, 4, 2]  # A: 2 hub edges + 2 satellite edges, B same, C: 2
    positions = order_segments(cond)
    # ties between A and B break by id; C has the smallest degree -> last
    assert positions.tolist() == [0, 1, 2]


def test_order_segments_descending_degree():
    g = graph_from_edges(
        [(0, i) for i in range(3, 8)] + [(1, i) for i in range(8, 13)]
        + [(2, i) for i in range(13, 18)]
        + [(3, 8), (4, 9), (5, 10), (13, 9)])
    cond = hand_instances(
        g,
        [{0, 3, 4, 5, 6, 7}, {1, 8, 9, 10, 11, 12}, {2, 13, 14, 15, 16, 17}],
        [StructureType.ST, StructureType.ST, StructureType.ST])
    assert [i.total_external_degree for i in cond.instances] == [3, 4, 1]
    positions = order_segments(cond)
    # largest external degree first inside the segment
    assert positions.tolist() == [1, 0, 2]


def test_order_segments_groups_types_contiguously():
    g = graph_from_edges(klique(4) + [(i + 4, i + 5) for i in range(5)]
                         + [(0, 4)])
    cond = hand_instances(g, [{0, 1, 2, 3}, {4, 5, 6, 7, 8, 9}],
                          [StructureType.FC, StructureType.CH])
    positions = order_segments(cond)
    # vocabulary order: ch before fc
    types_by_position = [None, None]
    for inst in cond.instances:
        types_by_position[positions[inst.id]] = inst.stype
    assert types_by_position == [StructureType.CH, StructureType.FC]
    assert sorted(positions.tolist()) == [0, 1]


def test_order_segments_is_permutation():
    g = powerlaw_graph(2000, 14_000, seed=47)
    cond = shatter(g)
    positions = order_segments(cond)
    assert sorted(positions.tolist()) == list(range(len(cond.instances)))
    ranks = [TYPE_RANK[inst.stype] for inst in
             sorted(cond.instances, key=lambda i: positions[i.id])]
    assert ranks == sorted(ranks)  # segments contiguous in vocabulary order


def test_tsv_round_trip(tmp_path):
    g = powerlaw_graph(1200, 8_000, seed=53)
    cond = shatter(g)
    spath, ipath = tmp_path / "s.tsv", tmp_path / "i.tsv"
    write_structures_tsv(cond, spath, g=g)
    write_inter_edges_tsv(cond, ipath)
    loaded = condensation_from_tsv(spath, ipath, node_count=g.node_count,
                                   edge_count=g.edge_count)
    assert len(loaded.instances) == len(cond.instances)
    for a, b in zip(cond.instances, loaded.instances):
        assert a.id == b.id
        assert a.stype is b.stype
        assert a.n_nodes == b.n_nodes
        assert a.internal_edges == b.internal_edges
        assert a.total_external_degree == b.total_external_degree
        assert [g.external_ids[u] for u in a.members] == b.member_labels
    assert loaded.inter_edges == cond.inter_edges
