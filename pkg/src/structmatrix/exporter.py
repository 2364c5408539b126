"""JSON bundle serialization for the interactive viewer.

The bundle is a single self-contained document: segment table, instance
table in matrix order, and the half matrix of cells (row < col).  The
viewer mirrors the cells and re-projects client-side.
"""
from __future__ import annotations

import json

import numpy as np

from .condenser import Condensation, order_segments
from .graph_io import Graph
from .layout import LayoutPlan

#: Instances larger than this ship without their member list.
DEFAULT_MEMBER_LIMIT = 100


def build_bundle(cond: Condensation, plan: LayoutPlan, g: Graph | None = None,
                 graph_name: str = "", config: dict | None = None,
                 member_limit: int = DEFAULT_MEMBER_LIMIT) -> dict:
    """Assemble the bundle document (see export_bundle for the schema)."""
    positions = order_segments(cond)
    by_position = sorted(cond.instances, key=lambda inst: positions[inst.id])
    segments = [
        {"type": t.value, "count": plan.counts[t], "offset": plan.matrix_offset[t]}
        for t in plan.types
    ]
    instances = []
    for inst in by_position:
        rec = {
            "id": inst.id,
            "type": inst.stype.value,
            "n": inst.n_nodes,
            "ext": inst.total_external_degree,
        }
        if inst.n_nodes <= member_limit:
            if inst.members is not None:
                if g is not None:
                    rec["members"] = [g.external_ids[u] for u in inst.members]
                else:
                    rec["members"] = [str(int(u)) for u in inst.members]
            elif inst.member_labels:
                rec["members"] = list(inst.member_labels)
        instances.append(rec)
    cells = []
    for (i, j), d in cond.inter_edges.items():
        row = int(positions[i])
        col = int(positions[j])
        if row > col:
            row, col = col, row
        size_sum = cond.instances[i].n_nodes + cond.instances[j].n_nodes
        cells.append([row, col, int(d), int(size_sum)])
    cells.sort()
    return {
        "meta": {
            "graph": graph_name,
            "nodes": cond.node_count,
            "edges": cond.edge_count,
            "structures": len(cond.instances),
            "unclassified_nodes": int(len(cond.unclassified_nodes)),
            "unclassified_incident_edges": cond.unclassified_incident,
            "config": config or {},
        },
        "segments": segments,
        "instances": instances,
        "cells": cells,
        "color_domain": [plan.color_domain[0], plan.color_domain[1]],
    }


def export_bundle(cond: Condensation, plan: LayoutPlan, path,
                  g: Graph | None = None, graph_name: str = "",
                  config: dict | None = None,
                  member_limit: int = DEFAULT_MEMBER_LIMIT) -> dict:
    """Write the viewer bundle as one JSON document.

    Schema (stable field names)::

        {"meta": {...},
         "segments": [{"type": str, "count": int, "offset": int}, ...],
         "instances": [{"id": int, "type": str, "n": int, "ext": int,
                        "members": [label, ...]?}, ...],   # matrix order
         "cells": [[row, col, d, size_sum], ...],          # row < col
         "color_domain": [min, max]}

    ``row``/``col`` are matrix positions, i.e. indexes into ``instances``.
    Key order is fixed, all numbers are integers.
    """
    bundle = build_bundle(cond, plan, g=g, graph_name=graph_name,
                          config=config, member_limit=member_limit)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(bundle, fh, separators=(",", ":"))
        fh.write("\n")
    return bundle
