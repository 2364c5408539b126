#!/usr/bin/env python3
"""Generate the golden fixtures the viewer's test suite compares against.

Everything the browser viewer recomputes (segment allocation, pixel
projection, color encoding, the full-window raster) is dumped here from the
core pipeline, so the two implementations can be diffed byte for byte.

Run from the repository root:  python3 scripts/gen_frontend_fixtures.py
Deterministic; the outputs under frontend/test/fixtures/ are committed.
"""
from __future__ import annotations

import base64
import json
import math
import random
import sys
from pathlib import Path

import numpy as np

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "tests"))

from structmatrix.condenser import condense, StructureInstance, order_segments
from structmatrix.classifier import StructureType
from structmatrix.exporter import build_bundle
from structmatrix.graph_io import load_edge_list
from structmatrix.layout import allocate_segments, build_cells, plan_layout, project, rasterize_cells
from structmatrix.renderer import ColorRamp, _ramp_image
from structmatrix.shatter import ShatterConfig, shatter

from conftest import dataset_path, graph_from_edges, powerlaw_graph, strip_graph

FIXTURES = REPO / "frontend" / "test" / "fixtures"


def projection_vectors() -> list[dict]:
    rng = random.Random(606)
    vectors = []
    for x_min, x_max, res, offset in [
        (0, 99, 50, 100), (0, 0, 10, 0), (5, 5, 1, -3), (0, 9, 1, 42),
        (0, 999_999, 4096, 0), (-500, 500, 7, 1000),
    ]:
        for x in {x_min, x_max, (x_min + x_max) // 2}:
            vectors.append({"x": x, "xMin": x_min, "xMax": x_max, "res": res,
                            "offset": offset,
                            "pixel": project(x, x_min, x_max, res, offset)})
    for _ in range(400):
        x_min = rng.randint(-10**6, 10**6)
        span = rng.randint(0, 10**6)
        x_max = x_min + span
        res = rng.randint(1, 4096)
        offset = rng.randint(-1000, 10**6)
        x = rng.randint(x_min, x_max)
        vectors.append({"x": x, "xMin": x_min, "xMax": x_max, "res": res,
                        "offset": offset,
                        "pixel": project(x, x_min, x_max, res, offset)})
    return vectors


def allocation_vectors() -> list[dict]:
    rng = random.Random(77)
    cases = [
        {"counts": [90, 10], "canvas": 100, "minPx": 1},
        {"counts": [999, 1], "canvas": 100, "minPx": 5},
        {"counts": [0, 7, 0], "canvas": 64, "minPx": 1},
        {"counts": [1, 1, 1], "canvas": 100, "minPx": 1},
        {"counts": [3, 0, 2, 0, 1, 1, 900], "canvas": 256, "minPx": 4},
    ]
    for _ in range(120):
        counts = [rng.randint(0, 500) for _ in range(7)]
        if not any(counts):
            counts[rng.randrange(7)] = rng.randint(1, 500)
        active = sum(1 for c in counts if c)
        min_px = rng.randint(1, 5)
        canvas = rng.randint(active * min_px, 2048)
        cases.append({"counts": counts, "canvas": canvas, "minPx": min_px})
    for case in cases:
        case["extents"] = allocate_segments(case["counts"], case["canvas"], case["minPx"])
    return cases


def check_quantization_margin(grid, vmin, vmax):
    """Golden dumps must sit clear of byte-rounding knife edges so an
    independent reimplementation (different libm) cannot flip a byte."""
    values = np.unique(grid[grid != -1.0])
    for v in values:
        for channel in (255.0 * v, 255.0 * (1.0 - v)):
            q = channel + 0.5
            if abs(q - round(q)) < 1e-9:
                raise SystemExit(f"quantization knife edge at color {v}; "
                                 "adjust the fixture canvas or graph")


def dump_case(name, g, config, canvas, min_px, member_limit=100, cond=None):
    if cond is None:
        cond = shatter(g, config)
    cells = build_cells(cond)
    plan = plan_layout(cond, canvas, canvas, min_segment_px=min_px, cells=cells)
    grid = rasterize_cells(cells, plan)
    check_quantization_margin(grid, *plan.color_domain)
    img = _ramp_image(grid, ColorRamp(), None)  # raw data pixels, no guides
    bundle = build_bundle(cond, plan, g=g, graph_name=name,
                          config={"minSize": config.min_structure_size},
                          member_limit=member_limit)
    case = {
        "name": name,
        "canvas": canvas,
        "minSegmentPx": min_px,
        "scale": "log",
        "bundle": bundle,
        "interEdgesById": sorted([i, j, d] for (i, j), d in cond.inter_edges.items()),
        "dump": {
            "width": canvas,
            "height": canvas,
            "rgbBase64": base64.b64encode(img.tobytes()).decode("ascii"),
        },
    }
    (FIXTURES / f"{name}.json").write_text(json.dumps(case) + "\n")
    print(f"{name}: {len(bundle['instances'])} instances, {len(bundle['cells'])} cells, "
          f"canvas {canvas}")


def bridge_case():
    """Two cliques joined by one edge, condensed by hand: the minimal
    bundle with a single D=1 cell."""
    edges = ([(i, j) for i in range(3) for j in range(i + 1, 3)]
             + [(i + 3, j + 3) for i in range(3) for j in range(i + 1, 3)]
             + [(2, 3)])
    g = graph_from_edges(edges)
    raw = [StructureInstance(StructureType.FC, np.array([0, 1, 2]), internal_edges=3),
           StructureInstance(StructureType.FC, np.array([3, 4, 5]), internal_edges=3)]
    return g, condense(g, raw, [])


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    (FIXTURES / "projection_golden.json").write_text(
        json.dumps(projection_vectors()) + "\n")
    (FIXTURES / "allocation_golden.json").write_text(
        json.dumps(allocation_vectors()) + "\n")
    print("projection + allocation goldens written")

    g, cond = bridge_case()
    dump_case("bridge", g, ShatterConfig(min_structure_size=2),
              canvas=16, min_px=2, cond=cond)
    dump_case("social", powerlaw_graph(600, 4000, seed=71), ShatterConfig(),
              canvas=48, min_px=2)
    dump_case("roadish", strip_graph(16, 60, 700, seed=19),
              ShatterConfig(min_structure_size=4), canvas=40, min_px=2)

    wiki = dataset_path("wiki-Vote.txt")
    if wiki is not None:
        g = load_edge_list(wiki)
        dump_case("wiki-vote", g, ShatterConfig(), canvas=1000, min_px=4,
                  member_limit=0)
    else:
        print("wiki-Vote.txt not downloaded; skipping the wiki-vote fixture "
              "(run scripts/download_datasets.sh first)")


if __name__ == "__main__":
    main()
