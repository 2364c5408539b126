"""Command-line driver: analyze, stats, render, export, bench.

Analysis results are cached on disk keyed by the input file digest plus the
shattering configuration, so render/export runs never recompute an
analysis they already have.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import shutil
import statistics
import sys
import time
from pathlib import Path

import numpy as np

from .classifier import CHAIN_MODES, STRICT_PATH, VOCABULARY
from .condenser import (Condensation, condensation_from_tsv, write_inter_edges_tsv,
                        write_structures_tsv)
from .exporter import DEFAULT_MEMBER_LIMIT, export_bundle
from .graph_io import Graph, GraphFormatError, bfs_sample, induced_subgraph, load_edge_list
from .layout import LINEAR_SCALE, LOG_SCALE, build_cells, plan_layout, rasterize_cells
from .renderer import FORMATS, PPM, ColorRamp, write_image
from .shatter import ShatterConfig, shatter

CACHE_ENV = "STRUCTMATRIX_CACHE_DIR"


def cache_root() -> Path:
    override = os.environ.get(CACHE_ENV)
    if override:
        return Path(override)
    return Path.home() / ".cache" / "structmatrix"


def config_from_args(args) -> ShatterConfig:
    return ShatterConfig(
        hub_fraction=args.hub_fraction,
        min_structure_size=args.min_size,
        epsilon=args.epsilon,
        chain_mode=args.chain_mode,
        worker_count=args.workers,
    )


def config_echo(config: ShatterConfig) -> dict:
    return {
        "hub_fraction": str(config.hub_fraction),
        "epsilon": str(config.epsilon),
        "min_structure_size": config.min_structure_size,
        "chain_mode": config.chain_mode,
    }


def analysis_cache_dir(graph_path: Path, config: ShatterConfig) -> Path:
    digest = hashlib.sha256()
    with open(graph_path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    digest.update(json.dumps(config_echo(config), sort_keys=True).encode())
    return cache_root() / digest.hexdigest()[:24]


def run_analysis(graph_path: Path, config: ShatterConfig, use_cache: bool = True):
    """Load + shatter, or reuse the cached TSVs.

    Returns ``(condensation, meta, cache_hit)``; on a cache hit the
    condensation is rebuilt from the TSVs (no node assignment).
    """
    cache_dir = analysis_cache_dir(graph_path, config)
    meta_path = cache_dir / "meta.json"
    if use_cache and meta_path.exists():
        meta = json.loads(meta_path.read_text())
        cond = condensation_from_tsv(
            cache_dir / "structures.tsv", cache_dir / "inter.tsv",
            node_count=meta["nodes"], edge_count=meta["edges"],
            unclassified_count=meta["unclassified_nodes"],
            unclassified_incident=meta["unclassified_incident_edges"])
        return cond, meta, True
    t0 = time.perf_counter()
    g = load_edge_list(graph_path)
    load_s = time.perf_counter() - t0
    t1 = time.perf_counter()
    cond = shatter(g, config)
    shatter_s = time.perf_counter() - t1
    meta = {
        "graph": graph_path.name,
        "nodes": g.node_count,
        "edges": g.edge_count,
        "self_loops_dropped": g.self_loops_dropped,
        "structures": len(cond.instances),
        "type_counts": {t.value: c for t, c in cond.type_counts().items()},
        "unclassified_nodes": int(len(cond.unclassified_nodes)),
        "unclassified_incident_edges": cond.unclassified_incident,
        "config": config_echo(config),
        "load_seconds": round(load_s, 3),
        "shatter_seconds": round(shatter_s, 3),
    }
    if use_cache:
        tmp = cache_dir.with_suffix(".tmp")
        if tmp.exists():
            shutil.rmtree(tmp)
        tmp.mkdir(parents=True)
        write_structures_tsv(cond, tmp / "structures.tsv", g=g)
        write_inter_edges_tsv(cond, tmp / "inter.tsv")
        (tmp / "meta.json").write_text(json.dumps(meta, indent=1) + "\n")
        if cache_dir.exists():
            shutil.rmtree(cache_dir)
        tmp.rename(cache_dir)
    cond.source_graph = g  # type: ignore[attr-defined]
    return cond, meta, False


def summary_line(meta: dict) -> str:
    counts = meta["type_counts"]
    per_type = " ".join(f"{t.value}={counts.get(t.value, 0)}" for t in VOCABULARY)
    return (f"{meta['graph']}: {meta['structures']} structures ({per_type}) "
            f"unclassified={meta['unclassified_nodes']} "
            f"in {meta.get('shatter_seconds', 0.0):.2f}s")


def cmd_analyze(args) -> int:
    graph_path = Path(args.graph)
    config = config_from_args(args)
    cond, meta, hit = run_analysis(graph_path, config, use_cache=not args.no_cache)
    prefix = Path(args.out_prefix) if args.out_prefix else Path(graph_path.stem)
    structures_path = prefix.with_name(prefix.name + ".structures.tsv")
    inter_path = prefix.with_name(prefix.name + ".inter.tsv")
    g = getattr(cond, "source_graph", None)
    write_structures_tsv(cond, structures_path, g=g)
    write_inter_edges_tsv(cond, inter_path)
    meta = dict(meta, structures_tsv=str(structures_path), inter_tsv=str(inter_path),
                cache_hit=hit)
    if args.json:
        print(json.dumps(meta, indent=1))
    else:
        print(summary_line(meta))
        print(f"wrote {structures_path} and {inter_path}")
    return 0


def stats_table(counts: dict[str, int]) -> str:
    total = sum(counts.values())
    header = "type   count      share"
    lines = [header, "-" * len(header)]
    for t in VOCABULARY:
        c = counts.get(t.value, 0)
        pct = (100.0 * c / total) if total else 0.0
        lines.append(f"{t.value:<5} {c:>7}   {pct:7.1f}%")
    lines.append(f"total {total:>7}")
    return "\n".join(lines)


def cmd_stats(args) -> int:
    from .condenser import read_structures_tsv
    records = read_structures_tsv(args.structures)
    counts: dict[str, int] = {}
    for rec in records:
        counts[rec["type"].value] = counts.get(rec["type"].value, 0) + 1
    if args.json:
        total = sum(counts.values())
        shares = {t.value: counts.get(t.value, 0) for t in VOCABULARY}
        print(json.dumps({"counts": shares, "total": total}))
    else:
        print(stats_table(counts))
    return 0


def parse_canvas(text: str) -> tuple[int, int]:
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"canvas must look like 1000x1000, got {text!r}") from exc


def cmd_render(args) -> int:
    graph_path = Path(args.graph)
    config = config_from_args(args)
    cond, meta, _ = run_analysis(graph_path, config, use_cache=not args.no_cache)
    w, h = args.canvas
    cells = build_cells(cond)
    plan = plan_layout(cond, w, h, min_segment_px=args.min_segment_px, cells=cells)
    grid = rasterize_cells(cells, plan, scale=args.scale)
    out = Path(args.output) if args.output else graph_path.with_suffix(f".{args.format}")
    write_image(grid, ColorRamp(), plan, out, format=args.format)
    info = {"image": str(out), "canvas": [w, h], "scale": args.scale,
            "cells": int(len(cells)), "touched_pixels": int((grid != -1.0).sum())}
    if args.json:
        print(json.dumps(info))
    else:
        print(f"wrote {out} ({w}x{h}, {info['touched_pixels']} data pixels)")
    return 0


def cmd_export(args) -> int:
    graph_path = Path(args.graph)
    config = config_from_args(args)
    cond, meta, _ = run_analysis(graph_path, config, use_cache=not args.no_cache)
    w, h = args.canvas
    plan = plan_layout(cond, w, h, min_segment_px=args.min_segment_px)
    out = Path(args.output) if args.output else graph_path.with_suffix(".bundle.json")
    g = getattr(cond, "source_graph", None)
    bundle = export_bundle(cond, plan, out, g=g, graph_name=meta.get("graph", graph_path.name),
                           config=meta.get("config", {}), member_limit=args.member_limit)
    info = {"bundle": str(out), "instances": len(bundle["instances"]),
            "cells": len(bundle["cells"])}
    if args.json:
        print(json.dumps(info))
    else:
        print(f"wrote {out} ({info['instances']} instances, {info['cells']} cells)")
    return 0


def cmd_bench(args) -> int:
    graph_path = Path(args.graph)
    config = config_from_args(args)
    g = load_edge_list(graph_path)
    degrees = g.degrees
    seed = args.seed_node if args.seed_node is not None else int(np.argmax(degrees))
    targets = [int(t) for t in args.targets.split(",")]
    rows = []
    for target in targets:
        subset = bfs_sample(g, seed, target)
        sub = induced_subgraph(g, subset)
        times = []
        for _ in range(args.reps):
            t0 = time.perf_counter()
            shatter(sub, config)
            times.append(time.perf_counter() - t0)
        rows.append((sub.edge_count, sub.node_count, statistics.median(times)))
    log_e = np.log([r[0] for r in rows])
    log_t = np.log([max(r[2], 1e-9) for r in rows])
    exponent = float(np.polyfit(log_e, log_t, 1)[0]) if len(rows) > 1 else float("nan")
    verdict = "PASS" if exponent <= args.max_exponent else "FAIL"
    if args.json:
        print(json.dumps({
            "rows": [{"edges": e, "nodes": n, "seconds": round(s, 4)} for e, n, s in rows],
            "exponent": round(exponent, 4), "max_exponent": args.max_exponent,
            "verdict": verdict}))
    else:
        print(f"{'edges':>10} {'nodes':>10} {'seconds':>10}")
        for e, n, s in rows:
            print(f"{e:>10} {n:>10} {s:>10.3f}")
        print(f"fitted log-log exponent: {exponent:.3f} (max {args.max_exponent}) -> {verdict}")
    return 0


def add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--hub-fraction", default="0.01",
                   help="fraction of top-degree nodes removed per round (default 0.01)")
    p.add_argument("--epsilon", default="0.2",
                   help="near-structure slack: at least (1-eps) of the full edges (default 0.2)")
    p.add_argument("--min-size", type=int, default=5,
                   help="minimum structure size in nodes (default 5)")
    p.add_argument("--chain-mode", choices=CHAIN_MODES, default=STRICT_PATH)
    p.add_argument("--workers", type=int, default=None,
                   help="shatter worker threads (default: hardware parallelism)")
    p.add_argument("--no-cache", action="store_true", help="bypass the analysis cache")
    p.add_argument("--json", action="store_true", help="machine-readable summary")


def add_canvas_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--canvas", type=parse_canvas, default=(1000, 1000),
                   help="canvas size as WxH (default 1000x1000)")
    p.add_argument("--min-segment-px", type=int, default=4,
                   help="pixel floor for non-empty segments (default 4)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="structmatrix",
        description="Shatter a graph into structures and render the structure matrix")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="run the shattering pipeline, write TSVs")
    p.add_argument("graph", help="edge-list file")
    p.add_argument("--out-prefix", help="output prefix (default: graph stem)")
    add_config_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("stats", help="per-type counts and shares of a structures TSV")
    p.add_argument("structures", help="structures TSV from analyze")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("render", help="rasterize the structure matrix to an image")
    p.add_argument("graph", help="edge-list file")
    p.add_argument("--scale", choices=(LOG_SCALE, LINEAR_SCALE), default=LOG_SCALE)
    p.add_argument("--format", choices=FORMATS, default=PPM)
    p.add_argument("--output", help="image path (default: alongside the graph)")
    add_canvas_flags(p)
    add_config_flags(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("export", help="write the viewer JSON bundle")
    p.add_argument("graph", help="edge-list file")
    p.add_argument("--output", help="bundle path (default: alongside the graph)")
    p.add_argument("--member-limit", type=int, default=DEFAULT_MEMBER_LIMIT,
                   help="omit member lists above this size (default 100)")
    add_canvas_flags(p)
    add_config_flags(p)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("bench", help="BFS-sampled scaling benchmark")
    p.add_argument("graph", help="edge-list file")
    p.add_argument("--targets", default="50000,100000,250000,500000,1000000",
                   help="comma-separated induced edge targets")
    p.add_argument("--reps", type=int, default=3, help="repetitions per target (median)")
    p.add_argument("--seed-node", type=int, default=None,
                   help="BFS seed (default: highest-degree node)")
    p.add_argument("--max-exponent", type=float, default=1.3)
    add_config_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
