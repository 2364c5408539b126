"""Shared fixtures: graph builders, synthetic corpus, dataset discovery."""
from __future__ import annotations

import os
from pathlib import Path

import numpy as np
import pytest

from structmatrix.graph_io import Graph, build_graph, write_edge_list

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = Path(os.environ.get("STRUCTMATRIX_DATA_DIR", REPO_ROOT / "data"))

#: filled by acceptance tests, printed in the terminal summary
ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


def graph_from_edges(edges, n: int | None = None) -> Graph:
    """Build a Graph straight from (u, v) pairs (symmetrized, deduped)."""
    if edges:
        u = np.array([e[0] for e in edges], dtype=np.int64)
        v = np.array([e[1] for e in edges], dtype=np.int64)
    else:
        u = v = np.empty(0, dtype=np.int64)
    nn = int(n if n is not None else (max(u.max(), v.max()) + 1 if len(u) else 0))
    return build_graph(nn, u, v, [str(i) for i in range(nn)])


def powerlaw_graph(n: int, target_edges: int, seed: int, zipf_a: float = 1.6) -> Graph:
    """Synthetic power-law (Chung-Lu style) graph with a heavy degree-1
    fringe, shaped like the social graphs the pipeline targets."""
    rng = np.random.default_rng(seed)
    w = rng.zipf(zipf_a, n).astype(np.float64)
    w = np.minimum(w, n / 8)
    p = w / w.sum()
    m = int(target_edges * 1.3)
    return build_graph(n, rng.choice(n, size=m, p=p), rng.choice(n, size=m, p=p),
                       [str(i) for i in range(n)])


def strip_graph(width: int, length: int, overlay: int, seed: int) -> Graph:
    """Strip lattice with a power-law overlay: linear BFS ball growth (the
    shape the scaling benchmark needs) plus hubs for the shatterer."""
    rng = np.random.default_rng(seed)
    n = width * length
    node = np.arange(n, dtype=np.int64)
    col = node // width
    right = node[col < length - 1]
    down = node[node % width < width - 1]
    u = np.concatenate([right, down])
    v = np.concatenate([right + width, down + 1])
    w = np.minimum(rng.zipf(1.6, n).astype(np.float64), 2000.0)
    ou = rng.choice(n, size=overlay, p=w / w.sum())
    shift = rng.integers(-3 * width, 3 * width + 1, size=overlay)
    ov = np.clip(ou + shift, 0, n - 1)
    return build_graph(n, np.concatenate([u, ou]), np.concatenate([v, ov]),
                       [str(i) for i in range(n)])


def dataset_path(name: str) -> Path | None:
    """Locate a downloaded corpus dataset; None when absent."""
    p = DATA_DIR / name
    return p if p.exists() else None


def require_dataset(name: str) -> Path:
    p = dataset_path(name)
    if p is None:
        pytest.skip(
            f"dataset {name} not downloaded; run scripts/download_datasets.sh "
            f"(network access to snap.stanford.edu required) and re-run")
    return p


@pytest.fixture(scope="session")
def wiki_like_graph() -> Graph:
    """Wiki-Vote-scale synthetic stand-in (7k nodes, ~80k edges)."""
    return powerlaw_graph(7115, 103_000, seed=11)


@pytest.fixture(scope="session")
def wiki_like_path(wiki_like_graph, tmp_path_factory) -> Path:
    path = tmp_path_factory.mktemp("corpus") / "wiki-like.txt"
    write_edge_list(wiki_like_graph, path)
    return path


@pytest.fixture(scope="session")
def bench_graph_path(tmp_path_factory) -> Path:
    """Largest benchmark input: a real corpus graph when downloaded,
    otherwise a ~1.3M-edge synthetic lattice-plus-hubs graph."""
    for name in ("dblp.txt", "roadNet-CA.txt", "web-NotreDame.txt"):
        p = dataset_path(name)
        if p is not None:
            return p
    path = tmp_path_factory.mktemp("bench") / "strip-large.txt"
    g = strip_graph(400, 1320, 220_000, seed=23)
    write_edge_list(g, path)
    return path


def record_acceptance(name: str, status) -> None:
    if isinstance(status, bool):
        status = "PASS" if status else "FAIL"
    ACCEPTANCE_RESULTS.append((name, status))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{status}: {name}")
