"""Matrix-to-pixel projection, color encoding, and cell rasterization.

Pixel arithmetic is exact: the projection is an integer ceiling formula and
segment allocation uses integer largest-remainder rounding, so any other
implementation of the same rules (e.g. the browser viewer) lands on
identical pixels.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classifier import VOCABULARY, StructureType
from .condenser import Condensation, order_segments

#: Grid value for pixels no cell touched; distinct from color 0.0.
BACKGROUND = -1.0

LOG_SCALE = "log"
LINEAR_SCALE = "linear"
SCALES = (LOG_SCALE, LINEAR_SCALE)


class LayoutError(ValueError):
    """Canvas cannot accommodate the requested layout."""


@dataclass
class Cells:
    """Sparse matrix cells, one entry per ordered pair with D > 0.

    Both orientations of every structure pair are present, so the cell set
    is symmetric by construction.
    """
    rows: np.ndarray
    cols: np.ndarray
    d: np.ndarray
    size_sum: np.ndarray

    def __len__(self) -> int:
        return len(self.rows)


@dataclass
class LayoutPlan:
    """Everything the rasterizer needs: segment extents in matrix
    coordinates, per-region pixel offsets/resolutions, color domain."""
    canvas_w: int
    canvas_h: int
    min_segment_px: int
    types: list[StructureType]               # non-empty types, vocabulary order
    counts: dict[StructureType, int]
    matrix_offset: dict[StructureType, int]  # first matrix position of the segment
    px_x: dict[StructureType, tuple[int, int]]  # type -> (first pixel column, width)
    px_y: dict[StructureType, tuple[int, int]]  # type -> (first pixel row, height)
    region_offsets: dict[tuple[StructureType, StructureType], tuple[int, int]]
    region_resolutions: dict[tuple[StructureType, StructureType], tuple[int, int]]
    color_domain: tuple[int, int]

    def segment_boundaries_x(self) -> list[int]:
        """First pixel column of every non-empty segment, in order."""
        return [self.px_x[t][0] for t in self.types]

    def segment_boundaries_y(self) -> list[int]:
        return [self.px_y[t][0] for t in self.types]


def allocate_segments(counts: list[int], canvas: int, min_px: int) -> list[int]:
    """Pixel extent per segment: proportional to count, floored at
    ``min_px``, summing exactly to ``canvas``.  Empty segments get zero.

    Integer arithmetic throughout (floors are fixed iteratively, the rest
    is distributed by largest remainder, ties by list position).
    """
    active = [i for i, c in enumerate(counts) if c > 0]
    result = [0] * len(counts)
    if not active:
        return result
    min_px = max(min_px, 1)
    if canvas < len(active) * min_px:
        raise LayoutError(
            f"canvas too small: {canvas}px cannot fit {len(active)} segments "
            f"at {min_px}px minimum")
    fixed: dict[int, int] = {}
    while True:
        rem_canvas = canvas - sum(fixed.values())
        free = [i for i in active if i not in fixed]
        if not free:
            break
        rem_count = sum(counts[i] for i in free)
        need = [i for i in free if counts[i] * rem_canvas < min_px * rem_count]
        if not need:
            break
        for i in need:
            fixed[i] = min_px
    for i, px in fixed.items():
        result[i] = px
    rem_canvas = canvas - sum(fixed.values())
    free = [i for i in active if i not in fixed]
    if free:
        rem_count = sum(counts[i] for i in free)
        bases = {i: (counts[i] * rem_canvas) // rem_count for i in free}
        remainders = {i: (counts[i] * rem_canvas) % rem_count for i in free}
        leftover = rem_canvas - sum(bases.values())
        for i in sorted(free, key=lambda i: (-remainders[i], i))[:leftover]:
            bases[i] += 1
        for i, px in bases.items():
            result[i] = px
    return result


def build_cells(cond: Condensation, positions: np.ndarray | None = None) -> Cells:
    """Matrix cells of a condensation: one symmetric pair per structure
    pair with D > 0, carrying the combined node count for coloring."""
    if positions is None:
        positions = order_segments(cond)
    n_nodes = np.array([inst.n_nodes for inst in cond.instances], dtype=np.int64)
    if not cond.inter_edges:
        empty = np.empty(0, dtype=np.int64)
        return Cells(empty, empty, empty.copy(), empty.copy())
    pairs = np.array(sorted(cond.inter_edges), dtype=np.int64)
    d = np.array([cond.inter_edges[(int(i), int(j))] for i, j in pairs], dtype=np.int64)
    ri = positions[pairs[:, 0]]
    rj = positions[pairs[:, 1]]
    ss = n_nodes[pairs[:, 0]] + n_nodes[pairs[:, 1]]
    return Cells(
        rows=np.concatenate([ri, rj]),
        cols=np.concatenate([rj, ri]),
        d=np.concatenate([d, d]),
        size_sum=np.concatenate([ss, ss]),
    )


def plan_layout(cond: Condensation, canvas_w: int, canvas_h: int,
                min_segment_px: int = 1, cells: Cells | None = None) -> LayoutPlan:
    """Partition the canvas into per-type segments and derive every
    subregion's pixel offset and resolution.

    Segment pixel extents are proportional to instance counts with a
    ``min_segment_px`` floor; the color domain spans the observed
    ``size_sum`` range of the cells.
    """
    counts_all = cond.type_counts()
    counts_list = [counts_all[t] for t in VOCABULARY]
    extents_x = allocate_segments(counts_list, canvas_w, min_segment_px)
    extents_y = allocate_segments(counts_list, canvas_h, min_segment_px)
    types = [t for t in VOCABULARY if counts_all[t] > 0]
    matrix_offset: dict[StructureType, int] = {}
    px_x: dict[StructureType, tuple[int, int]] = {}
    px_y: dict[StructureType, tuple[int, int]] = {}
    mat = bx = by = 0
    for t, ex, ey in zip(VOCABULARY, extents_x, extents_y):
        if counts_all[t] == 0:
            continue
        matrix_offset[t] = mat
        px_x[t] = (bx, ex)
        px_y[t] = (by, ey)
        mat += counts_all[t]
        bx += ex
        by += ey
    region_offsets = {}
    region_resolutions = {}
    for tr in types:
        for tc in types:
            # Eq-style offsets: the projection emits offset+1 .. offset+res
            region_offsets[(tr, tc)] = (px_y[tr][0] - 1, px_x[tc][0] - 1)
            region_resolutions[(tr, tc)] = (px_y[tr][1], px_x[tc][1])
    if cells is None:
        cells = build_cells(cond)
    if len(cells):
        color_domain = (int(cells.size_sum.min()), int(cells.size_sum.max()))
    else:
        color_domain = (0, 0)
    return LayoutPlan(
        canvas_w=canvas_w, canvas_h=canvas_h, min_segment_px=min_segment_px,
        types=types, counts={t: counts_all[t] for t in types},
        matrix_offset=matrix_offset, px_x=px_x, px_y=px_y,
        region_offsets=region_offsets, region_resolutions=region_resolutions,
        color_domain=color_domain,
    )


def project(x: int, x_min: int, x_max: int, res: int, region_offset: int) -> int:
    """Map a matrix position into its region's pixel range.

    Exact integer ceiling arithmetic; the result covers
    ``region_offset + 1 .. region_offset + res`` with the boundaries pinned
    to the first and last pixel.
    """
    if res < 1:
        raise ValueError(f"resolution must be >= 1, got {res}")
    if not x_min <= x <= x_max:
        raise ValueError(f"position {x} outside [{x_min}, {x_max}]")
    if x_min == x_max:
        return region_offset + 1
    a = (res - 1) * (x - x_min)
    b = x_max - x_min
    return region_offset + (2 * a + 3 * b - 1) // (2 * b)


def _project_array(x: np.ndarray, x_min: np.ndarray, span: np.ndarray,
                   res: np.ndarray, offset: np.ndarray) -> np.ndarray:
    """Vectorized ``project`` (span = x_max - x_min, may be zero)."""
    a = (res - 1) * (x - x_min)
    b = np.maximum(span, 1)
    pix = offset + (2 * a + 3 * b - 1) // (2 * b)
    return np.where(span == 0, offset + 1, pix)


def color_value(size_sum, v_min: int, v_max: int, scale: str = LOG_SCALE):
    """Color ratio in [0, 1] for a combined node count.

    Log scale by default (ratio of log offsets inside the domain); linear
    mode keeps the same anchors without the log.  A degenerate domain maps
    to 1.0.  Works on scalars and arrays alike.
    """
    if scale not in SCALES:
        raise ValueError(f"scale must be one of {SCALES}")
    if v_min == v_max:
        return np.float64(1.0) if np.isscalar(size_sum) else np.full(np.shape(size_sum), 1.0)
    s = np.asarray(size_sum, dtype=np.float64)
    if scale == LOG_SCALE:
        v = (np.log(s) - np.log(v_min)) / (np.log(v_max) - np.log(v_min))
    else:
        v = (s - v_min) / (v_max - v_min)
    v = np.clip(v, 0.0, 1.0)
    return np.float64(v) if np.isscalar(size_sum) else v


def rasterize_cells(cells: Cells, plan: LayoutPlan, scale: str = LOG_SCALE) -> np.ndarray:
    """Paint every cell into the canvas grid of color values.

    Colliding cells resolve to the one with the largest ``size_sum``
    (hotter over cooler), which is order-independent.  Untouched pixels
    hold the ``BACKGROUND`` sentinel.
    """
    grid = np.full((plan.canvas_h, plan.canvas_w), BACKGROUND, dtype=np.float64)
    if not len(cells):
        return grid
    seg_mat = np.array([plan.matrix_offset[t] for t in plan.types], dtype=np.int64)
    seg_cnt = np.array([plan.counts[t] for t in plan.types], dtype=np.int64)
    x_off = np.array([plan.px_x[t][0] for t in plan.types], dtype=np.int64) - 1
    x_res = np.array([plan.px_x[t][1] for t in plan.types], dtype=np.int64)
    y_off = np.array([plan.px_y[t][0] for t in plan.types], dtype=np.int64) - 1
    y_res = np.array([plan.px_y[t][1] for t in plan.types], dtype=np.int64)

    col_seg = np.searchsorted(seg_mat, cells.cols, side="right") - 1
    row_seg = np.searchsorted(seg_mat, cells.rows, side="right") - 1
    span_x = seg_cnt[col_seg] - 1
    span_y = seg_cnt[row_seg] - 1
    px = _project_array(cells.cols, seg_mat[col_seg], span_x, x_res[col_seg], x_off[col_seg])
    py = _project_array(cells.rows, seg_mat[row_seg], span_y, y_res[row_seg], y_off[row_seg])

    # keep, per pixel, the largest size_sum (stable under any cell order)
    flat = py * np.int64(plan.canvas_w) + px
    order = np.lexsort((cells.size_sum, flat))
    flat_sorted = flat[order]
    last = np.r_[flat_sorted[1:] != flat_sorted[:-1], True]
    winners = order[last]
    vmin, vmax = plan.color_domain
    grid.flat[flat[winners]] = color_value(cells.size_sum[winners], vmin, vmax, scale)
    return grid


def touched_pixel_count(grid: np.ndarray) -> int:
    """Number of pixels holding a cell color (non-background)."""
    return int((grid != BACKGROUND).sum())
