/** Window layout and rendering: the client-side re-projection.
 *
 * A view is a matrix-coordinate window plus a canvas size.  The visible
 * part of every segment is allocated pixels with the same integer
 * algorithm the core uses, each cell is projected with the same ceiling
 * formula, and pixel collisions resolve to the largest combined node
 * count.  A full-window render is therefore pixel-identical to the core
 * renderer's raster.
 */

import { allocateSegments, colorValue, projectPosition } from "./projection.js";
import { BACKGROUND } from "./ramp.js";
import type { Cell, MatrixWindow, Model, ScaleMode } from "./types.js";

/** Visible slice of one segment on one axis. */
export interface AxisSegment {
  type: string;
  /** first/last visible matrix position (inclusive) */
  first: number;
  last: number;
  /** first pixel of the slice and its pixel extent */
  pxBase: number;
  pxLen: number;
}

export interface ViewLayout {
  window: MatrixWindow;
  width: number;
  height: number;
  rows: AxisSegment[];
  cols: AxisSegment[];
}

export interface PixelGrid {
  grid: Float64Array;
  sizes: Float64Array;
  width: number;
  height: number;
}

/** Painted extent of one cell (inclusive pixel rect), for block rendering. */
export interface CellBlock {
  cell: Cell;
  x0: number;
  x1: number;
  y0: number;
  y1: number;
  color: number;
}

function visibleSegments(model: Model, lo: number, hi: number,
                         canvas: number, minPx: number): AxisSegment[] {
  const slices: { type: string; first: number; last: number }[] = [];
  const counts: number[] = [];
  for (const seg of model.segments) {
    const first = Math.max(seg.offset, lo);
    const last = Math.min(seg.offset + seg.count - 1, hi);
    if (first <= last) {
      slices.push({ type: seg.type, first, last });
      counts.push(last - first + 1);
    }
  }
  const extents = allocateSegments(counts, canvas, minPx);
  const out: AxisSegment[] = [];
  let base = 0;
  slices.forEach((s, i) => {
    out.push({ ...s, pxBase: base, pxLen: extents[i] });
    base += extents[i];
  });
  return out;
}

export function fullWindow(model: Model): MatrixWindow {
  return { row0: 0, row1: model.matrixSize - 1, col0: 0, col1: model.matrixSize - 1 };
}

export function clampWindow(model: Model, win: MatrixWindow): MatrixWindow {
  const hi = model.matrixSize - 1;
  const clamp = (x: number) => Math.max(0, Math.min(hi, Math.round(x)));
  const row0 = clamp(Math.min(win.row0, win.row1));
  const row1 = clamp(Math.max(win.row0, win.row1));
  const col0 = clamp(Math.min(win.col0, win.col1));
  const col1 = clamp(Math.max(win.col0, win.col1));
  return { row0, row1, col0, col1 };
}

export function planView(model: Model, win: MatrixWindow,
                         width: number, height: number, minPx = 1): ViewLayout {
  return {
    window: win,
    width,
    height,
    rows: visibleSegments(model, win.row0, win.row1, height, minPx),
    cols: visibleSegments(model, win.col0, win.col1, width, minPx),
  };
}

function findSegment(segments: AxisSegment[], pos: number): AxisSegment | null {
  let lo = 0;
  let hi = segments.length - 1;
  while (lo <= hi) {
    const mid = (lo + hi) >> 1;
    const seg = segments[mid];
    if (pos < seg.first) hi = mid - 1;
    else if (pos > seg.last) lo = mid + 1;
    else return seg;
  }
  return null;
}

function projectInto(seg: AxisSegment, pos: number): number {
  return projectPosition(pos, seg.first, seg.last, seg.pxLen, seg.pxBase - 1);
}

/**
 * Point-semantics raster over the window: one pixel per cell, collisions
 * keep the largest sizeSum.  This is the grid compared against the core.
 */
export function renderView(model: Model, layout: ViewLayout,
                           scale: ScaleMode = "log"): PixelGrid {
  const { width, height } = layout;
  const grid = new Float64Array(width * height).fill(BACKGROUND);
  const sizes = new Float64Array(width * height);
  const [vMin, vMax] = model.colorDomain;
  const win = layout.window;
  for (const cell of model.cells) {
    if (cell.row < win.row0 || cell.row > win.row1
        || cell.col < win.col0 || cell.col > win.col1) continue;
    const rs = findSegment(layout.rows, cell.row);
    const cs = findSegment(layout.cols, cell.col);
    if (!rs || !cs) continue;
    const py = projectInto(rs, cell.row);
    const px = projectInto(cs, cell.col);
    const at = py * width + px;
    if (cell.sizeSum > sizes[at]) {
      sizes[at] = cell.sizeSum;
      grid[at] = colorValue(cell.sizeSum, vMin, vMax, scale);
    }
  }
  return { grid, sizes, width, height };
}

function blockSpan(seg: AxisSegment, pos: number): [number, number] {
  const start = projectInto(seg, pos);
  if (pos >= seg.last) {
    return [start, seg.pxBase + seg.pxLen - 1];
  }
  return [start, Math.max(start, projectInto(seg, pos + 1) - 1)];
}

/**
 * Block-semantics cell extents for canvas painting: each cell owns the
 * pixel span up to the next matrix position, so zoomed-in cells become
 * visible rectangles.  Returned in ascending sizeSum order (painting in
 * order keeps hotter cells on top).
 */
export function cellBlocks(model: Model, layout: ViewLayout,
                           scale: ScaleMode = "log"): CellBlock[] {
  const [vMin, vMax] = model.colorDomain;
  const win = layout.window;
  const blocks: CellBlock[] = [];
  for (const cell of model.cells) {
    if (cell.row < win.row0 || cell.row > win.row1
        || cell.col < win.col0 || cell.col > win.col1) continue;
    const rs = findSegment(layout.rows, cell.row);
    const cs = findSegment(layout.cols, cell.col);
    if (!rs || !cs) continue;
    const [y0, y1] = blockSpan(rs, cell.row);
    const [x0, x1] = blockSpan(cs, cell.col);
    blocks.push({ cell, x0, x1, y0, y1, color: colorValue(cell.sizeSum, vMin, vMax, scale) });
  }
  blocks.sort((a, b) => a.cell.sizeSum - b.cell.sizeSum
    || a.cell.row - b.cell.row || a.cell.col - b.cell.col);
  return blocks;
}

/** All cells whose point projection lands on a pixel, largest first. */
export function inspectPixel(model: Model, layout: ViewLayout,
                             px: number, py: number): Cell[] {
  const win = layout.window;
  const hits: Cell[] = [];
  for (const cell of model.cells) {
    if (cell.row < win.row0 || cell.row > win.row1
        || cell.col < win.col0 || cell.col > win.col1) continue;
    const rs = findSegment(layout.rows, cell.row);
    const cs = findSegment(layout.cols, cell.col);
    if (!rs || !cs) continue;
    if (projectInto(rs, cell.row) === py && projectInto(cs, cell.col) === px) {
      hits.push(cell);
    }
  }
  hits.sort((a, b) => b.sizeSum - a.sizeSum || a.row - b.row || a.col - b.col);
  return hits;
}

/**
 * Snap a pixel rectangle back to matrix coordinates: the smallest window
 * containing every matrix position whose pixel falls inside the rect.
 * Returns null when the rect covers no positions.
 */
export function pixelRectToWindow(layout: ViewLayout,
                                  x0: number, y0: number,
                                  x1: number, y1: number): MatrixWindow | null {
  const [xa, xb] = x0 <= x1 ? [x0, x1] : [x1, x0];
  const [ya, yb] = y0 <= y1 ? [y0, y1] : [y1, y0];
  const colRange = axisRange(layout.cols, xa, xb);
  const rowRange = axisRange(layout.rows, ya, yb);
  if (!colRange || !rowRange) return null;
  return { row0: rowRange[0], row1: rowRange[1], col0: colRange[0], col1: colRange[1] };
}

function axisRange(segments: AxisSegment[], pxLo: number, pxHi: number): [number, number] | null {
  let lo: number | null = null;
  let hi: number | null = null;
  for (const seg of segments) {
    if (seg.pxBase > pxHi || seg.pxBase + seg.pxLen - 1 < pxLo) continue;
    // binary search the first/last position projecting inside the rect
    const first = searchPosition(seg, pxLo, true);
    const last = searchPosition(seg, pxHi, false);
    if (first === null || last === null || first > last) continue;
    lo = lo === null ? first : Math.min(lo, first);
    hi = hi === null ? last : Math.max(hi, last);
  }
  return lo === null || hi === null ? null : [lo, hi];
}

function searchPosition(seg: AxisSegment, px: number, lower: boolean): number | null {
  let lo = seg.first;
  let hi = seg.last;
  let found: number | null = null;
  while (lo <= hi) {
    const mid = (lo + hi) >> 1;
    const p = projectInto(seg, mid);
    if (lower ? p >= px : p <= px) {
      found = mid;
      if (lower) hi = mid - 1;
      else lo = mid + 1;
    } else if (lower) {
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  return found;
}
