/** Pixel projection, segment allocation, and color encoding.
 *
 * These mirror the core pipeline exactly: all position/allocation math is
 * integer-exact (guarded floor division, no float rounding), so pixels
 * computed here are identical to the core renderer's.
 */

/** Exact floor(n / d) for non-negative safe integers. */
function floorDiv(n: number, d: number): number {
  let q = Math.floor(n / d);
  if (q * d > n) q -= 1;
  else if ((q + 1) * d <= n) q += 1;
  return q;
}

/**
 * Map a matrix position into its region's pixel range
 * `offset + 1 .. offset + res` (integer ceiling arithmetic, boundaries
 * pinned to the first and last pixel).
 */
export function projectPosition(
  x: number, xMin: number, xMax: number, res: number, offset: number,
): number {
  if (res < 1) throw new RangeError(`resolution must be >= 1, got ${res}`);
  if (x < xMin || x > xMax) {
    throw new RangeError(`position ${x} outside [${xMin}, ${xMax}]`);
  }
  if (xMin === xMax) return offset + 1;
  const a = (res - 1) * (x - xMin);
  const b = xMax - xMin;
  return offset + floorDiv(2 * a + 3 * b - 1, 2 * b);
}

export class LayoutRangeError extends Error {}

/**
 * Pixel extent per segment: proportional to count, floored at `minPx`,
 * summing exactly to `canvas`.  Zero-count segments get zero.  Identical
 * integer algorithm to the core planner (iterative floor fixing, then
 * largest-remainder rounding with ties by list position).
 */
export function allocateSegments(counts: number[], canvas: number, minPx: number): number[] {
  const active: number[] = [];
  counts.forEach((c, i) => { if (c > 0) active.push(i); });
  const result = counts.map(() => 0);
  if (active.length === 0) return result;
  const floorPx = Math.max(minPx, 1);
  if (canvas < active.length * floorPx) {
    throw new LayoutRangeError(
      `canvas too small: ${canvas}px cannot fit ${active.length} segments at ${floorPx}px minimum`);
  }
  const fixed = new Map<number, number>();
  for (;;) {
    let remCanvas = canvas;
    for (const px of fixed.values()) remCanvas -= px;
    const free = active.filter((i) => !fixed.has(i));
    if (free.length === 0) break;
    let remCount = 0;
    for (const i of free) remCount += counts[i];
    const need = free.filter((i) => counts[i] * remCanvas < floorPx * remCount);
    if (need.length === 0) break;
    for (const i of need) fixed.set(i, floorPx);
  }
  for (const [i, px] of fixed) result[i] = px;
  let remCanvas = canvas;
  for (const px of fixed.values()) remCanvas -= px;
  const free = active.filter((i) => !fixed.has(i));
  if (free.length > 0) {
    let remCount = 0;
    for (const i of free) remCount += counts[i];
    const bases = new Map<number, number>();
    const remainders = new Map<number, number>();
    let used = 0;
    for (const i of free) {
      const base = floorDiv(counts[i] * remCanvas, remCount);
      bases.set(i, base);
      remainders.set(i, counts[i] * remCanvas - base * remCount);
      used += base;
    }
    const leftover = remCanvas - used;
    const order = [...free].sort((a, b) => {
      const diff = (remainders.get(b) ?? 0) - (remainders.get(a) ?? 0);
      return diff !== 0 ? diff : a - b;
    });
    for (let k = 0; k < leftover; k += 1) {
      bases.set(order[k], (bases.get(order[k]) ?? 0) + 1);
    }
    for (const [i, px] of bases) result[i] = px;
  }
  return result;
}

/**
 * Color ratio in [0, 1] for a combined node count; log scale by default,
 * degenerate domains map to 1.0.
 */
export function colorValue(
  sizeSum: number, vMin: number, vMax: number, scale: "log" | "linear" = "log",
): number {
  if (vMin === vMax) return 1.0;
  let v: number;
  if (scale === "log") {
    v = (Math.log(sizeSum) - Math.log(vMin)) / (Math.log(vMax) - Math.log(vMin));
  } else {
    v = (sizeSum - vMin) / (vMax - vMin);
  }
  return Math.min(1.0, Math.max(0.0, v));
}
