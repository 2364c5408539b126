/** Blue-to-red ramp and RGB image assembly, matching the core renderer. */

export type Rgb = [number, number, number];

export interface Ramp {
  anchors: [number, Rgb][];
  background: Rgb;
}

export const DEFAULT_RAMP: Ramp = {
  anchors: [[0.0, [0, 0, 255]], [1.0, [255, 0, 0]]],
  background: [255, 255, 255],
};

/** Grid sentinel for pixels no cell touched. */
export const BACKGROUND = -1.0;

/** Piecewise-linear ramp lookup; rounding matches the core (half-up). */
export function rampColor(v: number, ramp: Ramp = DEFAULT_RAMP): Rgb {
  if (v < 0 || v > 1) throw new RangeError(`color ratio must be in [0, 1], got ${v}`);
  const anchors = ramp.anchors;
  for (let k = 0; k + 1 < anchors.length; k += 1) {
    const [r0, c0] = anchors[k];
    const [r1, c1] = anchors[k + 1];
    if (v <= r1) {
      if (r1 === r0) return c1;
      const t = (v - r0) / (r1 - r0);
      return [
        Math.floor(c0[0] + (c1[0] - c0[0]) * t + 0.5),
        Math.floor(c0[1] + (c1[1] - c0[1]) * t + 0.5),
        Math.floor(c0[2] + (c1[2] - c0[2]) * t + 0.5),
      ];
    }
  }
  return anchors[anchors.length - 1][1];
}

/** Row-major RGB bytes of a color-value grid (background filled in). */
export function imageBytes(
  grid: Float64Array, width: number, height: number, ramp: Ramp = DEFAULT_RAMP,
): Uint8Array {
  const out = new Uint8Array(width * height * 3);
  const [br, bg, bb] = ramp.background;
  for (let i = 0; i < width * height; i += 1) {
    const v = grid[i];
    if (v === BACKGROUND) {
      out[3 * i] = br;
      out[3 * i + 1] = bg;
      out[3 * i + 2] = bb;
    } else {
      const [r, g, b] = rampColor(v, ramp);
      out[3 * i] = r;
      out[3 * i + 1] = g;
      out[3 * i + 2] = b;
    }
  }
  return out;
}
