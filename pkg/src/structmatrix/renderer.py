"""Color ramp and image file emission for rasterized grids.

PPM (binary P6) is the byte-deterministic baseline format; PNG is written
through Pillow when available.  Segment separator guides are drawn only
over background pixels so no data pixel is ever hidden.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .layout import BACKGROUND, LayoutPlan

PPM = "ppm"
PNG = "png"
FORMATS = (PPM, PNG)

DEFAULT_ANCHORS = ((0.0, (0, 0, 255)), (1.0, (255, 0, 0)))


@dataclass(frozen=True)
class ColorRamp:
    """Piecewise-linear color scale from cool blue to hot red."""
    anchors: tuple[tuple[float, tuple[int, int, int]], ...] = DEFAULT_ANCHORS
    background: tuple[int, int, int] = (255, 255, 255)
    separator: tuple[int, int, int] = (210, 210, 210)

    def __post_init__(self):
        ratios = [r for r, _ in self.anchors]
        if ratios != sorted(ratios) or ratios[0] != 0.0 or ratios[-1] != 1.0:
            raise ValueError("ramp anchors must be sorted and cover 0.0 and 1.0")


def ramp_color(v: float, ramp: ColorRamp = ColorRamp()) -> tuple[int, int, int]:
    """Interpolate the ramp at ratio ``v`` in [0, 1]."""
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"color ratio must be in [0, 1], got {v}")
    anchors = ramp.anchors
    for (r0, c0), (r1, c1) in zip(anchors, anchors[1:]):
        if v <= r1:
            if r1 == r0:
                return c1
            t = (v - r0) / (r1 - r0)
            return tuple(int(a + (b - a) * t + 0.5) for a, b in zip(c0, c1))
    return anchors[-1][1]


def _ramp_image(grid: np.ndarray, ramp: ColorRamp, plan: LayoutPlan | None) -> np.ndarray:
    """RGB uint8 image: background, separator guides, then data pixels."""
    h, w = grid.shape
    img = np.empty((h, w, 3), dtype=np.uint8)
    img[:, :] = ramp.background
    if plan is not None:
        for x in plan.segment_boundaries_x()[1:]:
            if 0 <= x < w:
                img[:, x] = ramp.separator
        for y in plan.segment_boundaries_y()[1:]:
            if 0 <= y < h:
                img[y, :] = ramp.separator
    mask = grid != BACKGROUND
    if mask.any():
        values = grid[mask]
        # vectorized piecewise-linear interpolation over the anchors
        ratios = np.array([r for r, _ in ramp.anchors])
        channels = np.array([c for _, c in ramp.anchors], dtype=np.float64)
        idx = np.clip(np.searchsorted(ratios, values, side="right") - 1, 0, len(ratios) - 2)
        r0, r1 = ratios[idx], ratios[idx + 1]
        spread = np.where(r1 > r0, r1 - r0, 1.0)
        t = np.clip((values - r0) / spread, 0.0, 1.0)
        rgb = channels[idx] + (channels[idx + 1] - channels[idx]) * t[:, None]
        img[mask] = (rgb + 0.5).astype(np.uint8)
    return img


def write_image(grid: np.ndarray, ramp: ColorRamp, plan: LayoutPlan | None,
                path, format: str = PPM) -> None:
    """Write the grid as a PPM or PNG file.

    PPM output is byte-deterministic: header ``P6\\n<w> <h>\\n255\\n``
    followed by row-major RGB bytes.
    """
    if format not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}")
    if plan is not None and grid.shape != (plan.canvas_h, plan.canvas_w):
        raise ValueError(
            f"grid {grid.shape} does not match plan canvas "
            f"({plan.canvas_h}, {plan.canvas_w})")
    img = _ramp_image(grid, ramp, plan)
    if format == PPM:
        h, w = grid.shape
        with open(path, "wb") as fh:
            fh.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
            fh.write(img.tobytes())
    else:
        try:
            from PIL import Image
        except ImportError as exc:  # pragma: no cover - Pillow is an extra
            raise RuntimeError("PNG output needs Pillow (pip install structmatrix[png])") from exc
        Image.fromarray(img, mode="RGB").save(path, format="PNG")


def read_ppm(path) -> np.ndarray:
    """Load a binary P6 file back into an (h, w, 3) uint8 array."""
    with open(path, "rb") as fh:
        data = fh.read()
    if not data.startswith(b"P6"):
        raise ValueError(f"{path}: not a P6 PPM file")
    parts = data.split(b"\n", 3)
    w, h = (int(tok) for tok in parts[1].split())
    maxval = int(parts[2])
    if maxval != 255:
        raise ValueError(f"{path}: unsupported maxval {maxval}")
    pixels = np.frombuffer(parts[3], dtype=np.uint8, count=w * h * 3)
    return pixels.reshape(h, w, 3)


def data_pixel_count(img: np.ndarray, ramp: ColorRamp = ColorRamp()) -> int:
    """Pixels that are neither background nor separator guide."""
    bg = np.all(img == np.array(ramp.background, dtype=np.uint8), axis=-1)
    sep = np.all(img == np.array(ramp.separator, dtype=np.uint8), axis=-1)
    return int((~bg & ~sep).sum())
