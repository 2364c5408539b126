import numpy as np
import pytest

from structmatrix.classifier import StructureType
from structmatrix.layout import (BACKGROUND, build_cells, plan_layout,
                                 rasterize_cells, touched_pixel_count)
from structmatrix.renderer import (ColorRamp, data_pixel_count, ramp_color,
                                   read_ppm, write_image)

from test_layout import make_condensation


def test_ramp_anchors():
    ramp = ColorRamp()
    assert ramp_color(0.0, ramp) == (0, 0, 255)
    assert ramp_color(1.0, ramp) == (255, 0, 0)


def test_ramp_midpoint():
    assert ramp_color(0.5, ColorRamp()) == (128, 0, 128)


def test_ramp_multi_anchor():
    ramp = ColorRamp(anchors=((0.0, (0, 0, 255)), (0.5, (0, 255, 0)), (1.0, (255, 0, 0))))
    assert ramp_color(0.25, ramp) == (0, 128, 128)
    assert ramp_color(0.5, ramp) == (0, 255, 0)


def test_ramp_rejects_bad_anchors():
    with pytest.raises(ValueError):
        ColorRamp(anchors=((0.2, (0, 0, 0)), (1.0, (255, 255, 255))))
    with pytest.raises(ValueError):
        ramp_color(1.5, ColorRamp())


def test_ppm_header_and_background(tmp_path):
    grid = np.full((2, 2), BACKGROUND)
    path = tmp_path / "bg.ppm"
    write_image(grid, ColorRamp(), None, path)
    data = path.read_bytes()
    assert data.startswith(b"P6\n2 2\n255\n")
    img = read_ppm(path)
    assert np.all(img == np.array(ColorRamp().background, dtype=np.uint8))


def test_single_hot_cell(tmp_path):
    grid = np.full((3, 3), BACKGROUND)
    grid[1, 2] = 1.0
    path = tmp_path / "hot.ppm"
    write_image(grid, ColorRamp(), None, path)
    img = read_ppm(path)
    assert tuple(img[1, 2]) == (255, 0, 0)
    assert data_pixel_count(img) == 1


def test_ppm_is_byte_deterministic(tmp_path):
    cond = make_condensation(
        [(StructureType.ST, 10), (StructureType.FC, 20), (StructureType.CH, 7)],
        {(0, 1): 3, (1, 2): 1})
    cells = build_cells(cond)
    plan = plan_layout(cond, 64, 64, cells=cells)
    grid = rasterize_cells(cells, plan)
    p1, p2 = tmp_path / "a.ppm", tmp_path / "b.ppm"
    write_image(grid, ColorRamp(), plan, p1)
    write_image(grid, ColorRamp(), plan, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_data_pixels_match_touched_count(tmp_path):
    cond = make_condensation(
        [(StructureType.FS, 30), (StructureType.ST, 15), (StructureType.NB, 9)],
        {(0, 1): 5, (0, 2): 2, (1, 2): 1})
    cells = build_cells(cond)
    plan = plan_layout(cond, 48, 48, cells=cells)
    grid = rasterize_cells(cells, plan)
    path = tmp_path / "g.ppm"
    write_image(grid, ColorRamp(), plan, path)
    img = read_ppm(path)
    assert data_pixel_count(img) == touched_pixel_count(grid)


def test_separators_only_over_background(tmp_path):
    cond = make_condensation(
        [(StructureType.ST, 10), (StructureType.FC, 10)], {(0, 1): 1})
    cells = build_cells(cond)
    plan = plan_layout(cond, 20, 20, cells=cells)
    grid = rasterize_cells(cells, plan)
    path = tmp_path / "sep.ppm"
    ramp = ColorRamp()
    write_image(grid, ramp, plan, path)
    img = read_ppm(path)
    sep = np.array(ramp.separator, dtype=np.uint8)
    boundary = plan.px_x[StructureType.FC][0]
    col = img[:, boundary]
    # the separator line exists but never covers a data pixel
    assert np.any(np.all(col == sep, axis=-1))
    data_rows = grid[:, boundary] != BACKGROUND
    for y in np.flatnonzero(data_rows):
        assert not np.array_equal(img[y, boundary], sep)


def test_grid_plan_mismatch_rejected(tmp_path):
    cond = make_condensation([(StructureType.ST, 5)], {})
    plan = plan_layout(cond, 10, 10)
    with pytest.raises(ValueError):
        write_image(np.full((5, 5), BACKGROUND), ColorRamp(), plan, tmp_path / "x.ppm")


def test_png_output(tmp_path):
    pytest.importorskip("PIL")
    grid = np.full((4, 4), BACKGROUND)
    grid[0, 0] = 0.0
    path = tmp_path / "img.png"
    write_image(grid, ColorRamp(), None, path, format="png")
    from PIL import Image
    img = np.asarray(Image.open(path))
    assert tuple(img[0, 0, :3]) == (0, 0, 255)
