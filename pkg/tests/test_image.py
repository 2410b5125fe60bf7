import numpy as np
import pytest
from PIL import Image as PILImage

from dirfilt import (
    BorderPolicy,
    ColorVector,
    FormatError,
    REFLECT,
    REPLICATE,
    RasterImage,
    WindowView,
    extract_window,
    read_image,
    write_image,
)
from dirfilt.image import resolve_coordinate


def grid_image(rows, cols):
    """Pixel (r, c) encodes its own 1-based coordinates: (r, c, r*10+c)."""
    arr = np.zeros((rows, cols, 3))
    for r in range(rows):
        for c in range(cols):
            arr[r, c] = (r + 1, c + 1, (r + 1) * 10 + (c + 1))
    return RasterImage(arr)


class TestRasterImage:
    def test_shape_and_accessors(self):
        img = grid_image(3, 4)
        assert img.rows == 3 and img.cols == 4
        assert img.pixel(2, 3) == ColorVector(2, 3, 23)

    def test_pixel_count_must_match(self):
        with pytest.raises(ValueError):
            RasterImage.from_rows(2, 2, [ColorVector(0, 0, 0)] * 3)

    def test_rejects_bad_shapes_and_values(self):
        with pytest.raises(ValueError):
            RasterImage(np.zeros((4, 4)))
        with pytest.raises(ValueError):
            RasterImage(np.full((2, 2, 3), -1.0))
        with pytest.raises(ValueError):
            RasterImage(np.full((2, 2, 3), np.nan))

    def test_immutable(self):
        img = grid_image(2, 2)
        with pytest.raises(ValueError):
            img.pixels[0, 0, 0] = 5.0

    def test_out_of_range_coordinates(self):
        img = grid_image(3, 3)
        for r, c in ((0, 1), (1, 0), (4, 1), (1, 4)):
            with pytest.raises(ValueError):
                img.pixel(r, c)


class TestWindowView:
    def test_center_index(self):
        w = WindowView(tuple(ColorVector(i, i, i) for i in range(9)))
        assert w.n == 9
        assert w.d == 5
        assert w.center == ColorVector(4, 4, 4)

    def test_rejects_non_square_counts(self):
        for n in (0, 2, 4, 8, 16):
            with pytest.raises(ValueError):
                WindowView(tuple(ColorVector(0, 0, 0) for _ in range(n)))


class TestExtractWindow:
    def test_single_pixel_replicate(self):
        v = ColorVector(9, 8, 7)
        img = RasterImage.from_rows(1, 1, [v])
        w = extract_window(img, 1, 1, 3, REPLICATE)
        assert w.vectors == (v,) * 9

    def test_interior_row_major_order(self):
        img = grid_image(3, 3)
        w = extract_window(img, 2, 2)
        want = [img.pixel(r, c) for r in (1, 2, 3) for c in (1, 2, 3)]
        assert list(w.vectors) == want
        assert w.center == img.pixel(2, 2)

    def test_corner_replicate_clamps(self):
        # Window rows/cols for center (1,1) touch 0-based coordinates -1..1,
        # which clamp to 0..1; enumerate the expected members by hand.
        img = grid_image(3, 3)
        w = extract_window(img, 1, 1, 3, REPLICATE)
        coords = []
        for dr in (-1, 0, 1):
            for dc in (-1, 0, 1):
                coords.append((max(0, dr) + 1, max(0, dc) + 1))
        assert list(w.vectors) == [img.pixel(r, c) for r, c in coords]

    def test_interior_policy_independent(self):
        img = grid_image(5, 5)
        for r in (2, 3, 4):
            for c in (2, 3, 4):
                a = extract_window(img, r, c, 3, REPLICATE)
                b = extract_window(img, r, c, 3, REFLECT)
                assert a.vectors == b.vectors

    def test_reflect_differs_from_replicate_for_wide_window(self):
        img = grid_image(4, 4)
        a = extract_window(img, 1, 1, 5, REPLICATE)
        b = extract_window(img, 1, 1, 5, REFLECT)
        assert a.vectors != b.vectors
        # reflect (edge-inclusive): offset -2 from index 0 mirrors to 1
        assert b.vectors[0] == img.pixel(2, 2)

    def test_full_window_everywhere(self):
        img = grid_image(4, 5)
        for policy in (REPLICATE, REFLECT):
            for r in range(1, 5):
                for c in range(1, 6):
                    assert extract_window(img, r, c, 3, policy).n == 9

    def test_argument_errors(self):
        img = grid_image(3, 3)
        with pytest.raises(ValueError):
            extract_window(img, 0, 1)
        with pytest.raises(ValueError):
            extract_window(img, 1, 4)
        with pytest.raises(ValueError):
            extract_window(img, 1, 1, 4)
        with pytest.raises(ValueError):
            extract_window(img, 1, 1, -3)
        with pytest.raises(ValueError):
            BorderPolicy("wrap")

    def test_resolve_coordinate_matches_numpy_pad(self):
        # the engine pads with numpy; window extraction must agree with it
        arr = np.arange(5, dtype=np.float64)
        for mode, policy in (("edge", REPLICATE), ("symmetric", REFLECT)):
            padded = np.pad(arr, 3, mode=mode)
            for i in range(-3, 8):
                assert padded[i + 3] == arr[resolve_coordinate(i, 5, policy)]


class TestPpmIO:
    def test_header_example(self, tmp_path):
        p = tmp_path / "tiny.ppm"
        p.write_bytes(b"P6 2 1 255\n" + bytes([255, 0, 0, 0, 255, 0]))
        img = read_image(p)
        assert (img.rows, img.cols) == (1, 2)
        assert img.pixel(1, 1) == ColorVector(255, 0, 0)
        assert img.pixel(1, 2) == ColorVector(0, 255, 0)

    def test_comment_in_header(self, tmp_path):
        p = tmp_path / "c.ppm"
        p.write_bytes(b"P6\n# made by hand\n1 1\n255\n\x01\x02\x03")
        assert read_image(p).pixel(1, 1) == ColorVector(1, 2, 3)

    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(0)
        img = RasterImage(rng.integers(0, 256, (7, 5, 3)).astype(np.float64))
        p = tmp_path / "rt.ppm"
        write_image(img, p)
        assert read_image(p) == img

    def test_malformed(self, tmp_path):
        cases = {
            "magic.ppm": b"P5 1 1 255\n\x00",
            "trunc.ppm": b"P6 2 2 255\n\x00\x00\x00",
            "depth.ppm": b"P6 1 1 65535\n\x00\x00\x00\x00\x00\x00",
            "garbage.ppm": b"hello world",
            "badnum.ppm": b"P6 x 1 255\n\x00\x00\x00",
        }
        for name, payload in cases.items():
            p = tmp_path / name
            p.write_bytes(payload)
            with pytest.raises(FormatError):
                read_image(p)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FormatError):
            read_image(tmp_path / "nope.ppm")


class TestPngIO:
    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(1)
        img = RasterImage(rng.integers(0, 256, (6, 9, 3)).astype(np.float64))
        p = tmp_path / "rt.png"
        write_image(img, p)
        assert read_image(p) == img

    def test_png_and_ppm_agree(self, tmp_path):
        # encode the same pixels with a reference encoder (Pillow) and by
        # hand-writing the PPM; both decodes must be identical
        rng = np.random.default_rng(2)
        data = rng.integers(0, 256, (4, 3, 3)).astype(np.uint8)
        png_path = tmp_path / "ref.png"
        PILImage.fromarray(data, "RGB").save(png_path)
        ppm_path = tmp_path / "ref.ppm"
        ppm_path.write_bytes(f"P6\n3 4\n255\n".encode() + data.tobytes())
        assert read_image(png_path) == read_image(ppm_path)

    def test_alpha_rejected(self, tmp_path):
        p = tmp_path / "rgba.png"
        PILImage.new("RGBA", (2, 2), (1, 2, 3, 4)).save(p)
        with pytest.raises(FormatError, match="alpha|RGB"):
            read_image(p)

    def test_grayscale_rejected(self, tmp_path):
        p = tmp_path / "gray.png"
        PILImage.new("L", (2, 2), 7).save(p)
        with pytest.raises(FormatError):
            read_image(p)

    def test_decoded_by_reference_tool(self, tmp_path):
        rng = np.random.default_rng(3)
        img = RasterImage(rng.integers(0, 256, (5, 5, 3)).astype(np.float64))
        p = tmp_path / "out.png"
        write_image(img, p)
        with PILImage.open(p) as im:
            assert np.array_equal(np.asarray(im), img.pixels.astype(np.uint8))


class TestQuantization:
    def test_round_half_away_and_clamp(self, tmp_path):
        img = RasterImage(np.array([[[254.6, 0.0, 0.5], [255.9, 2.5, 300.0]]]))
        p = tmp_path / "q.ppm"
        write_image(img, p)
        back = read_image(p)
        assert back.pixel(1, 1) == ColorVector(255, 0, 1)
        assert back.pixel(1, 2) == ColorVector(255, 3, 255)

    def test_integer_images_lossless(self, tmp_path):
        rng = np.random.default_rng(4)
        img = RasterImage(rng.integers(0, 256, (3, 3, 3)).astype(np.float64))
        for fmt in ("ppm", "png"):
            p = tmp_path / f"l.{fmt}"
            write_image(img, p, fmt)
            diff = np.abs(read_image(p).pixels - img.pixels)
            assert diff.max() == 0.0

    def test_bad_format_and_unwritable(self, tmp_path):
        img = grid_image(1, 1)
        with pytest.raises(ValueError):
            write_image(img, tmp_path / "x.bmp")
        with pytest.raises(OSError):
            write_image(img, tmp_path / "no" / "dir" / "x.ppm")
