"""Image representation, window extraction, and PPM/PNG raster I/O.

Pixels are stored as float64 internally: the filters only ever emit vectors
that already exist in the input window, but metrics and calibration need real
arithmetic. Images loaded from 8-bit files hold exact integer values.

Public (r, c) coordinates are 1-based, rows 1..M and columns 1..N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np


class FormatError(ValueError):
    """Raised for malformed or unsupported image files."""


class ColorVector(NamedTuple):
    """One RGB pixel as a 3-component nonnegative vector."""

    x1: float
    x2: float
    x3: float


@dataclass(frozen=True)
class BorderPolicy:
    """How out-of-image window coordinates are resolved.

    ``replicate`` clamps coordinates to the image bounds (the default for
    rank-order filters; keeps output size M x N).  ``reflect`` mirrors
    coordinates about the edge, edge pixel included, so it is defined even
    for 1-pixel images.
    """

    mode: str = "replicate"

    def __post_init__(self) -> None:
        if self.mode not in ("replicate", "reflect"):
            raise ValueError(f"unknown border mode {self.mode!r}")

    @property
    def pad_mode(self) -> str:
        """The numpy.pad mode implementing this policy."""
        return "edge" if self.mode == "replicate" else "symmetric"


REPLICATE = BorderPolicy("replicate")
REFLECT = BorderPolicy("reflect")


class RasterImage:
    """An M x N grid of RGB pixel vectors.

    The backing array has shape (M, N, 3), dtype float64, and is frozen after
    construction; every operation on it is a pure function.
    """

    def __init__(self, pixels: np.ndarray):
        arr = np.asarray(pixels, dtype=np.float64)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError(f"pixel array must have shape (M, N, 3), got {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("image must contain at least one pixel")
        if not np.isfinite(arr).all() or (arr < 0).any():
            raise ValueError("pixel components must be finite and nonnegative")
        arr = arr.copy()
        arr.flags.writeable = False
        self._pixels = arr

    @classmethod
    def from_rows(cls, rows: int, cols: int, flat: Sequence[ColorVector]) -> "RasterImage":
        """Build from a row-major sequence of exactly rows*cols vectors."""
        if len(flat) != rows * cols:
            raise ValueError(f"expected {rows * cols} pixels, got {len(flat)}")
        return cls(np.array(flat, dtype=np.float64).reshape(rows, cols, 3))

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "RasterImage":
        """Adopt a freshly built float64 (M, N, 3) array without copying.

        Internal fast path for filter and noise outputs, whose components are
        by construction values of an already-validated image.
        """
        obj = cls.__new__(cls)
        arr.flags.writeable = False
        obj._pixels = arr
        return obj

    @property
    def rows(self) -> int:
        return self._pixels.shape[0]

    @property
    def cols(self) -> int:
        return self._pixels.shape[1]

    @property
    def pixels(self) -> np.ndarray:
        """Read-only (M, N, 3) float64 view of the pixel grid."""
        return self._pixels

    def pixel(self, r: int, c: int) -> ColorVector:
        """Pixel at 1-based (r, c)."""
        if not (1 <= r <= self.rows and 1 <= c <= self.cols):
            raise ValueError(f"coordinate ({r}, {c}) outside 1..{self.rows} x 1..{self.cols}")
        v = self._pixels[r - 1, c - 1]
        return ColorVector(float(v[0]), float(v[1]), float(v[2]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RasterImage):
            return NotImplemented
        return self._pixels.shape == other._pixels.shape and bool(
            (self._pixels == other._pixels).all()
        )

    def __repr__(self) -> str:
        return f"RasterImage({self.rows}x{self.cols})"


@dataclass(frozen=True)
class WindowView:
    """The n re-indexed vectors of a square filter window.

    ``vectors`` lists the window pixels in row-major scan order.  ``d`` is the
    1-based index of the window center, d = (n+1)/2, so ``vectors[d-1]`` is
    the pixel the filter may preserve.
    """

    vectors: tuple

    def __post_init__(self) -> None:
        n = len(self.vectors)
        side = math.isqrt(n)
        if side * side != n or side % 2 == 0 or n < 1:
            raise ValueError(f"window must hold an odd perfect square of vectors, got {n}")

    @property
    def n(self) -> int:
        return len(self.vectors)

    @property
    def d(self) -> int:
        """1-based center index (n+1)/2."""
        return (self.n + 1) // 2

    @property
    def center(self) -> ColorVector:
        return self.vectors[self.d - 1]


def _mirror_index(i: int, size: int) -> int:
    """Map an out-of-range 0-based index by edge-inclusive reflection.

    Matches numpy.pad(mode='symmetric'): ..., 1, 0 | 0, 1, ..., size-1 | size-1, ...
    """
    if size == 1:
        return 0
    period = 2 * size
    i %= period
    if i < 0:
        i += period
    return i if i < size else period - 1 - i


def resolve_coordinate(i: int, size: int, policy: BorderPolicy) -> int:
    """Resolve a possibly out-of-range 0-based index per the border policy."""
    if policy.mode == "replicate":
        return min(max(i, 0), size - 1)
    return _mirror_index(i, size)


def extract_window(
    img: RasterImage, r: int, c: int, size: int = 3, policy: BorderPolicy = REPLICATE
) -> WindowView:
    """Extract the size x size window centered on 1-based (r, c).

    Out-of-image coordinates are resolved per ``policy``; the returned window
    always holds exactly size*size vectors with the center at index d.
    """
    if size < 3 or size % 2 == 0:
        raise ValueError(f"window size must be odd and >= 3, got {size}")
    if not (1 <= r <= img.rows and 1 <= c <= img.cols):
        raise ValueError(f"center ({r}, {c}) outside 1..{img.rows} x 1..{img.cols}")
    half = size // 2
    px = img.pixels
    vectors = []
    for dr in range(-half, half + 1):
        rr = resolve_coordinate(r - 1 + dr, img.rows, policy)
        for dc in range(-half, half + 1):
            cc = resolve_coordinate(c - 1 + dc, img.cols, policy)
            v = px[rr, cc]
            vectors.append(ColorVector(float(v[0]), float(v[1]), float(v[2])))
    return WindowView(tuple(vectors))


# --------------------------------------------------------------------------
# File I/O: binary PPM (P6, maxval 255) and 8-bit RGB PNG.
# --------------------------------------------------------------------------

def _read_ppm_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Next whitespace-delimited header token, skipping '#' comments."""
    n = len(data)
    while pos < n:
        ch = data[pos : pos + 1]
        if ch == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        elif ch.isspace():
            pos += 1
        else:
            break
    start = pos
    while pos < n and not data[pos : pos + 1].isspace():
        pos += 1
    if start == pos:
        raise FormatError(f"truncated PPM header at byte {start}")
    return data[start:pos], pos


def _decode_ppm(data: bytes, path: str) -> np.ndarray:
    magic, pos = _read_ppm_token(data, 0)
    if magic != b"P6":
        raise FormatError(f"{path}: not a binary PPM (magic {magic!r}, expected b'P6')")
    fields = []
    for name in ("width", "height", "maxval"):
        tok, pos = _read_ppm_token(data, pos)
        try:
            fields.append(int(tok))
        except ValueError:
            raise FormatError(f"{path}: bad {name} field {tok!r} at byte {pos}") from None
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise FormatError(f"{path}: bad dimensions {width}x{height}")
    if maxval != 255:
        raise FormatError(f"{path}: only 8-bit PPM supported (maxval {maxval})")
    pos += 1  # single whitespace after maxval
    need = width * height * 3
    payload = data[pos : pos + need]
    if len(payload) != need:
        raise FormatError(
            f"{path}: truncated payload, need {need} bytes at offset {pos}, have {len(payload)}"
        )
    arr = np.frombuffer(payload, dtype=np.uint8).reshape(height, width, 3)
    return arr.astype(np.float64)


def _decode_png(path: str) -> np.ndarray:
    from PIL import Image as PILImage

    with PILImage.open(path) as im:
        if im.mode != "RGB":
            raise FormatError(
                f"{path}: only 8-bit RGB PNG supported, got mode {im.mode!r}"
                + (" (alpha channel rejected)" if "A" in im.mode else "")
            )
        arr = np.asarray(im, dtype=np.uint8)
    return arr.astype(np.float64)


def read_image(path: str | Path) -> RasterImage:
    """Read a binary PPM (P6, maxval 255) or an 8-bit RGB PNG."""
    p = Path(path)
    if not p.is_file():
        raise FormatError(f"{p}: no such file")
    head = p.open("rb").read(8)
    if head.startswith(b"P6"):
        return RasterImage(_decode_ppm(p.read_bytes(), str(p)))
    if head.startswith(b"\x89PNG\r\n\x1a\n"):
        return RasterImage(_decode_png(str(p)))
    raise FormatError(f"{p}: unrecognized format (first bytes {head!r})")


def quantize(img: RasterImage) -> np.ndarray:
    """Round half away from zero, clamp to [0, 255], as uint8."""
    arr = np.floor(img.pixels + 0.5)
    return np.clip(arr, 0.0, 255.0).astype(np.uint8)


def write_image(img: RasterImage, path: str | Path, format: str | None = None) -> None:
    """Write as binary PPM or PNG (8-bit, lossless for integer images).

    Components are rounded half away from zero and clamped to [0, 255].
    ``format`` defaults from the file extension.
    """
    p = Path(path)
    fmt = format or p.suffix.lstrip(".").lower()
    if fmt not in ("ppm", "png"):
        raise ValueError(f"unsupported output format {fmt!r} (use ppm or png)")
    data = quantize(img)
    if fmt == "ppm":
        header = f"P6\n{img.cols} {img.rows}\n255\n".encode("ascii")
        try:
            p.write_bytes(header + data.tobytes())
        except OSError as exc:
            raise OSError(f"cannot write {p}: {exc}") from exc
    else:
        from PIL import Image as PILImage

        try:
            PILImage.fromarray(data, mode="RGB").save(p, format="PNG")
        except OSError as exc:
            raise OSError(f"cannot write {p}: {exc}") from exc
