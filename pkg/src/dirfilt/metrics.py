"""Effectiveness criteria: MAE, PSNR, and NCD against a reference image.

MAE and PSNR are computed over all 3*M*N components with a 255 peak.  NCD is
the aggregate ratio of CIE L*u*v* error magnitude to reference magnitude,
reported multiplied by 1000.  The Luv conversion assumes sRGB-companded
input and the D65 white point; the exact constants are below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .image import RasterImage

# sRGB -> linear RGB -> XYZ (D65, 2 degree observer), IEC 61966-2-1 primaries.
_SRGB_TO_XYZ = np.array(
    [
        [0.4124564, 0.3575761, 0.1804375],
        [0.2126729, 0.7151522, 0.0721750],
        [0.0193339, 0.1191920, 0.9503041],
    ]
)
_WHITE_X, _WHITE_Y, _WHITE_Z = 0.95047, 1.0, 1.08883
_DENOM_N = _WHITE_X + 15.0 * _WHITE_Y + 3.0 * _WHITE_Z
_UPRIME_N = 4.0 * _WHITE_X / _DENOM_N
_VPRIME_N = 9.0 * _WHITE_Y / _DENOM_N
_CBRT_EPS = (6.0 / 29.0) ** 3


@dataclass
class MetricsReport:
    """One row of filtering effectiveness numbers.

    ``psnr`` is +inf when the images are identical; ``ncd_x1000`` is the NCD
    scaled by 1000; ``time_seconds`` is filled by the benchmark harness.
    """

    mae: float
    psnr: float
    ncd_x1000: float
    time_seconds: float = 0.0

    def csv_row(self) -> str:
        return f"{self.mae:.6f},{_fmt(self.psnr)},{self.ncd_x1000:.6f},{self.time_seconds:.6f}"

    def table_row(self) -> str:
        return f"{self.mae:9.3f} {_fmt(self.psnr):>9s} {self.ncd_x1000:9.3f} {self.time_seconds:9.3f}"


def _fmt(x: float) -> str:
    return "inf" if math.isinf(x) else f"{x:.6f}"


def _check_dims(orig: RasterImage, test: RasterImage) -> None:
    if (orig.rows, orig.cols) != (test.rows, test.cols):
        raise ValueError(
            f"dimension mismatch: {orig.rows}x{orig.cols} vs {test.rows}x{test.cols}"
        )


def mae(orig: RasterImage, test: RasterImage) -> float:
    """Mean absolute error over all pixels and channels."""
    _check_dims(orig, test)
    return float(np.abs(orig.pixels - test.pixels).mean())


def psnr(orig: RasterImage, test: RasterImage) -> float:
    """Peak signal-to-noise ratio, 10*log10(255^2 / MSE), in dB."""
    _check_dims(orig, test)
    mse = float(np.square(orig.pixels - test.pixels).mean())
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(255.0 * 255.0 / mse)


def srgb_to_luv(pixels: np.ndarray) -> np.ndarray:
    """Convert (..., 3) sRGB values in [0, 255] to CIE L*u*v*."""
    c = np.asarray(pixels, dtype=np.float64) / 255.0
    linear = np.where(c <= 0.04045, c / 12.92, ((c + 0.055) / 1.055) ** 2.4)
    xyz = linear @ _SRGB_TO_XYZ.T
    x, y, z = xyz[..., 0], xyz[..., 1], xyz[..., 2]
    yr = y / _WHITE_Y
    lstar = np.where(yr > _CBRT_EPS, 116.0 * np.cbrt(yr) - 16.0, (29.0 / 3.0) ** 3 * yr)
    denom = x + 15.0 * y + 3.0 * z
    safe = denom > 0.0
    uprime = np.where(safe, 4.0 * x / np.where(safe, denom, 1.0), _UPRIME_N)
    vprime = np.where(safe, 9.0 * y / np.where(safe, denom, 1.0), _VPRIME_N)
    ustar = 13.0 * lstar * (uprime - _UPRIME_N)
    vstar = 13.0 * lstar * (vprime - _VPRIME_N)
    return np.stack([lstar, ustar, vstar], axis=-1)


def ncd(orig: RasterImage, test: RasterImage) -> float:
    """Normalized color distance in L*u*v*, multiplied by 1000.

    Sum over pixels of the Euclidean Luv error, divided by the summed Luv
    magnitude of the reference.
    """
    _check_dims(orig, test)
    luv_o = srgb_to_luv(orig.pixels)
    luv_t = srgb_to_luv(test.pixels)
    err = np.sqrt(np.square(luv_t - luv_o).sum(axis=-1)).sum()
    ref = np.sqrt(np.square(luv_o).sum(axis=-1)).sum()
    if ref == 0.0:
        return 0.0 if err == 0.0 else math.inf
    return 1000.0 * float(err / ref)


def compare(orig: RasterImage, test: RasterImage, time_seconds: float = 0.0) -> MetricsReport:
    """All three criteria in one report."""
    return MetricsReport(
        mae=mae(orig, test),
        psnr=psnr(orig, test),
        ncd_x1000=ncd(orig, test),
        time_seconds=time_seconds,
    )
