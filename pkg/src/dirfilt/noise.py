"""Correlated impulsive noise simulator.

Per pixel, with probability 1-phi the original passes through; otherwise
exactly one channel (conditional weights phi1, phi2, phi3) or all three
(conditional weight 1-(phi1+phi2+phi3)) are replaced by impulse values.

Impulse values default to salt-and-pepper extremes {0, 255}, drawn per
corrupted channel with equal probability; per-channel uniform integers on
[0, 255] are available as an alternative mode.  A replacement draw may
coincide with the original value; the branch probabilities refer to the
corruption event, not to a guaranteed change.

Determinism contract: every pixel consumes exactly five uniform doubles from
a PCG64 stream, in row-major pixel order:

    [corruption event, branch selector, impulse r1, impulse r2, impulse r3]

so a seed reproduces bit-identical noisy images, and ``corrupt_image`` equals
the sequential per-pixel application of ``corrupt_pixel``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .image import ColorVector, RasterImage

IMPULSE_MODES = ("saltpepper", "uniform")


@dataclass(frozen=True)
class NoiseParams:
    """Corruption probabilities, impulse distribution, and RNG seed."""

    phi: float = 0.10
    phi1: float = 0.25
    phi2: float = 0.25
    phi3: float = 0.25
    impulse: str = "saltpepper"
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.phi <= 1.0:
            raise ValueError(f"phi must be in [0, 1], got {self.phi}")
        for name in ("phi1", "phi2", "phi3"):
            v = getattr(self, name)
            if v < 0.0:
                raise ValueError(f"{name} must be >= 0, got {v}")
        if self.phi1 + self.phi2 + self.phi3 > 1.0 + 1e-12:
            raise ValueError("phi1 + phi2 + phi3 must not exceed 1")
        if self.impulse not in IMPULSE_MODES:
            raise ValueError(f"impulse mode must be one of {IMPULSE_MODES}")


def _impulse_value(u: float, mode: str) -> float:
    if mode == "saltpepper":
        return 0.0 if u < 0.5 else 255.0
    return float(int(u * 256.0))


def _apply_draws(o1: float, o2: float, o3: float, draws, params: NoiseParams) -> tuple:
    u_event, u_branch, u1, u2, u3 = draws
    if u_event >= params.phi:
        return o1, o2, o3
    r1 = _impulse_value(u1, params.impulse)
    r2 = _impulse_value(u2, params.impulse)
    r3 = _impulse_value(u3, params.impulse)
    if u_branch < params.phi1:
        return r1, o2, o3
    if u_branch < params.phi1 + params.phi2:
        return o1, r2, o3
    if u_branch < params.phi1 + params.phi2 + params.phi3:
        return o1, o2, r3
    return r1, r2, r3


def corrupt_pixel(o: ColorVector, params: NoiseParams, rng: np.random.Generator) -> ColorVector:
    """Corrupt one pixel, consuming exactly five doubles from ``rng``."""
    draws = rng.random(5)
    return ColorVector(*_apply_draws(o.x1, o.x2, o.x3, draws, params))


def corrupt_image(img: RasterImage, params: NoiseParams) -> RasterImage:
    """Corrupt every pixel independently; deterministic given params.seed.

    Consumes the same stream as row-major ``corrupt_pixel`` calls on a fresh
    ``np.random.Generator(np.random.PCG64(seed))``.
    """
    rng = np.random.Generator(np.random.PCG64(params.seed))
    M, N = img.rows, img.cols
    draws = rng.random((M * N, 5))
    u_event = draws[:, 0].reshape(M, N)
    u_branch = draws[:, 1].reshape(M, N)
    u_ch = draws[:, 2:5].reshape(M, N, 3)

    if params.impulse == "saltpepper":
        impulses = np.where(u_ch < 0.5, 0.0, 255.0)
    else:
        impulses = np.floor(u_ch * 256.0)

    corrupted = u_event < params.phi
    c1 = params.phi1
    c2 = params.phi1 + params.phi2
    c3 = params.phi1 + params.phi2 + params.phi3
    out = img.pixels.copy()
    branch_r = corrupted & (u_branch < c1)
    branch_g = corrupted & (u_branch >= c1) & (u_branch < c2)
    branch_b = corrupted & (u_branch >= c2) & (u_branch < c3)
    branch_all = corrupted & (u_branch >= c3)
    out[branch_r, 0] = impulses[branch_r, 0]
    out[branch_g, 1] = impulses[branch_g, 1]
    out[branch_b, 2] = impulses[branch_b, 2]
    out[branch_all] = impulses[branch_all]
    return RasterImage._wrap(out)
