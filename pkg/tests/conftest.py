import numpy as np
import pytest

from dirfilt import NoiseParams, RasterImage, corrupt_image, parse_filter_spec, apply_filter

from _synth import natural_image, random_image


@pytest.fixture(scope="session")
def natural512():
    return natural_image(512, 512, seed=7)


@pytest.fixture(scope="session")
def noisy512(natural512):
    return corrupt_image(natural512, NoiseParams(phi=0.10, seed=42))


@pytest.fixture(scope="session")
def random512():
    return random_image(512, 512, seed=20240)


@pytest.fixture(scope="session")
def warm_engine():
    """Compile (or cache-load) every engine kernel once, off the clock."""
    img = random_image(12, 12, seed=1)
    for s in (
        "identity", "vmf", "vmf:p=1", "vmf:p=3",
        "bvdf:exact", "bvdf:minimax", "bvdf:rgb",
        "ddf:exact", "ddf:minimax", "ddf:rgb",
        "acwddf:exact", "acwddf:minimax", "acwddf:rgb",
    ):
        apply_filter(img, parse_filter_spec(s))
    return True


def small_random_image(rng: np.random.Generator, rows: int = 8, cols: int = 8) -> RasterImage:
    return RasterImage(rng.integers(0, 256, (rows, cols, 3)).astype(np.float64))
