"""Order-statistics vector filters for color images, with accelerated
angular distances (minimax polynomial acos and chromaticity substitution),
an impulsive noise simulator, quality metrics, and a benchmark harness.
"""

from .calibration import LinearFit, fit_angular_chromaticity, fit_line, verify_minimax
from .distance import (
    CALIBRATION_INTERCEPT,
    CALIBRATION_SLOPE,
    FastAcosTable,
    MinimaxPoly,
    angular_distance_exact,
    angular_distance_minimax,
    calibrated_angular,
    chromaticity,
    chromaticity_distance,
    fast_acos,
    minkowski_distance,
)
from .filters import (
    AcwddfParams,
    DirectionalStrategy,
    FilterSpec,
    acwddf,
    apply_filter,
    bvdf,
    center_weight,
    cwddf,
    cwvmf,
    ddf,
    parse_filter_spec,
    vmf,
)
from .image import (
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
from .metrics import MetricsReport, compare, mae, ncd, psnr
from .noise import NoiseParams, corrupt_image, corrupt_pixel

__version__ = "0.1.0"

__all__ = [
    "AcwddfParams",
    "BorderPolicy",
    "CALIBRATION_INTERCEPT",
    "CALIBRATION_SLOPE",
    "ColorVector",
    "DirectionalStrategy",
    "FastAcosTable",
    "FilterSpec",
    "FormatError",
    "LinearFit",
    "MetricsReport",
    "MinimaxPoly",
    "NoiseParams",
    "REFLECT",
    "REPLICATE",
    "RasterImage",
    "WindowView",
    "acwddf",
    "angular_distance_exact",
    "angular_distance_minimax",
    "apply_filter",
    "bvdf",
    "calibrated_angular",
    "center_weight",
    "chromaticity",
    "chromaticity_distance",
    "compare",
    "corrupt_image",
    "corrupt_pixel",
    "cwddf",
    "cwvmf",
    "ddf",
    "extract_window",
    "fast_acos",
    "fit_angular_chromaticity",
    "fit_line",
    "mae",
    "minkowski_distance",
    "ncd",
    "parse_filter_spec",
    "psnr",
    "read_image",
    "verify_minimax",
    "vmf",
    "write_image",
]
