"""Order-statistics vector filters: VMF, BVDF, DDF, CWDDF/CWVMF, ACWDDF.

Every filter ranks the window vectors by a scalar aggregate of distances to
all other window vectors (self term included) and outputs the lowest-ranked
vector; ties break to the lowest window index.  The angular term is pluggable
via ``DirectionalStrategy``: exact library acos, the minimax polynomial
approximation, or the calibrated chromaticity substitute.

``apply_filter`` runs the accelerated engine; the window-level functions here
are the readable reference forms and compute bit-identical aggregates (same
operation order), so the engine can be checked against their composition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import _engine
from .distance import (
    CALIBRATION_INTERCEPT,
    CALIBRATION_SLOPE,
    FastAcosTable,
    angular_distance_minimax,
    chromaticity_distance,
    cosine_similarity,
    minkowski_distance,
)
from .image import BorderPolicy, ColorVector, REPLICATE, RasterImage, WindowView

FAMILIES = ("identity", "vmf", "bvdf", "ddf", "acwddf")


@dataclass(frozen=True)
class DirectionalStrategy:
    """Selects how the angular ordering term is computed.

    ``exact`` uses the platform's library acos.  ``minimax`` replaces acos by
    the degree-q polynomial pair.  ``chromaticity`` orders by the Minkowski
    distance in chromaticity space; the affine (slope, intercept) calibration
    is applied only where absolute radians matter (the ACWDDF switching sum),
    never for ordering, where a monotone map cannot change an argmin.
    """

    kind: str = "exact"
    q: int = 4
    slope: float = CALIBRATION_SLOPE
    intercept: float = CALIBRATION_INTERCEPT

    def __post_init__(self) -> None:
        if self.kind not in ("exact", "minimax", "chromaticity"):
            raise ValueError(f"unknown strategy kind {self.kind!r}")
        if self.kind == "minimax" and self.q not in (2, 3, 4):
            raise ValueError(f"minimax degree must be 2, 3, or 4, got {self.q}")
        if self.kind == "chromaticity" and self.slope <= 0:
            raise ValueError("calibration slope must be positive")

    @classmethod
    def exact(cls) -> "DirectionalStrategy":
        return cls("exact")

    @classmethod
    def minimax(cls, q: int = 4) -> "DirectionalStrategy":
        return cls("minimax", q=q)

    @classmethod
    def chromaticity_calibrated(
        cls, slope: float = CALIBRATION_SLOPE, intercept: float = CALIBRATION_INTERCEPT
    ) -> "DirectionalStrategy":
        return cls("chromaticity", slope=slope, intercept=intercept)

    @property
    def table(self) -> Optional[FastAcosTable]:
        return FastAcosTable.for_degree(self.q) if self.kind == "minimax" else None

    @property
    def token(self) -> str:
        """The short spelling used in filter spec strings."""
        return {"exact": "exact", "minimax": "minimax", "chromaticity": "rgb"}[self.kind]


def center_weight(n: int, k: int) -> int:
    """Weight of the center pixel at smoothing level k: n - 2k + 2.

    k = 1 pins the output to the center (weight n); k = (n+1)/2 gives weight 1,
    the unweighted filter.  Off-center pixels always weigh 1.
    """
    d = (n + 1) // 2
    if not 1 <= k <= d:
        raise ValueError(f"smoothing level k must be in [1, {d}], got {k}")
    return n - 2 * k + 2


@dataclass(frozen=True)
class AcwddfParams:
    """Adaptive switching parameters: initial smoothing level and threshold.

    The three smoothing levels lam..lam+2 must be valid, so lam + 2 <= d.
    Defaults follow the filter's recommended settings (lam = 2, T = 10.8).
    """

    lam: int = 2
    threshold: float = 10.8
    p: float = 2.0

    def __post_init__(self) -> None:
        if self.lam < 1:
            raise ValueError(f"lambda must be >= 1, got {self.lam}")
        if self.threshold < 0:
            raise ValueError(f"threshold must be nonnegative, got {self.threshold}")
        if not (self.p >= 1.0):
            raise ValueError(f"Minkowski order must be >= 1, got {self.p}")

    def validate_for(self, n: int) -> None:
        d = (n + 1) // 2
        if self.lam + 2 > d:
            raise ValueError(
                f"lambda {self.lam} needs smoothing levels up to {self.lam + 2}, "
                f"but windows of {n} vectors allow at most d = {d}"
            )


@dataclass(frozen=True)
class FilterSpec:
    """A fully-determined filter configuration.

    Text form: ``family[:strategy][:key=value...]`` with strategy one of
    exact | minimax | rgb, e.g. ``bvdf:minimax:q=4``, ``ddf:exact:p=2``,
    ``acwddf:rgb:lambda=2:T=10.8``, ``vmf``, ``identity``.
    """

    family: str
    strategy: DirectionalStrategy = field(default_factory=DirectionalStrategy.exact)
    p: float = 2.0
    window: int = 3
    acwddf: Optional[AcwddfParams] = None

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown filter family {self.family!r} (choose from {FAMILIES})")
        if not (self.p >= 1.0):
            raise ValueError(f"Minkowski order must be >= 1, got {self.p}")
        if self.window < 3 or self.window % 2 == 0:
            raise ValueError(f"window side must be odd and >= 3, got {self.window}")
        if (self.family == "acwddf") != (self.acwddf is not None):
            raise ValueError("acwddf parameters are required exactly when family is acwddf")
        if self.acwddf is not None:
            self.acwddf.validate_for(self.window * self.window)

    @property
    def name(self) -> str:
        """Canonical text form."""
        if self.family == "identity":
            return "identity"
        parts = [self.family]
        if self.family != "vmf":
            parts.append(self.strategy.token)
            if self.strategy.kind == "minimax":
                parts.append(f"q={self.strategy.q}")
        if self.p != 2.0:
            parts.append(f"p={_fmt_num(self.p)}")
        if self.window != 3:
            parts.append(f"window={self.window}")
        if self.acwddf is not None:
            parts.append(f"lambda={self.acwddf.lam}")
            parts.append(f"T={_fmt_num(self.acwddf.threshold)}")
        return ":".join(parts)

    def __str__(self) -> str:
        return self.name


def _fmt_num(x: float) -> str:
    return str(int(x)) if float(x) == int(x) else repr(float(x))


def parse_filter_spec(text: str) -> FilterSpec:
    """Parse the ``family[:strategy][:key=value...]`` grammar."""
    parts = [t.strip() for t in text.strip().split(":") if t.strip()]
    if not parts:
        raise ValueError("empty filter spec")
    family = parts[0].lower()
    if family not in FAMILIES:
        raise ValueError(f"unknown filter family {family!r} in spec {text!r}")
    kind = "exact"
    kv = {}
    for tok in parts[1:]:
        if "=" in tok:
            key, _, val = tok.partition("=")
            kv[key.strip().lower()] = val.strip()
        elif tok.lower() in ("exact", "minimax", "rgb"):
            kind = tok.lower()
        else:
            raise ValueError(f"unrecognized token {tok!r} in spec {text!r}")
    try:
        q = int(kv.pop("q", 4))
        p = float(kv.pop("p", 2.0))
        window = int(kv.pop("window", 3))
        slope = float(kv.pop("slope", CALIBRATION_SLOPE))
        intercept = float(kv.pop("intercept", CALIBRATION_INTERCEPT))
        lam = int(kv.pop("lambda", 2))
        threshold = float(kv.pop("t", 10.8))
    except ValueError as exc:
        raise ValueError(f"bad value in spec {text!r}: {exc}") from None
    if kv:
        raise ValueError(f"unknown keys {sorted(kv)} in spec {text!r}")
    if kind == "minimax":
        strategy = DirectionalStrategy.minimax(q)
    elif kind == "rgb":
        strategy = DirectionalStrategy.chromaticity_calibrated(slope, intercept)
    else:
        strategy = DirectionalStrategy.exact()
    params = AcwddfParams(lam, threshold, p) if family == "acwddf" else None
    return FilterSpec(family=family, strategy=strategy, p=p, window=window, acwddf=params)


# --------------------------------------------------------------------------
# Window-level reference filters.
# --------------------------------------------------------------------------

def _angular_pair(strategy: DirectionalStrategy, p: float, a: ColorVector, b: ColorVector) -> float:
    if strategy.kind == "exact":
        return math.acos(cosine_similarity(a, b))
    if strategy.kind == "minimax":
        return angular_distance_minimax(a, b, strategy.table)
    return chromaticity_distance(a, b, p)


def _aggregates(vectors: Sequence[ColorVector], pair) -> list:
    """Self term first, then pairs in ascending j; same order as the engine."""
    n = len(vectors)
    sums = [pair(vectors[i], vectors[i]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = pair(vectors[i], vectors[j])
            sums[i] += d
            sums[j] += d
    return sums


def _argmin(values: Sequence[float]) -> int:
    best = 0
    bv = values[0]
    for i in range(1, len(values)):
        if values[i] < bv:
            bv = values[i]
            best = i
    return best


def _center_column(vectors, pair) -> list:
    """Distance of each window vector to the center, pairs evaluated in
    (lower index, upper index) orientation to match the engine stash."""
    n = len(vectors)
    dc = (n - 1) // 2
    col = []
    for i in range(n):
        if i < dc:
            col.append(pair(vectors[i], vectors[dc]))
        elif i == dc:
            col.append(pair(vectors[dc], vectors[dc]))
        else:
            col.append(pair(vectors[dc], vectors[i]))
    return col


def vmf(w: WindowView, p: float = 2.0) -> ColorVector:
    """Vector median: minimizes the sum of Minkowski distances."""
    sums = _aggregates(w.vectors, lambda a, b: minkowski_distance(a, b, p))
    return w.vectors[_argmin(sums)]


def bvdf(
    w: WindowView,
    strategy: DirectionalStrategy = DirectionalStrategy.exact(),
    p: float = 2.0,
) -> ColorVector:
    """Basic vector directional filter: minimizes the angular-distance sum.

    ``p`` only affects the chromaticity strategy, whose ordering term is a
    Minkowski distance.
    """
    sums = _aggregates(w.vectors, lambda a, b: _angular_pair(strategy, p, a, b))
    return w.vectors[_argmin(sums)]


def ddf(
    w: WindowView,
    p: float = 2.0,
    strategy: DirectionalStrategy = DirectionalStrategy.exact(),
) -> ColorVector:
    """Directional-distance filter: minimizes (angular sum) * (Minkowski sum).

    Duplicated vectors can zero one factor for several candidates at once;
    the lowest index still wins, with no secondary criterion.
    """
    sa = _aggregates(w.vectors, lambda a, b: _angular_pair(strategy, p, a, b))
    sl = _aggregates(w.vectors, lambda a, b: minkowski_distance(a, b, p))
    return w.vectors[_argmin([sa[i] * sl[i] for i in range(w.n)])]


def _cwddf_index(w, k, p, strategy, sa, sl, ad, ld) -> int:
    wm1 = float(center_weight(w.n, k) - 1)
    prods = [(sa[i] + wm1 * ad[i]) * (sl[i] + wm1 * ld[i]) for i in range(w.n)]
    return _argmin(prods)


def cwddf(
    w: WindowView,
    k: int,
    p: float = 2.0,
    strategy: DirectionalStrategy = DirectionalStrategy.exact(),
) -> ColorVector:
    """Center-weighted DDF at smoothing level k.

    The center weight n-2k+2 enters both factor sums; the weighted sum is
    formed as (plain sum) + (weight-1) * (distance to center), which is exact
    algebra because only the center term carries a weight other than 1.
    k = 1 forces the center pixel through; k = d reduces to the plain DDF.
    """
    sa = _aggregates(w.vectors, lambda a, b: _angular_pair(strategy, p, a, b))
    sl = _aggregates(w.vectors, lambda a, b: minkowski_distance(a, b, p))
    ad = _center_column(w.vectors, lambda a, b: _angular_pair(strategy, p, a, b))
    ld = _center_column(w.vectors, lambda a, b: minkowski_distance(a, b, p))
    return w.vectors[_cwddf_index(w, k, p, strategy, sa, sl, ad, ld)]


def cwvmf(w: WindowView, k: int, p: float = 2.0) -> ColorVector:
    """Literal center-weighted VMF (weighted Minkowski sums only); provided
    for sensitivity analysis against the center-weighted DDF reading."""
    sl = _aggregates(w.vectors, lambda a, b: minkowski_distance(a, b, p))
    ld = _center_column(w.vectors, lambda a, b: minkowski_distance(a, b, p))
    wm1 = float(center_weight(w.n, k) - 1)
    return w.vectors[_argmin([sl[i] + wm1 * ld[i] for i in range(w.n)])]


def acwddf(
    w: WindowView,
    params: AcwddfParams = AcwddfParams(),
    strategy: DirectionalStrategy = DirectionalStrategy.exact(),
) -> ColorVector:
    """Adaptive center-weighted DDF.

    Evidence sum: over the three smoothing levels lam..lam+2, accumulate
    (angular distance to center) * (Minkowski distance to center) of the
    CWDDF output.  Above the threshold the window is deemed corrupted and the
    DDF output fires; otherwise the center pixel passes through untouched.
    Under the chromaticity strategy the angular factor is mapped through the
    calibration line so the sum stays threshold-comparable in radian units.
    """
    params.validate_for(w.n)
    p = params.p
    sa = _aggregates(w.vectors, lambda a, b: _angular_pair(strategy, p, a, b))
    sl = _aggregates(w.vectors, lambda a, b: minkowski_distance(a, b, p))
    ad = _center_column(w.vectors, lambda a, b: _angular_pair(strategy, p, a, b))
    ld = _center_column(w.vectors, lambda a, b: minkowski_distance(a, b, p))
    s_val = 0.0
    for k in range(params.lam, params.lam + 3):
        y = _cwddf_index(w, k, p, strategy, sa, sl, ad, ld)
        a = ad[y]
        if strategy.kind == "chromaticity":
            a = strategy.slope * a + strategy.intercept
        s_val += a * ld[y]
    if s_val > params.threshold:
        return w.vectors[_argmin([sa[i] * sl[i] for i in range(w.n)])]
    return w.center


# --------------------------------------------------------------------------
# Whole-image driver.
# --------------------------------------------------------------------------

_SCODE = {"exact": _engine.EXACT, "minimax": _engine.MINIMAX, "chromaticity": _engine.CHROMA}


def apply_filter(
    img: RasterImage,
    spec: FilterSpec,
    policy: BorderPolicy = REPLICATE,
    workers: int = 1,
) -> RasterImage:
    """Filter the whole image; output pixel (r, c) is the filter of the
    window centered there, always read from the original image (single pass,
    never from previously filtered output).

    ``workers`` > 1 partitions output rows across threads; results are
    bit-identical to the sequential run.  The benchmark harness always times
    the sequential path.
    """
    M, N = img.rows, img.cols
    if spec.family == "identity":
        return RasterImage._wrap(img.pixels.copy())
    scode = _SCODE[spec.strategy.kind] if spec.family != "vmf" else -1
    table = spec.strategy.table if spec.family != "vmf" else None
    p = spec.acwddf.p if spec.family == "acwddf" else spec.p
    planes = _engine.EnginePlanes(
        img.pixels,
        spec.window,
        policy.pad_mode,
        scode,
        table,
        need_minkowski=spec.family in ("vmf", "ddf", "acwddf"),
    )
    out = np.empty((M, N, 3))
    kwargs = {}
    if spec.family == "acwddf":
        kwargs = dict(
            lam=spec.acwddf.lam,
            threshold=spec.acwddf.threshold,
            slope=spec.strategy.slope,
            intercept=spec.strategy.intercept,
        )
    if workers > 1 and M > 1:
        from concurrent.futures import ThreadPoolExecutor

        bounds = np.linspace(0, M, min(workers, M) + 1).astype(int)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(
                    _engine.run_rows, spec.family, planes, p, spec.window, out,
                    int(r0), int(r1), **kwargs,
                )
                for r0, r1 in zip(bounds[:-1], bounds[1:])
                if r1 > r0
            ]
            for f in futures:
                f.result()
    else:
        _engine.run_rows(spec.family, planes, p, spec.window, out, 0, M, **kwargs)
    return RasterImage._wrap(out)
