"""Pairwise pixel distance functions.

Four routes for the angular term used by directional filters:

* ``angular_distance_exact``   -- library acos of the normalized dot product.
* ``angular_distance_minimax`` -- the same angle through ``fast_acos``, a
  piecewise minimax-polynomial inverse cosine.
* ``chromaticity_distance``    -- Minkowski distance between intensity-
  normalized (r, g, b) coordinates; brightness-invariant, no acos at all.
* ``calibrated_angular``       -- the chromaticity distance mapped through a
  fitted affine relation so its scale is comparable to radians.

Plus the plain Minkowski distance used by the VMF family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources

from .image import ColorVector

SQRT2 = math.sqrt(2.0)
INV_SQRT2 = 1.0 / math.sqrt(2.0)

# Calibrated affine map from chromaticity distance to angle (radians):
# fitted over random RGB vector pairs, see calibration.fit_angular_chromaticity.
CALIBRATION_SLOPE = 1.436437
CALIBRATION_INTERCEPT = 0.027664


@dataclass(frozen=True)
class MinimaxPoly:
    """A minimax polynomial a_0 + a_1 z + ... + a_q z^q on a closed interval.

    ``bound`` is the guaranteed maximum absolute error against the target
    function on ``domain``; the calibration module verifies it empirically.
    """

    degree: int
    coefficients: tuple
    domain: tuple
    bound: float

    def __post_init__(self) -> None:
        if len(self.coefficients) != self.degree + 1:
            raise ValueError(
                f"degree {self.degree} needs {self.degree + 1} coefficients, "
                f"got {len(self.coefficients)}"
            )
        if not (self.domain[0] < self.domain[1]):
            raise ValueError(f"bad domain {self.domain}")
        if self.bound <= 0:
            raise ValueError("error bound must be positive")

    def __call__(self, z: float) -> float:
        """Evaluate by nested multiplication (degree multiplies and adds)."""
        acc = self.coefficients[-1]
        for a in self.coefficients[-2::-1]:
            acc = acc * z + a
        return acc


# Minimax coefficients for the two inverse-trig approximations, per degree.
# ASIN rows approximate g(tau) = 2*asin(tau/sqrt(2)) on [0, 1/sqrt(2)];
# ACOS rows approximate acos(z) directly on [0, 0.5].  The same values ship
# as a data file (data/minimax_coefficients.txt) for independent inspection.
ASIN_COEFFICIENTS = {
    2: (1.830987519e-03, (1.829125e-03, 1.371117, 1.480266e-01)),
    3: (1.358426903e-04, (-1.358425e-04, 1.419488, -3.090315e-02, 1.666491e-01)),
    4: (2.097813673e-05, (2.097797e-05, 1.412840, 1.429881e-02, 6.704361e-02, 6.909677e-02)),
}
ACOS_COEFFICIENTS = {
    2: (9.154936808e-04, (1.569882, -9.695260e-01, -1.480266e-01)),
    3: (6.792158693e-05, (1.570864, -1.003730, 3.090318e-02, -2.356775e-01)),
    4: (1.048948667e-05, (1.570786, -9.990285e-01, -1.429899e-02, -9.481335e-02, -1.381942e-01)),
}


@dataclass(frozen=True)
class FastAcosTable:
    """The polynomial pair implementing the piecewise fast inverse cosine.

    ``acos_poly`` covers z in [0, 0.5] directly; ``asin_poly`` covers the
    composed function 2*asin(tau/sqrt(2)) for tau = sqrt(1-z) when z >= 0.5.
    """

    acos_poly: MinimaxPoly
    asin_poly: MinimaxPoly

    def __post_init__(self) -> None:
        # Sanity anchors: g'(0) = sqrt(2) and acos(0) = pi/2.
        if abs(self.asin_poly.coefficients[1] - SQRT2) > 0.05:
            raise ValueError("asin polynomial a_1 is not near sqrt(2)")
        if abs(self.acos_poly.coefficients[0] - math.pi / 2) > 0.01:
            raise ValueError("acos polynomial a_0 is not near pi/2")

    @property
    def degree(self) -> int:
        return self.acos_poly.degree

    @property
    def max_error(self) -> float:
        """Composite error bound for fast_acos over [0, 1]."""
        return max(self.acos_poly.bound, self.asin_poly.bound)

    @classmethod
    def for_degree(cls, q: int = 4) -> "FastAcosTable":
        if q not in ASIN_COEFFICIENTS:
            raise ValueError(f"no coefficients for degree {q} (choose 2, 3, or 4)")
        eps_s, cs = ASIN_COEFFICIENTS[q]
        eps_a, ca = ACOS_COEFFICIENTS[q]
        return cls(
            acos_poly=MinimaxPoly(q, ca, (0.0, 0.5), eps_a),
            asin_poly=MinimaxPoly(q, cs, (0.0, INV_SQRT2), eps_s),
        )


DEFAULT_FAST_ACOS = FastAcosTable.for_degree(4)


def coefficient_table_text() -> str:
    """The shipped human-readable coefficient file contents."""
    return resources.files("dirfilt.data").joinpath("minimax_coefficients.txt").read_text()


def load_coefficient_table() -> dict:
    """Parse the shipped data file into {(role, q): (bound, coefficients)}."""
    table = {}
    for line in coefficient_table_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        role, q, eps = parts[0].lower(), int(parts[1]), float(parts[2])
        coefs = tuple(float(x) for x in parts[3:])
        if len(coefs) != q + 1:
            raise ValueError(f"row {role} q={q}: expected {q + 1} coefficients")
        table[(role, q)] = (eps, coefs)
    return table


def _validate_p(p: float) -> float:
    p = float(p)
    if not (p >= 1.0):
        raise ValueError(f"Minkowski order must be >= 1, got {p}")
    return p


def minkowski_distance(a: ColorVector, b: ColorVector, p: float = 2.0) -> float:
    """L_p distance between two pixel vectors."""
    p = _validate_p(p)
    d1 = a.x1 - b.x1
    d2 = a.x2 - b.x2
    d3 = a.x3 - b.x3
    if p == 2.0:
        return math.sqrt(d1 * d1 + d2 * d2 + d3 * d3)
    if p == 1.0:
        return abs(d1) + abs(d2) + abs(d3)
    return (abs(d1) ** p + abs(d2) ** p + abs(d3) ** p) ** (1.0 / p)


def _angular_parts(v: ColorVector) -> tuple:
    """Vector components used for angles, with the zero vector mapped to the
    gray direction (1, 1, 1), plus the squared norm."""
    x1, x2, x3 = v
    if x1 == 0.0 and x2 == 0.0 and x3 == 0.0:
        x1 = x2 = x3 = 1.0
    return x1, x2, x3, x1 * x1 + x2 * x2 + x3 * x3


def cosine_similarity(a: ColorVector, b: ColorVector) -> float:
    """Normalized dot product, clamped to [0, 1].

    Computed as dot / sqrt(nsq_a * nsq_b): for integer-valued parallel vectors
    the Cauchy-Schwarz product is an exact square, so the result is exactly 1
    and the angle exactly 0.
    """
    a1, a2, a3, na = _angular_parts(a)
    b1, b2, b3, nb = _angular_parts(b)
    dot = a1 * b1 + a2 * b2 + a3 * b3
    z = dot / math.sqrt(na * nb)
    return min(max(z, 0.0), 1.0)


def angular_distance_exact(a: ColorVector, b: ColorVector) -> float:
    """Angle between two pixel vectors in radians, in [0, pi/2]."""
    return math.acos(cosine_similarity(a, b))


def fast_acos(z: float, table: FastAcosTable = DEFAULT_FAST_ACOS) -> float:
    """Approximate acos on [0, 1] via the piecewise minimax polynomials.

    For z >= 0.5, uses the identity acos(z) = 2*asin(sqrt(0.5*(1-z))) with the
    two inner multiplications folded into the approximated function of
    tau = sqrt(1-z).  Input is clamped to [0, 1] (rounding can push a cosine
    slightly outside).
    """
    z = min(max(z, 0.0), 1.0)
    if z >= 0.5:
        return table.asin_poly(math.sqrt(1.0 - z))
    return table.acos_poly(z)


def angular_distance_minimax(
    a: ColorVector, b: ColorVector, table: FastAcosTable = DEFAULT_FAST_ACOS
) -> float:
    """Approximate angle via fast_acos; |result - exact| <= table.max_error.

    Equal vectors map to fast_acos(1) exactly (the asin polynomial's constant
    term).  Distinct vectors normalize the dot product with per-vector
    reciprocal norms, the form the accelerated filter engine hoists out of
    its pair loop; it differs from the exact route's quotient by a few ulp,
    far below the polynomial bound.
    """
    if a == b:
        return fast_acos(1.0, table)
    a1, a2, a3, na = _angular_parts(a)
    b1, b2, b3, nb = _angular_parts(b)
    rna = 1.0 / math.sqrt(na)
    rnb = 1.0 / math.sqrt(nb)
    dot = a1 * b1 + a2 * b2 + a3 * b3
    # grouping the reciprocal norms first keeps the result bitwise symmetric
    return fast_acos(dot * (rna * rnb), table)


def chromaticity(v: ColorVector) -> ColorVector:
    """Intensity-normalized (r, g, b) with r + g + b = 1.

    The zero vector maps to (1/3, 1/3, 1/3), the achromatic point, matching
    the gray-direction convention of the angular routes.
    """
    s = v.x1 + v.x2 + v.x3
    if s == 0.0:
        third = 1.0 / 3.0
        return ColorVector(third, third, third)
    return ColorVector(v.x1 / s, v.x2 / s, v.x3 / s)


def chromaticity_distance(a: ColorVector, b: ColorVector, p: float = 2.0) -> float:
    """Minkowski distance in chromaticity space; invariant under positive
    scaling of either argument."""
    return minkowski_distance(chromaticity(a), chromaticity(b), p)


def calibrated_angular(
    a: ColorVector,
    b: ColorVector,
    slope: float = CALIBRATION_SLOPE,
    intercept: float = CALIBRATION_INTERCEPT,
    p: float = 2.0,
) -> float:
    """Chromaticity distance mapped onto the angular scale: slope*B + intercept.

    Monotone in B, so it orders identically to the raw chromaticity distance;
    the affine map matters only where absolute radians are compared against a
    threshold.  The fit targets typical pair distances, so the extremes (for
    example pure red vs pure green) carry a large absolute error.
    """
    if slope <= 0:
        raise ValueError(f"slope must be positive, got {slope}")
    return slope * chromaticity_distance(a, b, p) + intercept
