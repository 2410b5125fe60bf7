import math

import numpy as np
import pytest

from dirfilt import (
    CALIBRATION_INTERCEPT,
    CALIBRATION_SLOPE,
    ColorVector,
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
from dirfilt.distance import (
    ACOS_COEFFICIENTS,
    ASIN_COEFFICIENTS,
    load_coefficient_table,
)

V = ColorVector


def random_vector(rng, allow_zero=False):
    v = V(*rng.integers(0, 256, 3).astype(float))
    if not allow_zero and v == (0.0, 0.0, 0.0):
        return V(1.0, 1.0, 1.0)
    return v


class TestMinkowski:
    def test_identity(self):
        assert minkowski_distance(V(5, 6, 7), V(5, 6, 7)) == 0.0

    def test_three_four_five(self):
        assert minkowski_distance(V(0, 0, 0), V(3, 4, 0), 2) == 5.0

    def test_city_block(self):
        assert minkowski_distance(V(10, 20, 30), V(13, 24, 30), 1) == 7.0

    def test_general_order(self):
        d = minkowski_distance(V(0, 0, 0), V(1, 1, 1), 3)
        assert d == pytest.approx(3 ** (1 / 3))

    def test_order_validation(self):
        with pytest.raises(ValueError):
            minkowski_distance(V(0, 0, 0), V(1, 1, 1), 0.5)

    def test_symmetry_and_triangle(self):
        rng = np.random.default_rng(10)
        for _ in range(300):
            a, b, c = (random_vector(rng, allow_zero=True) for _ in range(3))
            for p in (1.0, 2.0):
                assert minkowski_distance(a, b, p) == minkowski_distance(b, a, p)
                assert minkowski_distance(a, c, p) <= (
                    minkowski_distance(a, b, p) + minkowski_distance(b, c, p) + 1e-9
                )


class TestAngularExact:
    def test_self_angle_zero(self):
        assert angular_distance_exact(V(100, 50, 25), V(100, 50, 25)) == 0.0

    def test_orthogonal_axes(self):
        assert angular_distance_exact(V(255, 0, 0), V(0, 255, 0)) == pytest.approx(
            math.pi / 2, abs=1e-12
        )

    def test_forty_five_degrees(self):
        want = math.acos(1 / math.sqrt(2))
        got = angular_distance_exact(V(255, 0, 0), V(255, 255, 0))
        assert got == pytest.approx(want, abs=1e-12)

    def test_parallel_integer_vectors_exactly_zero(self):
        # Cauchy-Schwarz equality makes the quotient exactly 1 in floats
        for alpha in (2, 3, 7, 40):
            assert angular_distance_exact(V(1, 2, 3), V(alpha, 2 * alpha, 3 * alpha)) == 0.0

    def test_zero_vector_policy(self):
        # zero vector acts as the gray direction
        assert angular_distance_exact(V(0, 0, 0), V(9, 9, 9)) == 0.0
        want = math.acos(1 / math.sqrt(3))
        assert angular_distance_exact(V(0, 0, 0), V(255, 0, 0)) == pytest.approx(want)
        assert angular_distance_exact(V(0, 0, 0), V(0, 0, 0)) == 0.0

    def test_range_and_symmetry(self):
        rng = np.random.default_rng(11)
        for _ in range(500):
            a, b = random_vector(rng), random_vector(rng)
            d = angular_distance_exact(a, b)
            assert 0.0 <= d <= math.pi / 2 + 1e-12
            assert d == angular_distance_exact(b, a)

    def test_scale_invariance(self):
        rng = np.random.default_rng(12)
        for _ in range(200):
            a, b = random_vector(rng), random_vector(rng)
            alpha = rng.uniform(0.01, 10.0)
            d0 = angular_distance_exact(a, b)
            d1 = angular_distance_exact(V(a.x1 * alpha, a.x2 * alpha, a.x3 * alpha), b)
            assert d1 == pytest.approx(d0, abs=1e-9)


class TestFastAcos:
    def test_z_one_hits_asin_constant(self):
        table = FastAcosTable.for_degree(4)
        assert fast_acos(1.0, table) == table.asin_poly.coefficients[0]
        assert abs(fast_acos(1.0, table)) <= 2.098e-05

    def test_z_zero_hits_acos_constant(self):
        table = FastAcosTable.for_degree(4)
        assert fast_acos(0.0, table) == table.acos_poly.coefficients[0] == 1.570786
        assert abs(fast_acos(0.0, table) - math.pi / 2) <= 1.049e-05

    def test_branch_point_consistency(self):
        table = FastAcosTable.for_degree(4)
        left = table.acos_poly(0.5 - 1e-15)
        right = table.asin_poly(math.sqrt(1.0 - 0.5))
        true = math.acos(0.5)
        tol = 2.1e-05 + 1.1e-05
        assert abs(left - right) <= tol
        assert abs(left - true) <= tol and abs(right - true) <= tol

    def test_clamps_out_of_domain(self):
        table = FastAcosTable.for_degree(4)
        assert fast_acos(1.0 + 1e-9, table) == fast_acos(1.0, table)
        assert fast_acos(-0.5, table) == fast_acos(0.0, table)

    def test_monotone_non_increasing(self):
        table = FastAcosTable.for_degree(4)
        z = np.linspace(0.0, 1.0, 10**5)
        vals = np.array([fast_acos(float(x), table) for x in z])
        slack = 2 * table.max_error
        assert (np.diff(vals) <= slack).all()

    @pytest.mark.parametrize("q,bound", [(2, 2.0e-03), (3, 1.5e-04), (4, 2.2e-05)])
    def test_composite_error_sampled(self, q, bound):
        table = FastAcosTable.for_degree(q)
        z = np.linspace(0.0, 1.0, 20001)
        err = max(abs(fast_acos(float(x), table) - math.acos(float(x))) for x in z)
        assert err <= bound


class TestAngularMinimax:
    def test_self_within_bound(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            a = random_vector(rng)
            assert abs(angular_distance_minimax(a, a)) <= 2.098e-05

    def test_orthogonal_within_bound(self):
        d = angular_distance_minimax(V(255, 0, 0), V(0, 255, 0))
        assert abs(d - math.pi / 2) <= 1.049e-05

    def test_random_pairs_against_library_acos(self):
        rng = np.random.default_rng(14)
        worst = 0.0
        for _ in range(10**4):
            a, b = random_vector(rng), random_vector(rng)
            err = abs(angular_distance_minimax(a, b) - angular_distance_exact(a, b))
            worst = max(worst, err)
        assert worst <= 2.2e-05

    def test_lower_degrees(self):
        rng = np.random.default_rng(15)
        for q, bound in ((2, 2.0e-03), (3, 1.5e-04)):
            table = FastAcosTable.for_degree(q)
            for _ in range(2000):
                a, b = random_vector(rng), random_vector(rng)
                err = abs(angular_distance_minimax(a, b, table) - angular_distance_exact(a, b))
                assert err <= bound

    def test_symmetry_bitwise(self):
        rng = np.random.default_rng(16)
        for _ in range(300):
            a, b = random_vector(rng), random_vector(rng)
            assert angular_distance_minimax(a, b) == angular_distance_minimax(b, a)

    def test_scale_invariance_within_bound(self):
        rng = np.random.default_rng(17)
        table = FastAcosTable.for_degree(4)
        for _ in range(200):
            a, b = random_vector(rng), random_vector(rng)
            alpha = rng.uniform(0.01, 10.0)
            d0 = angular_distance_minimax(a, b, table)
            d1 = angular_distance_minimax(V(a.x1 * alpha, a.x2 * alpha, a.x3 * alpha), b, table)
            assert abs(d1 - d0) <= 2 * table.max_error


class TestChromaticity:
    def test_single_channel(self):
        assert chromaticity(V(255, 0, 0)) == V(1, 0, 0)

    def test_gray_axis(self):
        c = chromaticity(V(100, 100, 100))
        assert c == V(1 / 3, 1 / 3, 1 / 3)

    def test_zero_vector_policy(self):
        assert chromaticity(V(0, 0, 0)) == V(1 / 3, 1 / 3, 1 / 3)

    def test_unit_sum(self):
        rng = np.random.default_rng(18)
        for _ in range(500):
            c = chromaticity(random_vector(rng))
            assert c.x1 + c.x2 + c.x3 == pytest.approx(1.0, abs=1e-12)
            assert min(c) >= 0.0 and max(c) <= 1.0


class TestChromaticityDistance:
    def test_scale_invariance_exact_double(self):
        assert chromaticity_distance(V(50, 100, 150), V(100, 200, 300)) == 0.0

    def test_red_green(self):
        assert chromaticity_distance(V(255, 0, 0), V(0, 255, 0)) == pytest.approx(
            math.sqrt(2), abs=1e-12
        )

    def test_yellow_red(self):
        want = math.sqrt(0.25 + 0.25)
        got = chromaticity_distance(V(255, 255, 0), V(255, 0, 0))
        assert got == pytest.approx(want, abs=1e-12)

    def test_scale_invariance_random(self):
        rng = np.random.default_rng(19)
        for _ in range(200):
            a, b = random_vector(rng), random_vector(rng)
            alpha = float(rng.integers(1, 11))
            scaled = V(a.x1 * alpha, a.x2 * alpha, a.x3 * alpha)
            assert chromaticity_distance(scaled, b) == pytest.approx(
                chromaticity_distance(a, b), abs=1e-9
            )

    def test_symmetry(self):
        rng = np.random.default_rng(20)
        for _ in range(300):
            a, b = random_vector(rng), random_vector(rng)
            assert chromaticity_distance(a, b) == chromaticity_distance(b, a)


class TestCalibratedAngular:
    def test_parallel_gives_intercept(self):
        got = calibrated_angular(V(10, 20, 30), V(20, 40, 60))
        assert got == CALIBRATION_INTERCEPT == 0.027664

    def test_red_green_extreme(self):
        # the fit targets typical pairs; the extreme overshoots the true angle
        got = calibrated_angular(V(255, 0, 0), V(0, 255, 0))
        want = CALIBRATION_SLOPE * math.sqrt(2) + CALIBRATION_INTERCEPT
        assert got == pytest.approx(want, abs=1e-12)
        assert got == pytest.approx(2.0590, abs=1e-3)
        assert abs(got - math.pi / 2) > 0.4

    def test_monotone_in_chromaticity_distance(self):
        rng = np.random.default_rng(21)
        pairs = [(random_vector(rng), random_vector(rng)) for _ in range(100)]
        pairs.sort(key=lambda ab: chromaticity_distance(*ab))
        vals = [calibrated_angular(a, b) for a, b in pairs]
        assert vals == sorted(vals)

    def test_slope_validation(self):
        with pytest.raises(ValueError):
            calibrated_angular(V(1, 1, 1), V(2, 2, 2), slope=0.0)


class TestCoefficientData:
    def test_table_shapes(self):
        for q in (2, 3, 4):
            eps_s, cs = ASIN_COEFFICIENTS[q]
            eps_a, ca = ACOS_COEFFICIENTS[q]
            assert len(cs) == q + 1 and len(ca) == q + 1
            assert eps_s > 0 and eps_a > 0

    def test_data_file_matches_embedded(self):
        table = load_coefficient_table()
        for q in (2, 3, 4):
            assert table[("asin", q)] == ASIN_COEFFICIENTS[q]
            assert table[("acos", q)] == ACOS_COEFFICIENTS[q]

    def test_fast_acos_table_anchors(self):
        for q in (2, 3, 4):
            t = FastAcosTable.for_degree(q)
            assert abs(t.asin_poly.coefficients[1] - math.sqrt(2)) <= 0.05
            assert abs(t.acos_poly.coefficients[0] - math.pi / 2) <= 0.01

    def test_bad_degree(self):
        with pytest.raises(ValueError):
            FastAcosTable.for_degree(5)

    def test_minimax_poly_validation(self):
        with pytest.raises(ValueError):
            MinimaxPoly(2, (1.0, 2.0), (0.0, 1.0), 1e-3)
        with pytest.raises(ValueError):
            MinimaxPoly(1, (1.0, 2.0), (1.0, 0.0), 1e-3)
        with pytest.raises(ValueError):
            MinimaxPoly(1, (1.0, 2.0), (0.0, 1.0), 0.0)

    def test_table_invariant_enforced(self):
        bad_asin = MinimaxPoly(2, (0.0, 2.0, 0.0), (0.0, 0.7071), 1e-3)
        good_acos = FastAcosTable.for_degree(2).acos_poly
        with pytest.raises(ValueError):
            FastAcosTable(acos_poly=good_acos, asin_poly=bad_asin)

    def test_nested_multiplication(self):
        poly = MinimaxPoly(2, (1.0, -2.0, 3.0), (0.0, 1.0), 1.0)
        z = 0.37
        assert poly(z) == 1.0 + z * (-2.0 + z * 3.0)
