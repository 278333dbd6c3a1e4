from fractions import Fraction

import pytest

from entmom.edgeworth import adaptive_simpson
from entmom.purity import (
    DimensionPair,
    SchmidtVector,
    density_p2,
    density_p2_cdf,
    density_p2_normalization,
    moment_R,
    moment_R_from_integrals,
    moment_R_p2,
    moment_R_symmetric,
    moment_vector,
    simplex_integral_ordered,
    simplex_integral_symmetrized,
)
from entmom.purity import _symmetric_sum


class TestDimensionPair:
    def test_swap_enforces_order(self):
        d = DimensionPair(5, 2)
        assert (d.p, d.q) == (2, 5)
        assert d.r == 3

    def test_bad_dimensions(self):
        with pytest.raises(ValueError):
            DimensionPair(0, 3)

    def test_descriptor(self):
        assert DimensionPair(3, 4).descriptor == "purity(3,4)"


class TestMomentR:
    def test_single_coefficient_forces_unit_purity(self):
        assert moment_R(DimensionPair(1, 5), 3) == 1

    def test_mean_2x2_is_lubkin(self):
        # kappa_1 = (p+q)/(1+pq) at p=q=2
        assert moment_R(DimensionPair(2, 2), 1) == Fraction(4, 5)

    def test_second_moment_2x4(self):
        # kappa_2 + kappa_1^2 with kappa_1 = 2/3, kappa_2 = 1/99
        assert Fraction(1, 99) + Fraction(2, 3) ** 2 == Fraction(5, 11)
        assert moment_R(DimensionPair(2, 4), 2) == Fraction(5, 11)

    def test_zeroth_moment_is_one(self):
        for dims in (DimensionPair(2, 2), DimensionPair(3, 7), DimensionPair(1, 1)):
            assert moment_R(dims, 0) == 1

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            moment_R(DimensionPair(2, 2), -1)

    @pytest.mark.parametrize("p", range(2, 7))
    @pytest.mark.parametrize("q_off", range(0, 3))
    def test_monotone_and_bounded(self, p, q_off):
        dims = DimensionPair(p, p + q_off)
        values = [moment_R(dims, n) for n in range(0, 10)]
        for n in range(9):
            assert values[n + 1] <= values[n]
        for n, mu in enumerate(values):
            assert Fraction(1, p**n) <= mu <= 1

    def test_hankel_determinants_nonnegative(self):
        # Hausdorff-type positivity of (1, mu_1, ..., mu_4) at small order
        for p in range(2, 7):
            for q in range(p, 7):
                mu = [Fraction(1)] + list(moment_vector(DimensionPair(p, q), 4).values)
                h2 = mu[0] * mu[2] - mu[1] * mu[1]
                h3 = (
                    mu[0] * (mu[2] * mu[4] - mu[3] * mu[3])
                    - mu[1] * (mu[1] * mu[4] - mu[3] * mu[2])
                    + mu[2] * (mu[1] * mu[3] - mu[2] * mu[2])
                )
                assert h2 >= 0
                assert h3 >= 0


class TestMomentRSymmetric:
    def test_mean_3x3(self):
        assert moment_R_symmetric(DimensionPair(3, 3), 1) == Fraction(3, 5)
        assert moment_R_symmetric(DimensionPair(3, 3), 1) == moment_R(DimensionPair(3, 3), 1)

    def test_cross_formula_2x8_order4(self):
        dims = DimensionPair(2, 8)
        assert moment_R_symmetric(dims, 4) == moment_R(dims, 4)

    def test_degenerate_p1(self):
        assert moment_R_symmetric(DimensionPair(1, 4), 2) == 1

    @pytest.mark.parametrize("p", range(2, 5))
    @pytest.mark.parametrize("n", range(0, 5))
    def test_agrees_with_partition_sum(self, p, n):
        for q in range(p, p + 3):
            dims = DimensionPair(p, q)
            assert moment_R_symmetric(dims, n) == moment_R(dims, n)

    def test_self_consistency_over_larger_part_count(self):
        # running the symmetric sum over q parts instead of p gives the same
        # value: extra positions only admit zero exponents
        for p, q in ((2, 3), (2, 5), (3, 4)):
            for n in range(1, 4):
                assert _symmetric_sum(q, p, q, n) == _symmetric_sum(p, p, q, n)

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            moment_R_symmetric(DimensionPair(2, 2), -2)


class TestMomentRP2:
    def test_trivial_normalization(self):
        assert moment_R_p2(2, 0) == 1

    def test_lubkin_at_q2(self):
        assert moment_R_p2(2, 1) == Fraction(4, 5)

    def test_matches_partition_sum_q4(self):
        assert moment_R_p2(4, 2) == Fraction(5, 11)

    @pytest.mark.parametrize("q", [2, 4, 8, 16])
    def test_equals_moment_R(self, q):
        for n in range(0, 6):
            assert moment_R_p2(q, n) == moment_R(DimensionPair(2, q), n)

    def test_bad_args(self):
        with pytest.raises(ValueError):
            moment_R_p2(1, 2)
        with pytest.raises(ValueError):
            moment_R_p2(4, -1)


def simpson_fixed(f, a, b, n=2000):
    # plain composite Simpson oracle on an even grid
    h = (b - a) / n
    acc = f(a) + f(b)
    for i in range(1, n):
        acc += f(a + i * h) * (4 if i % 2 else 2)
    return acc * h / 3.0


class TestSimplexIntegrals:
    def test_ordered_closed_form_examples(self):
        d = DimensionPair(2, 2)
        assert simplex_integral_ordered((0, 0), d) == Fraction(1, 3)
        assert simplex_integral_ordered((1, 0), d) == 0
        assert simplex_integral_ordered((4,), DimensionPair(1, 1)) == 1

    def test_symmetrized_examples(self):
        d = DimensionPair(2, 2)
        assert simplex_integral_symmetrized((0, 0), d) == Fraction(2, 3)
        assert simplex_integral_symmetrized((3,), DimensionPair(1, 1)) == 1

    def test_part_count_must_match(self):
        with pytest.raises(ValueError):
            simplex_integral_ordered((0, 0, 0), DimensionPair(2, 2))

    def test_ratio_construction_reproduces_moments(self):
        for p in range(1, 5):
            for q in range(p, p + 3):
                dims = DimensionPair(p, q)
                for n in range(0, 4):
                    assert moment_R_from_integrals(dims, n) == moment_R(dims, n)

    def test_ordered_integral_matches_simplex_quadrature(self):
        # p = 2, r = 0: J(n) = 2 * int_0^1 (x2 - x1) x1^{n1} x2^{n2+1} dx2
        # with x1 = 1 - x2 after integrating out the delta
        d = DimensionPair(2, 2)
        for parts in ((0, 0), (1, 0), (2, 0), (1, 1)):
            n1, n2 = parts

            def integrand(x2):
                x1 = 1.0 - x2
                return 2.0 * (x2 - x1) * x1**n1 * x2 ** (n2 + 1)

            quad = simpson_fixed(integrand, 0.0, 1.0)
            assert abs(quad - float(simplex_integral_ordered(parts, d))) < 1e-8


class TestDensityP2:
    def test_outside_support_is_zero(self):
        assert density_p2(0.4, 4) == 0.0
        assert density_p2(1.2, 4) == 0.0

    def test_exact_normalization_constant(self):
        assert density_p2_normalization(2) == 3
        assert density_p2_normalization(4) == Fraction(105, 2)

    @pytest.mark.parametrize("q", [2, 4, 8])
    def test_integrates_to_one(self, q):
        val = adaptive_simpson(lambda x: density_p2(x, q), 0.5, 1.0, tol=1e-12)
        assert abs(val - 1.0) < 1e-10

    def test_mean_q2_matches_first_moment(self):
        mean = adaptive_simpson(lambda x: x * density_p2(x, 2), 0.5, 1.0, tol=1e-12)
        assert abs(mean - float(moment_R(DimensionPair(2, 2), 1))) < 1e-10

    def test_q_below_two_rejected(self):
        with pytest.raises(ValueError):
            density_p2(0.7, 1)

    def test_cdf_endpoints_and_monotonicity(self):
        assert density_p2_cdf(0.3, 8) == 0.0
        assert density_p2_cdf(1.0, 8) == 1.0
        values = [density_p2_cdf(0.5 + 0.5 * i / 40, 8) for i in range(41)]
        assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("q", [2, 4, 8])
    def test_cdf_matches_quadrature_of_density(self, q):
        for r in (0.55, 0.7, 0.9):
            quad = adaptive_simpson(lambda x: density_p2(x, q), 0.5, r, tol=1e-12)
            assert abs(density_p2_cdf(r, q) - quad) < 1e-9

    def test_cdf_matches_regularized_incomplete_beta(self):
        scipy_special = pytest.importorskip("scipy.special")
        for q in (2, 4, 8):
            for r in (0.55, 0.7, 0.9, 0.99):
                expect = scipy_special.betainc(1.5, q - 1, 2 * r - 1)
                assert abs(density_p2_cdf(r, q) - expect) < 1e-12


class TestSchmidtVector:
    def test_valid_vector(self):
        v = SchmidtVector((0.25, 0.75))
        assert v.purity() == pytest.approx(0.625)

    def test_rejects_bad_sum(self):
        with pytest.raises(ValueError):
            SchmidtVector((0.5, 0.2))

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            SchmidtVector((-0.1, 1.1))
