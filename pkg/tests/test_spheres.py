import math

import pytest

from xqcalc import (
    BallUnit,
    Family,
    FamilyKind,
    Poly,
    QuadConfig,
    SphereUnit,
    UniPoly,
    VectorFieldPoly,
    ball_as_integral_check,
    ball_moment,
    ball_unit,
    divergence,
    family_at,
    flux_unit_sphere,
    homothety_scaling_checks,
    integrate_nd,
    laplacian,
    pair,
    pair_family,
    parse_poly,
    sphere_moment,
    sphere_unit,
    total,
)

from conftest import random_int_poly, rel_err

PI = math.pi


class TestTotals:
    @pytest.mark.parametrize("dim,expected", [(1, 2.0), (2, 2 * PI), (3, 4 * PI)])
    def test_sphere_totals(self, dim, expected):
        assert rel_err(total(sphere_unit(dim)), expected) < 1e-14

    @pytest.mark.parametrize("dim,expected", [(1, 2.0), (2, PI), (3, 4 * PI / 3)])
    def test_ball_totals(self, dim, expected):
        assert rel_err(total(ball_unit(dim)), expected) < 1e-14

    def test_unsupported_dimension(self):
        with pytest.raises(ValueError):
            sphere_unit(4)


class TestMoments:
    def test_polar_axis_second_moment(self):
        # quadrature oracle: cos^2(phi) * sin(phi) over the standard box
        oracle = integrate_nd(
            lambda t, p: math.cos(p) ** 2 * math.sin(p),
            [(0.0, 2 * PI), (0.0, PI)],
            QuadConfig(14, 2),
        )
        value = pair(SphereUnit(3), Poly.monomial(3, (0, 0, 2)))
        assert value == pytest.approx(4 * PI / 3, rel=1e-14)
        assert value == pytest.approx(oracle, abs=1e-9)

    def test_two_point_sphere_parity(self):
        assert sphere_moment(1, (4,)) == 2.0
        assert sphere_moment(1, (3,)) == 0.0

    def test_ball_moment_is_shell_weighted(self):
        # integrating u^(n-1+|m|) over [0,1] divides the sphere moment
        assert ball_moment(2, (2, 0)) == pytest.approx(sphere_moment(2, (2, 0)) / 4)
        assert ball_moment(3, (0, 0, 0)) == pytest.approx(4 * PI / 3, rel=1e-12)

    def test_odd_moments_vanish(self):
        assert sphere_moment(2, (1, 2)) == 0.0
        assert sphere_moment(3, (2, 1, 0)) == 0.0
        assert ball_moment(3, (0, 0, 3)) == 0.0


class TestFamilyPairings:
    def test_diluted_sphere_second_moment(self):
        fam = Family(FamilyKind.SPHERE_DILUTED, 2)
        assert pair_family(fam, Poly.monomial(2, (2, 0))) == UniPoly((0.0, 0.0, PI))

    def test_undiluted_ball_second_moment(self):
        fam = Family(FamilyKind.BALL_UNDILUTED, 2)
        series = pair_family(fam, Poly.monomial(2, (2, 0)))
        assert series == UniPoly((0.0, 0.0, 0.0, 0.0, PI / 4))

    def test_dim1_ball_matches_direct_integral(self):
        # oracle: the integral of x^2 over [-t, t] is (2/3) t^3
        fam = Family(FamilyKind.BALL_UNDILUTED, 1)
        series = pair_family(fam, Poly.monomial(1, (2,)))
        assert series == UniPoly((0.0, 0.0, 0.0, 2.0 / 3.0))

    def test_zero_test_function(self):
        fam = Family(FamilyKind.SPHERE_UNDILUTED, 3)
        assert pair_family(fam, Poly.zero(3)).is_zero()


class TestFamilyAt:
    def test_collapse_at_zero(self, rng):
        for dim in (1, 2, 3):
            psi = random_int_poly(rng, dim, 5)
            fam = Family(FamilyKind.SPHERE_DILUTED, dim)
            value = pair(family_at(fam, 0.0), psi)
            expected = total(SphereUnit(dim)) * psi.eval((0.0,) * dim)
            assert rel_err(value, expected, abs(expected)) < 1e-13

    def test_undiluted_ball_vanishes_at_zero(self, rng):
        for dim in (1, 2, 3):
            psi = random_int_poly(rng, dim, 5)
            fam = Family(FamilyKind.BALL_UNDILUTED, dim)
            assert pair(family_at(fam, 0.0), psi) == 0.0

    def test_dim1_sphere_families_coincide(self, rng):
        diluted = Family(FamilyKind.SPHERE_DILUTED, 1)
        undiluted = Family(FamilyKind.SPHERE_UNDILUTED, 1)
        for t in (-1.5, -0.3, 0.0, 0.8, 2.0):
            psi = random_int_poly(rng, 1, 6)
            assert pair(family_at(diluted, t), psi) == pytest.approx(
                pair(family_at(undiluted, t), psi), rel=1e-13, abs=1e-13
            )

    def test_tree_matches_series(self, rng):
        for kind in FamilyKind:
            for dim in (1, 2, 3):
                fam = Family(kind, dim)
                psi = random_int_poly(rng, dim, 6)
                series = pair_family(fam, psi)
                for t in (0.0, 1.0, -1.0, 0.35, -1.7):
                    assert rel_err(
                        pair(family_at(fam, t), psi),
                        series.eval(t),
                        series.max_abs_coeff(),
                    ) < 1e-12


class TestShellIntegral:
    def test_totals_dim1(self):
        lhs, rhs = ball_as_integral_check(
            Family(FamilyKind.BALL_UNDILUTED, 1), Poly.one(1)
        )
        assert lhs == UniPoly((0.0, 2.0))
        assert rhs == UniPoly((0.0, 2.0))

    def test_second_moment_dim2(self):
        lhs, rhs = ball_as_integral_check(
            Family(FamilyKind.BALL_UNDILUTED, 2), Poly.monomial(2, (2, 0))
        )
        # undiluted sphere pairs to pi * v^3; its primitive is (pi/4) t^4
        assert (lhs - rhs).max_abs_coeff() < 1e-15
        assert lhs == UniPoly((0.0, 0.0, 0.0, 0.0, PI / 4))

    def test_totals_dim3(self):
        lhs, rhs = ball_as_integral_check(
            Family(FamilyKind.BALL_UNDILUTED, 3), Poly.one(3)
        )
        assert (lhs - rhs).max_abs_coeff() < 1e-14
        assert lhs.coeff(3) == pytest.approx(4 * PI / 3, rel=1e-14)

    def test_random_agreement(self, rng):
        for dim in (1, 2, 3):
            for _ in range(15):
                psi = random_int_poly(rng, dim, 8)
                lhs, rhs = ball_as_integral_check(
                    Family(FamilyKind.BALL_UNDILUTED, dim), psi
                )
                scale = max(1.0, lhs.max_abs_coeff(), rhs.max_abs_coeff())
                assert (lhs - rhs).max_abs_coeff() / scale < 1e-13

    def test_requires_undiluted_ball(self):
        with pytest.raises(ValueError):
            ball_as_integral_check(Family(FamilyKind.BALL_DILUTED, 2), Poly.one(2))


class TestFlux:
    def test_identity_field_dim2(self):
        field = VectorFieldPoly((Poly.variable(2, 0), Poly.variable(2, 1)))
        assert flux_unit_sphere(field) == pytest.approx(2 * PI, rel=1e-14)

    def test_constant_field_vanishes_by_symmetry(self):
        field = VectorFieldPoly((Poly.one(2), Poly.zero(2)))
        assert flux_unit_sphere(field) == 0.0

    def test_two_point_flux(self):
        field = VectorFieldPoly((Poly.variable(1, 0),))
        assert flux_unit_sphere(field) == 2.0

    def test_divergence_theorem_random_fields(self, rng):
        for dim in (1, 2, 3):
            for _ in range(30):
                field = VectorFieldPoly(
                    tuple(random_int_poly(rng, dim, 6) for _ in range(dim))
                )
                flux = flux_unit_sphere(field)
                bulk = pair(BallUnit(dim), divergence(field))
                assert rel_err(flux, bulk) < 1e-10


class TestScalingRules:
    def test_divergence_rule_example(self):
        field = VectorFieldPoly((parse_poly("x^2", 2), Poly.zero(2)))
        assert homothety_scaling_checks(field, 2.0) == 0.0

    def test_ball_substitution_totals(self):
        assert homothety_scaling_checks(Poly.one(2), 1.7) < 1e-12

    def test_ball_substitution_second_moment(self):
        # both sides equal (pi/4) t^4 at any t
        residual = homothety_scaling_checks(Poly.monomial(2, (2, 0)), -1.3)
        assert residual < 1e-12

    def test_random_inputs(self, rng):
        for dim in (1, 2, 3):
            for _ in range(10):
                t = rng.uniform(-1.5, 1.5)
                field = VectorFieldPoly(
                    tuple(random_int_poly(rng, dim, 4) for _ in range(dim))
                )
                assert homothety_scaling_checks(field, t) < 1e-10
                assert homothety_scaling_checks(random_int_poly(rng, dim, 6), t) < 1e-9


class TestTimeDerivativeIdentities:
    """Coefficient-exact identities between the family pairing polynomials."""

    def check_all_dims(self, rng, sides, dims=(1, 2, 3), samples=25):
        for dim in dims:
            for _ in range(samples):
                psi = random_int_poly(rng, dim, 8)
                lhs, rhs = sides(dim, psi)
                scale = max(1.0, lhs.max_abs_coeff(), rhs.max_abs_coeff())
                assert (lhs - rhs).max_abs_coeff() / scale < 1e-12

    def test_diluted_sphere_derivative(self, rng):
        def sides(dim, psi):
            lhs = pair_family(Family(FamilyKind.SPHERE_DILUTED, dim), psi).derivative()
            rhs = pair_family(
                Family(FamilyKind.BALL_DILUTED, dim), laplacian(psi)
            ).shift(1)
            return lhs, rhs

        self.check_all_dims(rng, sides)

    def test_diluted_sphere_derivative_monomial_example(self):
        # dim 2, x^2: d/dt (pi t^2) = 2 pi t; t * <B^t, 2> = 2 pi t
        lhs = pair_family(Family(FamilyKind.SPHERE_DILUTED, 2), Poly.monomial(2, (2, 0))).derivative()
        assert lhs == UniPoly((0.0, 2 * PI))

    def test_undiluted_ball_derivative_is_undiluted_sphere(self, rng):
        def sides(dim, psi):
            lhs = pair_family(Family(FamilyKind.BALL_UNDILUTED, dim), psi).derivative()
            rhs = pair_family(Family(FamilyKind.SPHERE_UNDILUTED, dim), psi)
            return lhs, rhs

        self.check_all_dims(rng, sides)

    def test_dim1_undiluted_sphere_derivative(self, rng):
        def sides(dim, psi):
            lhs = pair_family(Family(FamilyKind.SPHERE_UNDILUTED, dim), psi).derivative()
            rhs = pair_family(Family(FamilyKind.BALL_UNDILUTED, dim), laplacian(psi))
            return lhs, rhs

        self.check_all_dims(rng, sides, dims=(1,))

    def test_scaled_undiluted_sphere_derivative(self, rng):
        def sides(dim, psi):
            s_t = pair_family(Family(FamilyKind.SPHERE_UNDILUTED, dim), psi)
            b_lap = pair_family(Family(FamilyKind.BALL_UNDILUTED, dim), laplacian(psi))
            return s_t.derivative().shift(1), s_t * float(dim - 1) + b_lap.shift(1)

        self.check_all_dims(rng, sides)

    def test_scaled_diluted_ball_derivative(self, rng):
        def sides(dim, psi):
            b_up = pair_family(Family(FamilyKind.BALL_DILUTED, dim), psi)
            s_up = pair_family(Family(FamilyKind.SPHERE_DILUTED, dim), psi)
            return b_up.derivative().shift(1), s_up - b_up * float(dim)

        self.check_all_dims(rng, sides)
