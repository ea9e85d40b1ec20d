import math

import pytest
from hypothesis import given, settings, strategies as st

from xqcalc import (
    Poly,
    PolyMap,
    UniPoly,
    VectorFieldPoly,
    DimensionMismatchError,
    divergence,
    gradient,
    laplacian,
    integrate_1d,
    QuadConfig,
    wallis_full,
    wallis_half,
)

from conftest import rel_err


def x(dim=1):
    return Poly.variable(dim, 0)


def y(dim=2):
    return Poly.variable(dim, 1)


class TestArithmetic:
    def test_add_collects_terms(self):
        assert x() + x() == Poly(1, {(1,): 2.0})

    def test_product_difference_of_squares(self):
        p = x(2) + y(2)
        q = x(2) - y(2)
        assert p * q == Poly(2, {(2, 0): 1.0, (0, 2): -1.0})

    def test_scale_by_zero_empties_terms(self):
        assert (x() ** 2).scale(0.0).terms == {}

    def test_add_requires_matching_dim(self):
        with pytest.raises(DimensionMismatchError):
            x(1) + x(2)

    def test_zero_coefficients_pruned(self):
        p = Poly(2, {(1, 0): 1.0, (0, 1): 0.0})
        assert list(p.terms) == [(1, 0)]

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            Poly(1, {(-1,): 1.0})


class TestEval:
    def test_two_variable_value(self):
        p = x(2) ** 2 + y(2)
        assert p.eval((2.0, 1.0)) == 5.0

    def test_constant(self):
        assert Poly.constant(3, 7.0).eval((9.0, -2.0, 0.5)) == 7.0

    def test_product_of_variables(self):
        p = Poly.monomial(3, (1, 1, 1))
        assert p.eval((1.0, 2.0, 3.0)) == 6.0

    def test_arity_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            x(2).eval((1.0,))


class TestPartial:
    def test_power_rule(self):
        assert (x() ** 3).partial(0) == Poly(1, {(2,): 3.0})

    def test_derivative_of_independent_variable(self):
        assert (x(2) ** 2).partial(1).is_zero()

    def test_mixed_monomial(self):
        p = Poly.monomial(3, (1, 1, 2))
        assert p.partial(2) == Poly(3, {(1, 1, 1): 2.0})


class TestCompose:
    def test_shift_substitution(self):
        p = x() ** 2
        shift = PolyMap(1, (x() + 1.0,))
        assert p.compose(shift) == Poly(1, {(2,): 1.0, (1,): 2.0, (0,): 1.0})

    def test_scaling_substitution(self):
        p = x(2) ** 2 + y(2) ** 2
        assert p.compose(PolyMap.scaling(2.0, 2)) == p.scale(4.0)

    def test_projection_pullback_keeps_monomial(self):
        p = Poly.variable(2, 0)
        embedded = p.embed(3, (0, 1))
        assert embedded == Poly.monomial(3, (1, 0, 0))

    def test_compose_dim_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            x(1).compose(PolyMap.identity(2))


class TestUniPoly:
    def test_antiderivative_power_rule(self):
        assert UniPoly((0.0, 0.0, 3.0)).antiderivative() == UniPoly((0.0, 0.0, 0.0, 1.0))

    def test_antiderivative_of_zero(self):
        assert UniPoly(()).antiderivative() == UniPoly(())

    def test_antiderivative_affine(self):
        assert UniPoly((1.0, 1.0)).antiderivative() == UniPoly((0.0, 1.0, 0.5))

    def test_antiderivative_vanishes_at_zero(self):
        assert UniPoly((2.0, -1.0, 4.0)).antiderivative().eval(0.0) == 0.0

    def test_trailing_zeros_stripped(self):
        assert UniPoly((1.0, 0.0, 0.0)).coeffs == (1.0,)

    def test_eval_horner(self):
        p = UniPoly((1.0, -2.0, 3.0))
        assert p.eval(2.0) == 1.0 - 4.0 + 12.0


class TestVectorCalculus:
    def test_laplacian_of_radius_squared(self):
        p = sum(
            (Poly.variable(3, i) ** 2 for i in range(3)), start=Poly.zero(3)
        )
        assert laplacian(p) == Poly.constant(3, 6.0)

    def test_divergence_of_identity_field(self):
        field = VectorFieldPoly((Poly.variable(2, 0), Poly.variable(2, 1)))
        assert divergence(field) == Poly.constant(2, 2.0)

    def test_gradient_of_product(self):
        p = Poly.monomial(2, (1, 1))
        grad = gradient(p)
        assert grad.components == (Poly.variable(2, 1), Poly.variable(2, 0))


class TestWallis:
    def test_full_period_base_case(self):
        assert wallis_full(0, 0) == pytest.approx(2.0 * math.pi, rel=1e-15)

    def test_full_period_cos_squared(self):
        # independent oracle: composite quadrature of cos^2 over [0, 2*pi]
        oracle = integrate_1d(lambda t: math.cos(t) ** 2, 0.0, 2.0 * math.pi, QuadConfig(16, 4))
        assert wallis_full(2, 0) == pytest.approx(math.pi, rel=1e-14)
        assert wallis_full(2, 0) == pytest.approx(oracle, abs=1e-12)

    def test_full_period_odd_vanishes(self):
        assert wallis_full(1, 0) == 0.0
        assert wallis_full(2, 3) == 0.0

    def test_half_period_sin(self):
        oracle = integrate_1d(lambda t: math.sin(t), 0.0, math.pi, QuadConfig(16, 4))
        assert wallis_half(1, 0) == pytest.approx(2.0, rel=1e-15)
        assert wallis_half(1, 0) == pytest.approx(oracle, abs=1e-12)

    def test_half_period_base_case(self):
        assert wallis_half(0, 0) == pytest.approx(math.pi, rel=1e-15)

    def test_half_period_odd_cos_vanishes(self):
        assert wallis_half(0, 1) == 0.0
        assert wallis_half(4, 3) == 0.0

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            wallis_full(-1, 0)

    @pytest.mark.parametrize("a", range(0, 11, 2))
    @pytest.mark.parametrize("b", range(0, 11, 2))
    def test_closed_forms_match_quadrature(self, a, b):
        cfg = QuadConfig(16, 4)
        full = integrate_1d(lambda t: math.cos(t) ** a * math.sin(t) ** b, 0.0, 2.0 * math.pi, cfg)
        half = integrate_1d(lambda t: math.sin(t) ** a * math.cos(t) ** b, 0.0, math.pi, cfg)
        assert wallis_full(a, b) == pytest.approx(full, abs=1e-8)
        assert wallis_half(a, b) == pytest.approx(half, abs=1e-8)


# -- property tests ---------------------------------------------------------

coeffs = st.integers(min_value=-3, max_value=3)


@st.composite
def unipolys(draw, max_degree=12):
    n = draw(st.integers(min_value=0, max_value=max_degree + 1))
    return UniPoly([float(draw(coeffs)) for _ in range(n)])


@st.composite
def polys(draw, dim=None, max_degree=8):
    d = dim if dim is not None else draw(st.integers(min_value=1, max_value=3))
    n_terms = draw(st.integers(min_value=1, max_value=5))
    terms = {}
    for _ in range(n_terms):
        exps = tuple(
            draw(st.integers(min_value=0, max_value=max_degree)) for _ in range(d)
        )
        if sum(exps) <= max_degree:
            terms[exps] = float(draw(coeffs))
    return Poly(d, terms)


@settings(max_examples=60, deadline=None)
@given(unipolys())
def test_derivative_inverts_antiderivative(p):
    roundtrip = p.antiderivative().derivative()
    assert len(roundtrip.coeffs) == len(p.coeffs)
    for a, b in zip(roundtrip.coeffs, p.coeffs):
        assert rel_err(a, b) < 1e-14


@settings(max_examples=60, deadline=None)
@given(polys())
def test_laplacian_is_div_of_grad(p):
    direct = laplacian(p)
    composed = divergence(gradient(p))
    diff = direct - composed
    scale = max(
        1.0,
        max((abs(c) for c in direct.terms.values()), default=0.0),
    )
    assert max((abs(c) for c in diff.terms.values()), default=0.0) / scale < 1e-13


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_compose_respects_products(data):
    dim = data.draw(st.integers(1, 3))
    src = data.draw(st.integers(1, 3))
    p = data.draw(polys(dim=dim, max_degree=4))
    q = data.draw(polys(dim=dim, max_degree=4))
    f = PolyMap(src, tuple(Poly.variable(src, i % src) + float(i) for i in range(dim)))
    lhs = (p * q).compose(f)
    rhs = p.compose(f) * q.compose(f)
    diff = lhs - rhs
    scale = max(1.0, max((abs(c) for c in lhs.terms.values()), default=0.0))
    assert max((abs(c) for c in diff.terms.values()), default=0.0) / scale < 1e-12
