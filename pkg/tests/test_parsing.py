import math
import random

import pytest

from xqcalc import Poly, PolyParseError, format_poly, parse_poly

from conftest import random_int_poly


class TestGrammar:
    def test_two_variable_example(self):
        p = parse_poly("x^2*y - 3", 2)
        assert p == Poly(2, {(2, 1): 1.0, (0, 0): -3.0})

    def test_pi_constant(self):
        p = parse_poly("pi*z", 3)
        assert p == Poly(3, {(0, 0, 1): math.pi})

    def test_decimal_literal(self):
        assert parse_poly("2.5*x", 1) == Poly(1, {(1,): 2.5})

    def test_leading_dot_literal(self):
        assert parse_poly(".5", 1) == Poly(1, {(0,): 0.5})

    def test_whitespace_insensitive(self):
        assert parse_poly("  x ^ 2 *y-3 ", 2) == parse_poly("x^2*y-3", 2)

    def test_parentheses(self):
        assert parse_poly("(x + 1)^2", 1) == Poly(1, {(2,): 1.0, (1,): 2.0, (0,): 1.0})

    def test_unary_minus(self):
        assert parse_poly("-x^2 + -1", 1) == Poly(1, {(2,): -1.0, (0,): -1.0})

    def test_subtraction_chain(self):
        assert parse_poly("3 - x - x", 1) == Poly(1, {(0,): 3.0, (1,): -2.0})


class TestErrors:
    def test_negative_exponent_rejected(self):
        with pytest.raises(PolyParseError) as err:
            parse_poly("x^-1", 1)
        assert err.value.position == 2

    def test_fractional_exponent_rejected(self):
        with pytest.raises(PolyParseError):
            parse_poly("x^1.5", 1)

    def test_implicit_multiplication_rejected(self):
        with pytest.raises(PolyParseError) as err:
            parse_poly("2x", 1)
        assert err.value.position == 1

    def test_variable_beyond_dimension(self):
        with pytest.raises(PolyParseError) as err:
            parse_poly("y", 1)
        assert "dimension 1" in str(err.value)
        assert err.value.position == 0

    def test_unknown_name(self):
        with pytest.raises(PolyParseError):
            parse_poly("foo + 1", 2)

    def test_unexpected_character(self):
        with pytest.raises(PolyParseError):
            parse_poly("x + $", 1)

    def test_dangling_operator(self):
        with pytest.raises(PolyParseError):
            parse_poly("x *", 1)

    def test_unbalanced_parenthesis(self):
        with pytest.raises(PolyParseError):
            parse_poly("(x + 1", 1)


class TestRoundTrip:
    def test_zero(self):
        assert format_poly(Poly.zero(2)) == "0"
        assert parse_poly("0", 2) == Poly.zero(2)

    def test_unit_coefficients_have_no_prefix(self):
        assert format_poly(Poly.monomial(2, (2, 1))) == "x^2*y"
        assert format_poly(Poly.monomial(1, (1,), -1.0)) == "-x"

    @pytest.mark.parametrize("dim", [1, 2, 3])
    def test_random_polynomials_round_trip(self, dim):
        rng = random.Random(999 + dim)
        for _ in range(60):
            p = random_int_poly(rng, dim, 8)
            if rng.random() < 0.3:
                p = p * math.pi
            assert parse_poly(format_poly(p), dim) == p
