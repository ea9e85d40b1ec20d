import math
import random

import numpy as np
import pytest

from xqcalc import (
    Poly,
    QuadConfig,
    gauss_legendre,
    integrate_1d,
    integrate_nd,
    smoothfn_from_poly,
)

from conftest import random_int_poly


class TestNodes:
    @pytest.mark.parametrize("n", [2, 3, 5, 8, 16, 24, 40])
    def test_nodes_match_numpy(self, n):
        # numpy's rule is an independent implementation of the same table
        ours_x, ours_w = gauss_legendre(n)
        ref_x, ref_w = np.polynomial.legendre.leggauss(n)
        assert np.allclose(sorted(ours_x), ref_x, atol=1e-13)
        order = np.argsort(ours_x)
        assert np.allclose(np.array(ours_w)[order], ref_w, atol=1e-13)

    def test_weights_sum_to_interval_length(self):
        _, w = gauss_legendre(12)
        assert sum(w) == pytest.approx(2.0, abs=1e-14)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            QuadConfig(nodes=1)
        with pytest.raises(ValueError):
            QuadConfig(panels=0)


class TestIntegrate1d:
    def test_monomial(self):
        assert integrate_1d(lambda x: x * x, 0.0, 1.0) == pytest.approx(1 / 3, rel=1e-14)

    def test_full_period_cosine_vanishes(self):
        value = integrate_1d(math.cos, 0.0, 2.0 * math.pi)
        assert abs(value) < 1e-12

    def test_reversed_orientation_flips_sign(self):
        assert integrate_1d(lambda x: x * x, 1.0, 0.0) == pytest.approx(-1 / 3, rel=1e-14)

    def test_polynomial_exactness(self):
        rng = random.Random(7)
        cfg = QuadConfig(nodes=16, panels=2)
        for _ in range(25):
            p = random_int_poly(rng, 1, 12)
            a, b = rng.uniform(-2, 2), rng.uniform(-2, 2)
            exact = p.interval_integral(a, b)
            approx = integrate_1d(smoothfn_from_poly(p), a, b, cfg)
            assert approx == pytest.approx(exact, rel=1e-12, abs=1e-12)

    def test_additivity(self):
        rng = random.Random(11)
        for _ in range(20):
            p = random_int_poly(rng, 1, 8)
            f = smoothfn_from_poly(p)
            a, b, c = sorted(rng.uniform(-2, 2) for _ in range(3))
            whole = integrate_1d(f, a, c)
            split = integrate_1d(f, a, b) + integrate_1d(f, b, c)
            assert split == pytest.approx(whole, rel=1e-12, abs=1e-12)


class TestIntegrateNd:
    def test_separable_product(self):
        value = integrate_nd(lambda x, y: x * y, [(0.0, 1.0), (0.0, 1.0)])
        assert value == pytest.approx(0.25, rel=1e-13)

    def test_volume(self):
        value = integrate_nd(lambda x, y: 1.0, [(0.0, 2.0 * math.pi), (0.0, math.pi)])
        assert value == pytest.approx(2.0 * math.pi**2, rel=1e-13)

    def test_squared_product_matches_1d_oracle(self):
        # oracle: the two one-dimensional factors integrate to 1/3 each
        one_d = integrate_1d(lambda x: x * x, 0.0, 1.0)
        value = integrate_nd(lambda x, y: x * x * y * y, [(0.0, 1.0), (0.0, 1.0)])
        assert value == pytest.approx(one_d * one_d, rel=1e-12)
        assert value == pytest.approx(1 / 9, rel=1e-13)

    def test_fubini_order_swap(self):
        rng = random.Random(23)
        cfg = QuadConfig(nodes=12, panels=2)
        for _ in range(10):
            p = random_int_poly(rng, 2, 6)
            f = smoothfn_from_poly(p)
            box = [(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(2)]
            direct = integrate_nd(f, box, cfg)
            swapped = integrate_nd(lambda x, y: f(y, x), box[::-1], cfg)
            assert swapped == pytest.approx(direct, rel=1e-10, abs=1e-10)

    def test_empty_box_rejected(self):
        with pytest.raises(ValueError):
            integrate_nd(lambda x: x, [])
