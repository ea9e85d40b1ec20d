import random

import pytest

from xqcalc import Poly, run_suite


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(scope="session")
def full_report():
    """One shared run of every verification suite (seed 0)."""
    return run_suite("all", seed=0)


def random_int_poly(rng, dim, max_degree, max_terms=6):
    """Random polynomial with integer coefficients in [-3, 3]."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        while True:
            exps = tuple(rng.randint(0, max_degree) for _ in range(dim))
            if sum(exps) <= max_degree:
                break
        c = rng.randint(-3, 3)
        if c:
            terms[exps] = terms.get(exps, 0.0) + c
    return Poly(dim, terms)


def rel_err(a, b, scale=0.0):
    return abs(a - b) / max(1.0, abs(a), abs(b), abs(scale))
