"""Composite Gauss-Legendre quadrature over boxes.

This is the numeric backend for pairing distributions with arbitrary smooth
callables, and the independent cross-check for every closed-form moment in
the package.  The rule is deliberately fixed (non-adaptive): given the same
config, results are bit-stable and reproducible.

Node/weight tables are computed once per node count by Newton iteration on
the Legendre recurrence (converged to ~1e-15) and cached read-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from .polynomials import Poly

# Central finite-difference step used when derivative evaluators are missing.
# O(h^2) truncation; second differences carry ~1e-6 absolute noise at this
# step, which is why finite-difference results are flagged to callers.
FD_STEP = 1e-5


@dataclass(frozen=True)
class QuadConfig:
    """Nodes per panel and panel count, applied at every nesting level."""

    nodes: int = 16
    panels: int = 8

    def __post_init__(self):
        if self.nodes < 2:
            raise ValueError(f"need at least 2 nodes per panel, got {self.nodes}")
        if self.panels < 1:
            raise ValueError(f"need at least 1 panel, got {self.panels}")


DEFAULT_CONFIG = QuadConfig()


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1]."""
    if n < 1:
        raise ValueError("node count must be positive")
    nodes = [0.0] * n
    weights = [0.0] * n
    for i in range(n):
        x = math.cos(math.pi * (i + 0.75) / (n + 0.5))
        dp = 1.0
        for _ in range(100):
            p0, p1 = 1.0, 0.0  # P_k(x), P_{k-1}(x)
            for k in range(1, n + 1):
                p0, p1 = ((2 * k - 1) * x * p0 - (k - 1) * p1) / k, p0
            dp = n * (x * p0 - p1) / (x * x - 1.0)
            step = p0 / dp
            x -= step
            if abs(step) < 1e-15:
                break
        nodes[i] = x
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp)
    return tuple(nodes), tuple(weights)


@dataclass(frozen=True)
class SmoothFn:
    """Smooth callable of fixed arity, with optional analytic derivatives.

    ``grad[i]`` evaluates the first partial along axis i and ``grad2[i]``
    the pure second partial.  When absent, consumers that need derivatives
    fall back to central finite differences and flag the result.
    """

    arity: int
    fn: Callable[..., float]
    grad: tuple[Callable[..., float], ...] | None = None
    grad2: tuple[Callable[..., float], ...] | None = None

    def __post_init__(self):
        if not 1 <= self.arity <= 3:
            raise ValueError(f"arity must be 1..3, got {self.arity}")
        if self.grad is not None and len(self.grad) != self.arity:
            raise ValueError("grad must provide one evaluator per axis")
        if self.grad2 is not None and len(self.grad2) != self.arity:
            raise ValueError("grad2 must provide one evaluator per axis")

    def __call__(self, *xs: float) -> float:
        return self.fn(*xs)


def smoothfn_from_poly(p: Poly) -> SmoothFn:
    """Wrap a polynomial as a SmoothFn with exact derivative evaluators."""
    firsts = tuple(p.partial(i) for i in range(p.dim))
    seconds = tuple(q.partial(i) for i, q in enumerate(firsts))

    def evaluator(poly: Poly) -> Callable[..., float]:
        return lambda *xs: poly.eval(xs)

    return SmoothFn(
        p.dim,
        evaluator(p),
        tuple(evaluator(q) for q in firsts),
        tuple(evaluator(q) for q in seconds),
    )


def integrate_1d(
    f: Callable[[float], float], a: float, b: float, cfg: QuadConfig = DEFAULT_CONFIG
) -> float:
    """Composite Gauss-Legendre integral over [a, b]; signed when a > b.

    Exact to rounding for polynomial integrands of degree < 2 * cfg.nodes.
    """
    nodes, weights = gauss_legendre(cfg.nodes)
    width = (b - a) / cfg.panels
    half = width / 2.0
    total = 0.0
    for j in range(cfg.panels):
        mid = a + (j + 0.5) * width
        for x, w in zip(nodes, weights):
            total += w * f(mid + half * x)
    return total * half


def integrate_nd(
    f: Callable[..., float],
    box: Sequence[tuple[float, float]],
    cfg: QuadConfig = DEFAULT_CONFIG,
) -> float:
    """Iterated 1-d quadrature over a box, outermost axis first."""
    if not box:
        raise ValueError("box must have at least one interval")
    if len(box) == 1:
        a, b = box[0]
        return integrate_1d(f, a, b, cfg)
    (a, b), rest = box[0], box[1:]

    def outer(x0: float) -> float:
        return integrate_nd(lambda *ys: f(x0, *ys), rest, cfg)

    return integrate_1d(outer, a, b, cfg)
