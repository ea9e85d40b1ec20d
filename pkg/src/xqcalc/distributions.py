"""Distributions of compact support as finite expression trees.

A distribution here is a linear functional on smooth test functions,
represented structurally: atomic nodes (point masses, signed intervals and
boxes, the unit sphere and ball) combined by pushforward along a smooth
map, multiplication by a polynomial density, the image under a linear
differential operator, linear combination, and external product.  Two
interpreters evaluate the bracket <T, psi>:

* :func:`pair` -- exact, for polynomial test functions; every atomic value
  comes from antiderivative differences, point evaluation, or closed-form
  trigonometric moments.
* :func:`pair_numeric` / :func:`pair_callable` -- composite Gauss-Legendre
  quadrature over the defining parametrizations, for arbitrary smooth
  callables.

Sign convention: the derivative of a distribution satisfies
``<T', psi> = <T, psi'>`` with NO minus sign -- operators act on the test
function unchanged.  This differs from the classical convention; for the
second-order operators used throughout (the Laplacian in particular) the
two conventions agree anyway.

Orientation: interval endpoints are arbitrary reals.  [a, b] with a > b is
the signed (negated) interval, [a, a] is the zero functional, and the
scaling parameter of a homothety may be zero or negative.  No positivity
or ordering assumptions are made anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, ClassVar, NamedTuple

from .polynomials import (
    MAX_DIM,
    DimensionMismatchError,
    Poly,
    PolyMap,
    VectorFieldPoly,
    wallis_full,
    wallis_half,
)
from .quadrature import (
    DEFAULT_CONFIG,
    FD_STEP,
    QuadConfig,
    SmoothFn,
    gauss_legendre,
    integrate_1d,
    integrate_nd,
    smoothfn_from_poly,
)

_TWO_PI = 2.0 * math.pi
_PATTERN_TOL = 1e-12


class ExactPairingError(ValueError):
    """The exact interpreter cannot handle this tree; use the numeric backend."""


# ---------------------------------------------------------------------------
# Smooth map nodes (the maps distributions are pushed forward along)
# ---------------------------------------------------------------------------


class SmoothMap:
    """Base class for map nodes; exposes source_dim and target_dim."""

    __slots__ = ()


@dataclass(frozen=True)
class PolyMapNode(SmoothMap):
    fmap: PolyMap

    @property
    def source_dim(self) -> int:
        return self.fmap.source_dim

    @property
    def target_dim(self) -> int:
        return self.fmap.target_dim


@dataclass(frozen=True)
class HomothetyNode(SmoothMap):
    """Scaling x -> factor * x on R^n; factor may be zero or negative."""

    factor: float
    space_dim: int

    def __post_init__(self):
        object.__setattr__(self, "factor", float(self.factor))
        if not 1 <= self.space_dim <= MAX_DIM:
            raise ValueError(f"dimension must be 1..{MAX_DIM}, got {self.space_dim}")

    @property
    def source_dim(self) -> int:
        return self.space_dim

    @property
    def target_dim(self) -> int:
        return self.space_dim


@dataclass(frozen=True)
class ProjectionNode(SmoothMap):
    """Coordinate projection keeping the listed source axes, in order."""

    source_dim: int
    keep: tuple[int, ...]

    def __post_init__(self):
        keep = tuple(int(i) for i in self.keep)
        if not 1 <= self.source_dim <= MAX_DIM:
            raise ValueError(f"dimension must be 1..{MAX_DIM}, got {self.source_dim}")
        if not keep or len(set(keep)) != len(keep):
            raise ValueError(f"kept axes must be distinct and non-empty, got {keep}")
        if any(not 0 <= i < self.source_dim for i in keep):
            raise ValueError(f"axis out of range in {keep}")
        object.__setattr__(self, "keep", keep)

    @property
    def target_dim(self) -> int:
        return len(self.keep)


@dataclass(frozen=True)
class CisNode(SmoothMap):
    """The unit-circle parametrization theta -> (cos theta, sin theta)."""

    source_dim: ClassVar[int] = 1
    target_dim: ClassVar[int] = 2


@dataclass(frozen=True)
class SphNode(SmoothMap):
    """Spherical coordinates (theta, phi) -> (cos t sin p, sin t sin p, cos p)."""

    source_dim: ClassVar[int] = 2
    target_dim: ClassVar[int] = 3


def map_point(m: SmoothMap, xs: tuple[float, ...]) -> tuple[float, ...]:
    """Apply a map node to a concrete point."""
    if isinstance(m, PolyMapNode):
        return m.fmap(xs)
    if isinstance(m, HomothetyNode):
        return tuple(m.factor * x for x in xs)
    if isinstance(m, ProjectionNode):
        return tuple(xs[i] for i in m.keep)
    if isinstance(m, CisNode):
        (theta,) = xs
        return (math.cos(theta), math.sin(theta))
    if isinstance(m, SphNode):
        theta, phi = xs
        sin_phi = math.sin(phi)
        return (math.cos(theta) * sin_phi, math.sin(theta) * sin_phi, math.cos(phi))
    raise TypeError(f"unknown map node {type(m).__name__}")


def _pullback(m: SmoothMap, psi: Poly) -> Poly:
    """psi composed with the map, for map nodes with polynomial components."""
    if isinstance(m, PolyMapNode):
        return psi.compose(m.fmap)
    if isinstance(m, HomothetyNode):
        return psi.scale_arguments(m.factor)
    if isinstance(m, ProjectionNode):
        return psi.embed(m.source_dim, m.keep)
    raise ExactPairingError(
        f"{type(m).__name__} has no polynomial pullback; use the numeric backend"
    )


# ---------------------------------------------------------------------------
# Differential operators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiffOperator:
    """Finite sum of polynomial-coefficient partial-derivative terms.

    Each term is (coefficient polynomial, multi-index); the operator sends
    psi to sum(coeff * d^alpha psi).  Acting on distributions it is the
    formal adjoint WITHOUT sign: <D(T), psi> = <T, D(psi)>.
    """

    dim: int
    terms: tuple[tuple[Poly, tuple[int, ...]], ...]

    def __post_init__(self):
        if not 1 <= self.dim <= MAX_DIM:
            raise ValueError(f"dimension must be 1..{MAX_DIM}, got {self.dim}")
        clean = []
        for coeff, alpha in self.terms:
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != self.dim or any(a < 0 for a in alpha):
                raise ValueError(f"bad multi-index {alpha} for dimension {self.dim}")
            if coeff.dim != self.dim:
                raise DimensionMismatchError(
                    f"coefficient in {coeff.dim} variables inside an operator on "
                    f"R^{self.dim}"
                )
            clean.append((coeff, alpha))
        object.__setattr__(self, "terms", tuple(clean))

    def apply(self, psi: Poly) -> Poly:
        if psi.dim != self.dim:
            raise DimensionMismatchError(
                f"operator on R^{self.dim} applied to a polynomial in {psi.dim} variables"
            )
        out = Poly.zero(self.dim)
        for coeff, alpha in self.terms:
            q = psi
            for axis, order in enumerate(alpha):
                for _ in range(order):
                    q = q.partial(axis)
            out = out + coeff * q
        return out


def laplacian_op(dim: int) -> DiffOperator:
    """Sum of pure second partials on R^dim."""
    terms = []
    for i in range(dim):
        alpha = tuple(2 if j == i else 0 for j in range(dim))
        terms.append((Poly.one(dim), alpha))
    return DiffOperator(dim, tuple(terms))


def dir_deriv_op(field: VectorFieldPoly) -> DiffOperator:
    """Directional derivative along a polynomial vector field."""
    dim = field.dim
    terms = []
    for i, comp in enumerate(field.components):
        alpha = tuple(1 if j == i else 0 for j in range(dim))
        terms.append((comp, alpha))
    return DiffOperator(dim, tuple(terms))


def ddx_op() -> DiffOperator:
    """The one-variable derivative operator."""
    return DiffOperator(1, ((Poly.one(1), (1,)),))


# ---------------------------------------------------------------------------
# Distribution nodes
# ---------------------------------------------------------------------------


class Dist:
    """Base class for distribution expression nodes."""

    __slots__ = ()

    @property
    def dim(self) -> int:
        raise NotImplementedError


@dataclass(frozen=True)
class Dirac(Dist):
    """Point mass: pairs a test function to its value at ``point``."""

    point: tuple[float, ...]

    def __post_init__(self):
        pt = tuple(float(v) for v in self.point)
        if not 1 <= len(pt) <= MAX_DIM:
            raise ValueError(f"point must have 1..{MAX_DIM} coordinates, got {pt}")
        object.__setattr__(self, "point", pt)

    @property
    def dim(self) -> int:
        return len(self.point)


@dataclass(frozen=True)
class Interval(Dist):
    """The signed interval functional psi -> Psi(b) - Psi(a) on the line."""

    a: float
    b: float

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))

    @property
    def dim(self) -> int:
        return 1


@dataclass(frozen=True)
class Box(Dist):
    """Iterated interval functional over a product of (a, b) pairs."""

    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self):
        cleaned = tuple((float(a), float(b)) for a, b in self.intervals)
        if not 1 <= len(cleaned) <= MAX_DIM:
            raise ValueError(f"box must have 1..{MAX_DIM} intervals, got {cleaned}")
        object.__setattr__(self, "intervals", cleaned)

    @property
    def dim(self) -> int:
        return len(self.intervals)


@dataclass(frozen=True)
class SphereUnit(Dist):
    """The unit sphere in R^n (n = 1, 2, 3) as a functional.

    In dimension 1 it is the two-point mass at +1 and -1; in dimensions 2
    and 3 it integrates over the circle / sphere parametrization with the
    standard area weight, so its total is 2, 2*pi, 4*pi respectively.
    """

    n: int

    def __post_init__(self):
        if self.n not in (1, 2, 3):
            raise ValueError(f"unit sphere defined for dimensions 1..3, got {self.n}")

    @property
    def dim(self) -> int:
        return self.n


@dataclass(frozen=True)
class BallUnit(Dist):
    """The unit ball in R^n, the shell integral of spheres of radius 0..1."""

    n: int

    def __post_init__(self):
        if self.n not in (1, 2, 3):
            raise ValueError(f"unit ball defined for dimensions 1..3, got {self.n}")

    @property
    def dim(self) -> int:
        return self.n


@dataclass(frozen=True)
class Pushforward(Dist):
    """Covariant image along a smooth map: <f_*(T), psi> = <T, psi o f>."""

    map: SmoothMap
    inner: Dist

    def __post_init__(self):
        if self.map.source_dim != self.inner.dim:
            raise DimensionMismatchError(
                f"map from R^{self.map.source_dim} applied to a distribution on "
                f"R^{self.inner.dim}"
            )

    @property
    def dim(self) -> int:
        return self.map.target_dim


@dataclass(frozen=True)
class MultFn(Dist):
    """Density multiple: <g.T, psi> = <T, g * psi>."""

    fn: Poly
    inner: Dist

    def __post_init__(self):
        if self.fn.dim != self.inner.dim:
            raise DimensionMismatchError(
                f"density in {self.fn.dim} variables over a distribution on "
                f"R^{self.inner.dim}"
            )

    @property
    def dim(self) -> int:
        return self.inner.dim


@dataclass(frozen=True)
class OpImage(Dist):
    """Operator image: <D(T), psi> = <T, D(psi)> (no sign flip)."""

    op: DiffOperator
    inner: Dist

    def __post_init__(self):
        if self.op.dim != self.inner.dim:
            raise DimensionMismatchError(
                f"operator on R^{self.op.dim} applied to a distribution on "
                f"R^{self.inner.dim}"
            )

    @property
    def dim(self) -> int:
        return self.inner.dim


@dataclass(frozen=True)
class LinComb(Dist):
    """Finite linear combination of same-dimension distributions."""

    terms: tuple[tuple[float, Dist], ...]

    def __post_init__(self):
        clean = tuple((float(c), t) for c, t in self.terms)
        if not clean:
            raise ValueError("linear combination needs at least one term")
        dims = {t.dim for _, t in clean}
        if len(dims) != 1:
            raise DimensionMismatchError(f"mixed dimensions {sorted(dims)} in combination")
        object.__setattr__(self, "terms", clean)

    @property
    def dim(self) -> int:
        return self.terms[0][1].dim


@dataclass(frozen=True)
class ExtProduct(Dist):
    """External product on the product space.

    ``standard`` pairs the left factor outermost; ``reversed`` pairs the
    right factor outermost.  The two coincide for products of intervals
    and boxes, but not in general, so both are kept as distinct trees.
    """

    left: Dist
    right: Dist
    order: str = "standard"

    def __post_init__(self):
        if self.order not in ("standard", "reversed"):
            raise ValueError(f"order must be 'standard' or 'reversed', got {self.order!r}")
        if self.left.dim + self.right.dim > MAX_DIM:
            raise DimensionMismatchError(
                f"product dimension {self.left.dim + self.right.dim} exceeds {MAX_DIM}"
            )

    @property
    def dim(self) -> int:
        return self.left.dim + self.right.dim


def scaled(factor: float, inner: Dist) -> Dist:
    """Scalar multiple of a distribution."""
    return LinComb(((float(factor), inner),))


def zero(dim: int) -> Dist:
    """The zero functional on R^dim."""
    return scaled(0.0, Dirac((0.0,) * dim))


# ---------------------------------------------------------------------------
# Sphere and ball moments (exact backend for the atomic round nodes)
# ---------------------------------------------------------------------------


def sphere_moment(dim: int, exps: tuple[int, ...]) -> float:
    """Exact pairing of the unit sphere with the monomial x^exps.

    Dimension 1 is the two-point value 1^k + (-1)^k; dimensions 2 and 3
    reduce to full- and half-period trigonometric moments through the
    circle and spherical-coordinate parametrizations (area weight included
    in dimension 3, hence the +1 on the polar sine exponent).
    """
    if dim == 1:
        (k,) = exps
        return 2.0 if k % 2 == 0 else 0.0
    if dim == 2:
        a, b = exps
        return wallis_full(a, b)
    a, b, c = exps
    return wallis_full(a, b) * wallis_half(a + b + 1, c)


def ball_moment(dim: int, exps: tuple[int, ...]) -> float:
    """Exact pairing of the unit ball with x^exps.

    Integrating the sphere moment over shells of radius u in [0, 1]
    contributes u^(dim - 1 + |exps|), so the ball moment is the sphere
    moment divided by dim + |exps|.
    """
    return sphere_moment(dim, exps) / (dim + sum(exps))


# ---------------------------------------------------------------------------
# Exact pairing interpreter
# ---------------------------------------------------------------------------


def pair(dist: Dist, psi: Poly) -> float:
    """Exact value of <dist, psi> for a polynomial test function."""
    if psi.dim != dist.dim:
        raise DimensionMismatchError(
            f"test function in {psi.dim} variables paired with a distribution on "
            f"R^{dist.dim}"
        )
    return _pair(dist, psi)


def _pair(dist: Dist, psi: Poly) -> float:
    if isinstance(dist, Dirac):
        return psi.eval(dist.point)
    if isinstance(dist, Interval):
        return psi.interval_integral(dist.a, dist.b)
    if isinstance(dist, Box):
        reduced = psi
        for a, b in reversed(dist.intervals[1:]):
            reduced = reduced.integrate_last_axis(a, b)
        a0, b0 = dist.intervals[0]
        return reduced.interval_integral(a0, b0)
    if isinstance(dist, SphereUnit):
        return sum(c * sphere_moment(dist.n, e) for e, c in psi.terms.items())
    if isinstance(dist, BallUnit):
        return sum(c * ball_moment(dist.n, e) for e, c in psi.terms.items())
    if isinstance(dist, Pushforward):
        return _pair_pushforward(dist, psi)
    if isinstance(dist, MultFn):
        return _pair(dist.inner, dist.fn * psi)
    if isinstance(dist, OpImage):
        return _pair(dist.inner, dist.op.apply(psi))
    if isinstance(dist, LinComb):
        return sum(c * _pair(t, psi) for c, t in dist.terms)
    if isinstance(dist, ExtProduct):
        return _pair_ext_product(dist, psi)
    raise TypeError(f"unknown distribution node {type(dist).__name__}")


def _is_close(value: float, target: float) -> bool:
    return abs(value - target) <= _PATTERN_TOL


def _pair_pushforward(dist: Pushforward, psi: Poly) -> float:
    m = dist.map
    if isinstance(m, (PolyMapNode, HomothetyNode, ProjectionNode)):
        return _pair(dist.inner, _pullback(m, psi))
    if isinstance(m, CisNode):
        # Exact only for the full-circle pattern: each monomial pulls back
        # to cos^a sin^b over one full period, a closed-form moment.
        inner = dist.inner
        if isinstance(inner, Interval) and _is_close(inner.a, 0.0) and _is_close(inner.b, _TWO_PI):
            return sum(c * wallis_full(a, b) for (a, b), c in psi.terms.items())
        raise ExactPairingError(
            "circle-map pushforward is exact only over the interval [0, 2*pi]; "
            "use pair_callable elsewhere"
        )
    if isinstance(m, SphNode):
        inner = dist.inner
        if (
            isinstance(inner, Box)
            and len(inner.intervals) == 2
            and _is_close(inner.intervals[0][0], 0.0)
            and _is_close(inner.intervals[0][1], _TWO_PI)
            and _is_close(inner.intervals[1][0], 0.0)
            and _is_close(inner.intervals[1][1], math.pi)
        ):
            # Monomial pullback along spherical coordinates (no area weight):
            # cos^a t sin^b t * sin^(a+b) p cos^c p over the standard box.
            return sum(
                c * wallis_full(a, b) * wallis_half(a + b, e)
                for (a, b, e), c in psi.terms.items()
            )
        raise ExactPairingError(
            "spherical-map pushforward is exact only over the box "
            "[0, 2*pi] x [0, pi]; use pair_callable elsewhere"
        )
    raise TypeError(f"unknown map node {type(m).__name__}")


def _pair_ext_product(dist: ExtProduct, psi: Poly) -> float:
    left_dim = dist.left.dim
    right_dim = dist.right.dim
    if dist.order == "standard":
        # Pair the right factor against each right-monomial slice, leaving a
        # polynomial in the left variables; then pair the left factor.
        partial = _partial_pair(psi, dist.right, left_dim, right_dim, right_side=True)
        return _pair(dist.left, partial)
    partial = _partial_pair(psi, dist.left, left_dim, right_dim, right_side=False)
    return _pair(dist.right, partial)


def _partial_pair(
    psi: Poly, factor: Dist, left_dim: int, right_dim: int, right_side: bool
) -> Poly:
    cache: dict[tuple[int, ...], float] = {}
    out: dict[tuple[int, ...], float] = {}
    for exps, coeff in psi.terms.items():
        left, right = exps[:left_dim], exps[left_dim:]
        paired_part, kept_part = (right, left) if right_side else (left, right)
        if paired_part not in cache:
            paired_dim = right_dim if right_side else left_dim
            cache[paired_part] = _pair(factor, Poly.monomial(paired_dim, paired_part))
        out[kept_part] = out.get(kept_part, 0.0) + coeff * cache[paired_part]
    return Poly(left_dim if right_side else right_dim, out)


def total(dist: Dist) -> float:
    """Value on the constant function 1; invariant under every pushforward."""
    return pair(dist, Poly.one(dist.dim))


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def pushforward(m: SmoothMap, dist: Dist) -> Dist:
    """Wrap ``dist`` in a pushforward node along ``m`` (dimension-checked)."""
    return Pushforward(m, dist)


def apply_operator(op: DiffOperator, dist: Dist) -> Dist:
    """Wrap ``dist`` in an operator-image node."""
    return OpImage(op, dist)


def box_boundary(box: Box) -> Dist:
    """Oriented boundary of a planar box as four signed edge inclusions.

    For [a, b] x [c, d]: the bottom edge x -> (x, c) and the right edge
    y -> (b, y) enter with +, the top edge x -> (x, d) and the left edge
    y -> (a, y) with -.
    """
    if len(box.intervals) != 2:
        raise ValueError("boundary is defined for two-dimensional boxes")
    (a, b), (c, d) = box.intervals

    def edge(const_axis: int, const_value: float) -> SmoothMap:
        var = Poly.variable(1, 0)
        const = Poly.constant(1, const_value)
        comps = (var, const) if const_axis == 1 else (const, var)
        return PolyMapNode(PolyMap(1, comps))

    bottom = Pushforward(edge(1, c), Interval(a, b))
    right = Pushforward(edge(0, b), Interval(c, d))
    top = Pushforward(edge(1, d), Interval(a, b))
    left = Pushforward(edge(0, a), Interval(c, d))
    return LinComb(((1.0, bottom), (1.0, right), (-1.0, top), (-1.0, left)))


def ibs_pair(g: Poly, a: float, b: float) -> tuple[Dist, Dist]:
    """Both sides of the substitution rule, as distributions on the line.

    Returns (g_*(g' . [a, b]), [g(a), g(b)]); the two pair equally against
    every test function, with no monotonicity assumption on g.
    """
    if g.dim != 1:
        raise DimensionMismatchError("substitution requires a univariate polynomial")
    lhs = Pushforward(PolyMapNode(PolyMap(1, (g,))), MultFn(g.partial(0), Interval(a, b)))
    rhs = Interval(g.eval((a,)), g.eval((b,)))
    return lhs, rhs


# ---------------------------------------------------------------------------
# Numeric pairing interpreter
# ---------------------------------------------------------------------------


class NumericPairing(NamedTuple):
    """Quadrature pairing value plus derivative-provenance metadata."""

    value: float
    used_finite_differences: bool


class _NumericContext:
    __slots__ = ("cfg", "used_fd")

    def __init__(self, cfg: QuadConfig):
        self.cfg = cfg
        self.used_fd = False


def _as_smoothfn(f, dim: int) -> SmoothFn:
    if isinstance(f, SmoothFn):
        return f
    if isinstance(f, Poly):
        return smoothfn_from_poly(f)
    if callable(f):
        return SmoothFn(dim, f)
    raise TypeError(f"cannot interpret {type(f).__name__} as a smooth function")


def pair_numeric(dist: Dist, f, cfg: QuadConfig = DEFAULT_CONFIG) -> NumericPairing:
    """Quadrature value of <dist, f>, flagging any finite-difference fallback."""
    fn = _as_smoothfn(f, dist.dim)
    if fn.arity != dist.dim:
        raise DimensionMismatchError(
            f"function of arity {fn.arity} paired with a distribution on R^{dist.dim}"
        )
    ctx = _NumericContext(cfg)
    value = _pair_num(dist, fn, ctx)
    return NumericPairing(value, ctx.used_fd)


def pair_callable(dist: Dist, f, cfg: QuadConfig = DEFAULT_CONFIG) -> float:
    """Quadrature value of <dist, f> for an arbitrary smooth callable."""
    return pair_numeric(dist, f, cfg).value


@lru_cache(maxsize=None)
def _sphere_table(n: int, cfg: QuadConfig) -> tuple[tuple[tuple[float, ...], float], ...]:
    """Flattened (point, weight) list for the unit-sphere quadrature."""
    if n == 1:
        return (((1.0,), 1.0), ((-1.0,), 1.0))
    nodes, weights = gauss_points(0.0, _TWO_PI, cfg)
    if n == 2:
        return tuple(((math.cos(t), math.sin(t)), w) for t, w in zip(nodes, weights))
    phi_nodes, phi_weights = gauss_points(0.0, math.pi, cfg)
    table = []
    for t, wt in zip(nodes, weights):
        for p, wp in zip(phi_nodes, phi_weights):
            sin_p = math.sin(p)
            point = (math.cos(t) * sin_p, math.sin(t) * sin_p, math.cos(p))
            table.append((point, wt * wp * sin_p))  # area weight sin(phi)
    return tuple(table)


def gauss_points(a: float, b: float, cfg: QuadConfig) -> tuple[list[float], list[float]]:
    """Flattened composite Gauss-Legendre nodes/weights on [a, b]."""
    base_nodes, base_weights = gauss_legendre(cfg.nodes)
    width = (b - a) / cfg.panels
    half = width / 2.0
    xs: list[float] = []
    ws: list[float] = []
    for j in range(cfg.panels):
        mid = a + (j + 0.5) * width
        for x, w in zip(base_nodes, base_weights):
            xs.append(mid + half * x)
            ws.append(w * half)
    return xs, ws


@lru_cache(maxsize=None)
def _ball_table(n: int, cfg: QuadConfig) -> tuple[tuple[tuple[float, ...], float], ...]:
    """Shell quadrature for the unit ball: one extra radial level, flattened.

    Radial node u contributes weight w_u * u^(n-1) times the sphere rule
    scaled onto radius u, realizing the shell integral of spheres.
    """
    radial_nodes, radial_weights = gauss_points(0.0, 1.0, cfg)
    sphere = _sphere_table(n, cfg)
    table = []
    for u, wu in zip(radial_nodes, radial_weights):
        shell_weight = wu * u ** (n - 1)
        for pt, w in sphere:
            table.append((tuple(u * x for x in pt), shell_weight * w))
    return tuple(table)


def _sphere_value(n: int, f: SmoothFn, cfg: QuadConfig) -> float:
    return sum(w * f(*pt) for pt, w in _sphere_table(n, cfg))


def _pair_num(dist: Dist, f: SmoothFn, ctx: _NumericContext) -> float:
    if isinstance(dist, Dirac):
        return f(*dist.point)
    if isinstance(dist, Interval):
        return integrate_1d(f, dist.a, dist.b, ctx.cfg)
    if isinstance(dist, Box):
        return integrate_nd(f, dist.intervals, ctx.cfg)
    if isinstance(dist, SphereUnit):
        return _sphere_value(dist.n, f, ctx.cfg)
    if isinstance(dist, BallUnit):
        return sum(w * f(*pt) for pt, w in _ball_table(dist.n, ctx.cfg))
    if isinstance(dist, Pushforward):
        m = dist.map
        composed = SmoothFn(m.source_dim, lambda *xs: f(*map_point(m, xs)))
        return _pair_num(dist.inner, composed, ctx)
    if isinstance(dist, MultFn):
        g = dist.fn
        product = SmoothFn(f.arity, lambda *xs: g.eval(xs) * f(*xs))
        return _pair_num(dist.inner, product, ctx)
    if isinstance(dist, OpImage):
        return _pair_num(dist.inner, _operator_image_fn(dist.op, f, ctx), ctx)
    if isinstance(dist, LinComb):
        return sum(c * _pair_num(t, f, ctx) for c, t in dist.terms)
    if isinstance(dist, ExtProduct):
        dl, dr = dist.left.dim, dist.right.dim
        if dist.order == "standard":
            outer, inner, outer_dim, inner_dim = dist.left, dist.right, dl, dr

            def sliced(*m: float) -> float:
                return _pair_num(inner, SmoothFn(inner_dim, lambda *nn: f(*m, *nn)), ctx)

        else:
            outer, inner, outer_dim, inner_dim = dist.right, dist.left, dr, dl

            def sliced(*n: float) -> float:
                return _pair_num(inner, SmoothFn(inner_dim, lambda *mm: f(*mm, *n)), ctx)

        return _pair_num(outer, SmoothFn(outer_dim, sliced), ctx)
    raise TypeError(f"unknown distribution node {type(dist).__name__}")


def _operator_image_fn(op: DiffOperator, f: SmoothFn, ctx: _NumericContext) -> SmoothFn:
    def evaluator(*xs: float) -> float:
        acc = 0.0
        for coeff, alpha in op.terms:
            c = coeff.eval(xs)
            if c != 0.0:
                acc += c * _partial_value(f, alpha, xs, ctx)
        return acc

    return SmoothFn(f.arity, evaluator)


def _partial_value(
    f: SmoothFn, alpha: tuple[int, ...], xs: tuple[float, ...], ctx: _NumericContext
) -> float:
    order = sum(alpha)
    if order == 0:
        return f(*xs)
    axis = next(i for i, a in enumerate(alpha) if a)
    reduced = tuple(a - 1 if i == axis else a for i, a in enumerate(alpha))
    if order == 1 and f.grad is not None:
        return f.grad[axis](*xs)
    if order == 2 and alpha[axis] == 2 and f.grad2 is not None:
        return f.grad2[axis](*xs)
    if f.grad is not None:
        # Peel one analytic derivative, then continue on the gradient
        # component (which carries no further analytic derivatives).
        return _partial_value(SmoothFn(f.arity, f.grad[axis]), reduced, xs, ctx)
    ctx.used_fd = True
    up = tuple(x + FD_STEP if i == axis else x for i, x in enumerate(xs))
    down = tuple(x - FD_STEP if i == axis else x for i, x in enumerate(xs))
    return (
        _partial_value(f, reduced, up, ctx) - _partial_value(f, reduced, down, ctx)
    ) / (2.0 * FD_STEP)


# ---------------------------------------------------------------------------
# Canonical JSON serialization (schema: type / args / children)
# ---------------------------------------------------------------------------


def _poly_payload(p: Poly) -> dict[str, Any]:
    return {
        "dim": p.dim,
        "terms": [[list(e), c] for e, c in sorted(p.terms.items())],
    }


def _poly_from_payload(payload: dict[str, Any]) -> Poly:
    return Poly(payload["dim"], {tuple(e): c for e, c in payload["terms"]})


def _map_payload(m: SmoothMap) -> dict[str, Any]:
    if isinstance(m, PolyMapNode):
        return {
            "kind": "poly_map",
            "source_dim": m.fmap.source_dim,
            "components": [_poly_payload(c) for c in m.fmap.components],
        }
    if isinstance(m, HomothetyNode):
        return {"kind": "homothety", "factor": m.factor, "dim": m.space_dim}
    if isinstance(m, ProjectionNode):
        return {"kind": "projection", "source_dim": m.source_dim, "keep": list(m.keep)}
    if isinstance(m, CisNode):
        return {"kind": "cis"}
    if isinstance(m, SphNode):
        return {"kind": "sph"}
    raise TypeError(f"unknown map node {type(m).__name__}")


def _map_from_payload(payload: dict[str, Any]) -> SmoothMap:
    kind = payload["kind"]
    if kind == "poly_map":
        comps = tuple(_poly_from_payload(c) for c in payload["components"])
        return PolyMapNode(PolyMap(payload["source_dim"], comps))
    if kind == "homothety":
        return HomothetyNode(payload["factor"], payload["dim"])
    if kind == "projection":
        return ProjectionNode(payload["source_dim"], tuple(payload["keep"]))
    if kind == "cis":
        return CisNode()
    if kind == "sph":
        return SphNode()
    raise ValueError(f"unknown map kind {kind!r}")


def _op_payload(op: DiffOperator) -> dict[str, Any]:
    return {
        "dim": op.dim,
        "terms": [[_poly_payload(coeff), list(alpha)] for coeff, alpha in op.terms],
    }


def _op_from_payload(payload: dict[str, Any]) -> DiffOperator:
    terms = tuple(
        (_poly_from_payload(coeff), tuple(alpha)) for coeff, alpha in payload["terms"]
    )
    return DiffOperator(payload["dim"], terms)


def dist_to_json(dist: Dist) -> dict[str, Any]:
    """Canonical JSON form: ``type`` tag, ``args`` payload, ``children`` list."""
    if isinstance(dist, Dirac):
        return {"type": "dirac", "args": {"point": list(dist.point)}, "children": []}
    if isinstance(dist, Interval):
        return {"type": "interval", "args": {"a": dist.a, "b": dist.b}, "children": []}
    if isinstance(dist, Box):
        return {
            "type": "box",
            "args": {"intervals": [list(pair_) for pair_ in dist.intervals]},
            "children": [],
        }
    if isinstance(dist, SphereUnit):
        return {"type": "sphere_unit", "args": {"dim": dist.n}, "children": []}
    if isinstance(dist, BallUnit):
        return {"type": "ball_unit", "args": {"dim": dist.n}, "children": []}
    if isinstance(dist, Pushforward):
        return {
            "type": "pushforward",
            "args": {"map": _map_payload(dist.map)},
            "children": [dist_to_json(dist.inner)],
        }
    if isinstance(dist, MultFn):
        return {
            "type": "mult_fn",
            "args": {"fn": _poly_payload(dist.fn)},
            "children": [dist_to_json(dist.inner)],
        }
    if isinstance(dist, OpImage):
        return {
            "type": "op_image",
            "args": {"op": _op_payload(dist.op)},
            "children": [dist_to_json(dist.inner)],
        }
    if isinstance(dist, LinComb):
        return {
            "type": "lin_comb",
            "args": {"weights": [c for c, _ in dist.terms]},
            "children": [dist_to_json(t) for _, t in dist.terms],
        }
    if isinstance(dist, ExtProduct):
        return {
            "type": "ext_product",
            "args": {"order": dist.order},
            "children": [dist_to_json(dist.left), dist_to_json(dist.right)],
        }
    raise TypeError(f"unknown distribution node {type(dist).__name__}")


def dist_from_json(payload: dict[str, Any]) -> Dist:
    """Inverse of :func:`dist_to_json`."""
    kind = payload["type"]
    args = payload.get("args", {})
    children = payload.get("children", [])
    if kind == "dirac":
        return Dirac(tuple(args["point"]))
    if kind == "interval":
        return Interval(args["a"], args["b"])
    if kind == "box":
        return Box(tuple(tuple(pair_) for pair_ in args["intervals"]))
    if kind == "sphere_unit":
        return SphereUnit(args["dim"])
    if kind == "ball_unit":
        return BallUnit(args["dim"])
    if kind == "pushforward":
        return Pushforward(_map_from_payload(args["map"]), dist_from_json(children[0]))
    if kind == "mult_fn":
        return MultFn(_poly_from_payload(args["fn"]), dist_from_json(children[0]))
    if kind == "op_image":
        return OpImage(_op_from_payload(args["op"]), dist_from_json(children[0]))
    if kind == "lin_comb":
        terms = tuple(
            (w, dist_from_json(child)) for w, child in zip(args["weights"], children)
        )
        return LinComb(terms)
    if kind == "ext_product":
        return ExtProduct(
            dist_from_json(children[0]), dist_from_json(children[1]), args["order"]
        )
    raise ValueError(f"unknown distribution type {kind!r}")
