"""Wave-equation fundamental solutions in dimensions 1-3, and formal jets.

The wave equation is treated as a second-order ODE on the space of
compactly supported distributions: a solution is a curve t -> Q(t) with
d^2/dt^2 <Q(t), psi> = <Q(t), laplacian(psi)> for every test function.
Each solution here pairs with a polynomial test function to an exact
polynomial in t, so solutions are represented by those pairing polynomials
rather than by any time stepping.

Six curves are provided.  In each dimension there is a "position" kind
(initial state a constant times (delta, 0)) and a "velocity" kind (initial
state a constant times (0, delta)); the constants are 2 in dimension 1 and
4*pi in dimensions 3 and 2, the two-dimensional kinds being coordinate
projections of the three-dimensional ones.

Formal jets give the series-solution counterpart: a jet of order k stores
distribution coefficients of 1, t, ..., t^(k-1) and represents a solution
on nilpotent time (t^k = 0).  Truncations of the exact solutions agree
with the jets built from their initial states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .distributions import (
    DiffOperator,
    Dirac,
    Dist,
    LinComb,
    OpImage,
    ProjectionNode,
    Pushforward,
    laplacian_op,
    pair,
    scaled,
    zero,
)
from .polynomials import DimensionMismatchError, Poly, UniPoly, laplacian
from .quadrature import SmoothFn
from .spheres import Family, FamilyKind, family_at, pair_family


class SolutionKind(str, Enum):
    """The six fundamental wave-equation solution curves."""

    D1_SPHERE = "1d-sphere"      # t -> diluted two-point sphere; state 2*(delta, 0)
    D1_BALL = "1d-ball"          # t -> undiluted interval; state 2*(0, delta)
    D3_POSITION = "3d-position"  # t -> diluted sphere + t^2 * Lap(diluted ball)
    D3_VELOCITY = "3d-velocity"  # t -> t * diluted sphere; state 4*pi*(0, delta)
    D2_POSITION = "2d-position"  # xy-projection of the 3d position solution
    D2_VELOCITY = "2d-velocity"  # xy-projection of the 3d velocity solution

    @property
    def output_dim(self) -> int:
        return {"1": 1, "2": 2, "3": 3}[self.value[0]]

    @property
    def is_projected(self) -> bool:
        return self.output_dim == 2

    @property
    def source_dim(self) -> int:
        """Dimension the solution is built in (3 for the projected kinds)."""
        return 3 if self.is_projected else self.output_dim


def _embed_for_projection(psi: Poly) -> Poly:
    """View a planar test function as a function of (x, y, z), z unused."""
    return psi.embed(3, (0, 1))


def pair_solution(kind: SolutionKind, psi: Poly) -> UniPoly:
    """Exact pairing polynomial t -> <Q(t), psi> for the given solution."""
    kind = SolutionKind(kind)
    if psi.dim != kind.output_dim:
        raise DimensionMismatchError(
            f"solution {kind.value} pairs with test functions in "
            f"{kind.output_dim} variables, got {psi.dim}"
        )
    if kind is SolutionKind.D1_SPHERE:
        return pair_family_of(FamilyKind.SPHERE_DILUTED, 1, psi)
    if kind is SolutionKind.D1_BALL:
        return pair_family_of(FamilyKind.BALL_UNDILUTED, 1, psi)
    if kind.is_projected:
        base = (
            SolutionKind.D3_POSITION
            if kind is SolutionKind.D2_POSITION
            else SolutionKind.D3_VELOCITY
        )
        return pair_solution(base, _embed_for_projection(psi))
    if kind is SolutionKind.D3_VELOCITY:
        return pair_family_of(FamilyKind.SPHERE_DILUTED, 3, psi).shift(1)
    # 3d position kind: diluted sphere plus t^2 times the diluted ball
    # paired against the Laplacian of the test function.
    sphere_part = pair_family_of(FamilyKind.SPHERE_DILUTED, 3, psi)
    ball_part = pair_family_of(FamilyKind.BALL_DILUTED, 3, laplacian(psi)).shift(2)
    return sphere_part + ball_part


def pair_family_of(kind: FamilyKind, dim: int, psi: Poly) -> UniPoly:
    return pair_family(Family(kind, dim), psi)


def solution_at(kind: SolutionKind, t: float) -> Dist:
    """The solution at a concrete time, as a distribution tree."""
    kind = SolutionKind(kind)
    t = float(t)
    if kind is SolutionKind.D1_SPHERE:
        return family_at(Family(FamilyKind.SPHERE_DILUTED, 1), t)
    if kind is SolutionKind.D1_BALL:
        return family_at(Family(FamilyKind.BALL_UNDILUTED, 1), t)
    if kind.is_projected:
        base = (
            SolutionKind.D3_POSITION
            if kind is SolutionKind.D2_POSITION
            else SolutionKind.D3_VELOCITY
        )
        return Pushforward(ProjectionNode(3, (0, 1)), solution_at(base, t))
    if kind is SolutionKind.D3_VELOCITY:
        return scaled(t, family_at(Family(FamilyKind.SPHERE_DILUTED, 3), t))
    sphere = family_at(Family(FamilyKind.SPHERE_DILUTED, 3), t)
    ball = family_at(Family(FamilyKind.BALL_DILUTED, 3), t)
    return LinComb(((1.0, sphere), (t * t, OpImage(laplacian_op(3), ball))))


def wave_residual(kind: SolutionKind, psi: Poly) -> UniPoly:
    """Second time derivative of the pairing minus the Laplacian pairing.

    Identically zero (up to rounding) for every solution kind.
    """
    kind = SolutionKind(kind)
    lhs = pair_solution(kind, psi).derivative().derivative()
    rhs = pair_solution(kind, laplacian(psi))
    return lhs - rhs


class InitialState(NamedTuple):
    """Position and velocity of a solution curve at time zero."""

    position: Dist
    velocity: Dist

    @property
    def dim(self) -> int:
        return self.position.dim


def initial_state_pair(kind: SolutionKind, psi: Poly) -> tuple[float, float]:
    """(<Q(0), psi>, <Q'(0), psi>): the constant and linear coefficients."""
    series = pair_solution(kind, psi)
    return series.coeff(0), series.coeff(1)


def initial_state_dists(kind: SolutionKind) -> InitialState:
    """The initial position and velocity of a solution, as distributions."""
    kind = SolutionKind(kind)
    dim = kind.output_dim
    constant = 2.0 if dim == 1 else 4.0 * math.pi
    delta = Dirac((0.0,) * dim)
    if kind in (SolutionKind.D1_SPHERE, SolutionKind.D3_POSITION, SolutionKind.D2_POSITION):
        return InitialState(scaled(constant, delta), zero(dim))
    return InitialState(zero(dim), scaled(constant, delta))


# ---------------------------------------------------------------------------
# Formal jets (series solutions on nilpotent time)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Jet:
    """Truncated power series in t with distribution coefficients.

    ``coeffs[j]`` is the coefficient of t^j; the length is the truncation
    order k, so the jet lives on nilpotent time with t^k = 0.
    """

    coeffs: tuple[Dist, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if not coeffs:
            raise ValueError("a jet needs at least the order-zero coefficient")
        dims = {c.dim for c in coeffs}
        if len(dims) != 1:
            raise DimensionMismatchError(f"mixed dimensions {sorted(dims)} in jet")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def dim(self) -> int:
        return self.coeffs[0].dim


def jet_first_order(op: DiffOperator, v: Dist, order: int) -> Jet:
    """Series solution of F' = op(F) with F(0) = v: coeffs[j] = op^j(v) / j!.

    Factorials are built incrementally, never as one large product.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    coeffs: list[Dist] = []
    chain: Dist = v
    factorial = 1.0
    for j in range(order):
        if j:
            factorial *= j
        coeffs.append(scaled(1.0 / factorial, chain))
        chain = OpImage(op, chain)
    return Jet(tuple(coeffs))


def jet_second_order(op: DiffOperator, v: Dist, w: Dist, order: int) -> Jet:
    """Series solution of F'' = op(F) with F(0) = v and F'(0) = w.

    Even coefficients walk the chain op^k(v), odd ones op^k(w), each
    divided by the factorial of its index.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    if v.dim != w.dim:
        raise DimensionMismatchError("position and velocity must share a dimension")
    coeffs: list[Dist] = []
    even_chain: Dist = v
    odd_chain: Dist = w
    factorial = 1.0
    for j in range(order):
        if j:
            factorial *= j
        if j % 2 == 0:
            coeffs.append(scaled(1.0 / factorial, even_chain))
            even_chain = OpImage(op, even_chain)
        else:
            coeffs.append(scaled(1.0 / factorial, odd_chain))
            odd_chain = OpImage(op, odd_chain)
    return Jet(tuple(coeffs))


def jet_pairing(jet: Jet, psi: Poly) -> UniPoly:
    """Pair every coefficient with ``psi``, producing a polynomial in t."""
    return UniPoly(pair(c, psi) for c in jet.coeffs)


def jet_vs_solution(kind: SolutionKind, jet: Jet, psi: Poly, order: int) -> UniPoly:
    """Residual between a solution truncated below t^order and a jet pairing."""
    kind = SolutionKind(kind)
    if jet.dim != kind.output_dim:
        raise DimensionMismatchError(
            f"jet on R^{jet.dim} compared with solution {kind.value} on "
            f"R^{kind.output_dim}"
        )
    truncated = pair_solution(kind, psi).truncate(order)
    series = jet_pairing(jet, psi).truncate(order)
    return truncated - series


def solution_jet(kind: SolutionKind, order: int) -> Jet:
    """The formal jet generated by the solution's own initial state."""
    kind = SolutionKind(kind)
    v, w = initial_state_dists(kind)
    return jet_second_order(laplacian_op(kind.output_dim), v, w, order)


def radial_bump(radius: float, width: float, dim: int) -> SmoothFn:
    """Smooth compactly supported bump around the sphere of the given radius.

    Value 1 on the centered sphere, falling smoothly to 0 where the radial
    distance from it reaches ``width``.  Used for signal-propagation traces
    through the quadrature backend.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    if width <= 0:
        raise ValueError("width must be positive")

    def fn(*xs: float) -> float:
        r = math.sqrt(sum(x * x for x in xs))
        s = (r - radius) / width
        if abs(s) >= 1.0:
            return 0.0
        return math.exp(1.0 - 1.0 / (1.0 - s * s))

    return SmoothFn(dim, fn)
