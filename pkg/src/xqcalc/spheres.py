"""Time-parametrized sphere and ball families with exact pairing polynomials.

Four families are derived from the unit sphere S and unit ball B on R^n:

* diluted sphere   : the image of S under scaling by t (total stays fixed),
* undiluted sphere : t^(n-1) times the diluted sphere (surface scaling),
* diluted ball     : the image of B under scaling by t,
* undiluted ball   : t^n times the diluted ball, equal to the shell
  integral of undiluted spheres of radius 0..t.

Because scaling by t multiplies a degree-d monomial's pairing by t^d, the
pairing of any family member with a polynomial test function is itself a
polynomial in t; :func:`pair_family` returns it exactly, which turns every
derivative identity about these families into a finite coefficient check.

The scaling parameter is an arbitrary real: zero collapses both diluted
families onto a point mass at the origin with the same total, and negative
values are first-class (no ordering on the parameter is ever used).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .distributions import (
    BallUnit,
    Dist,
    HomothetyNode,
    Pushforward,
    SphereUnit,
    ball_moment,
    pair,
    scaled,
    sphere_moment,
)
from .polynomials import (
    DimensionMismatchError,
    Poly,
    UniPoly,
    VectorFieldPoly,
    divergence,
)

__all__ = [
    "FamilyKind",
    "Family",
    "sphere_unit",
    "ball_unit",
    "sphere_moment",
    "ball_moment",
    "pair_family",
    "family_at",
    "ball_as_integral_check",
    "flux_unit_sphere",
    "homothety_scaling_checks",
]


def sphere_unit(n: int) -> Dist:
    """The unit sphere on R^n as a distribution node."""
    return SphereUnit(n)


def ball_unit(n: int) -> Dist:
    """The unit ball on R^n as a distribution node."""
    return BallUnit(n)


class FamilyKind(str, Enum):
    SPHERE_DILUTED = "sphere-diluted"
    SPHERE_UNDILUTED = "sphere-undiluted"
    BALL_DILUTED = "ball-diluted"
    BALL_UNDILUTED = "ball-undiluted"


# Extra power of t carried by each family beyond the per-monomial t^degree
# scaling: the undiluted kinds carry the surface (n-1) / volume (n) factor.
def _family_shift(kind: FamilyKind, dim: int) -> int:
    if kind is FamilyKind.SPHERE_UNDILUTED:
        return dim - 1
    if kind is FamilyKind.BALL_UNDILUTED:
        return dim
    return 0


@dataclass(frozen=True)
class Family:
    """One of the four t-parametrized families on R^dim."""

    kind: FamilyKind
    dim: int

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ValueError(f"families are defined for dimensions 1..3, got {self.dim}")
        object.__setattr__(self, "kind", FamilyKind(self.kind))

    @property
    def is_sphere(self) -> bool:
        return self.kind in (FamilyKind.SPHERE_DILUTED, FamilyKind.SPHERE_UNDILUTED)


def pair_family(family: Family, psi: Poly) -> UniPoly:
    """Exact pairing of the family with ``psi`` as a polynomial in t.

    A monomial of degree d contributes moment * t^(d + shift), where the
    moment is the unit sphere's or unit ball's and shift is the family's
    extra power of t.
    """
    if psi.dim != family.dim:
        raise DimensionMismatchError(
            f"test function in {psi.dim} variables paired with a family on "
            f"R^{family.dim}"
        )
    moment = sphere_moment if family.is_sphere else ball_moment
    shift = _family_shift(family.kind, family.dim)
    if not psi.terms:
        return UniPoly.zero()
    coeffs = [0.0] * (psi.degree() + shift + 1)
    for exps, c in psi.terms.items():
        coeffs[sum(exps) + shift] += c * moment(family.dim, exps)
    return UniPoly(coeffs)


def family_at(family: Family, t: float) -> Dist:
    """The family member at a concrete parameter value, as a tree.

    Diluted kinds are a homothety pushforward of the unit node; undiluted
    kinds carry the extra scalar factor t^(n-1) or t^n.  Pairing the
    returned tree agrees with evaluating :func:`pair_family` at t.
    """
    n = family.dim
    base: Dist = SphereUnit(n) if family.is_sphere else BallUnit(n)
    diluted = Pushforward(HomothetyNode(float(t), n), base)
    shift = _family_shift(family.kind, n)
    if shift == 0:
        return diluted
    return scaled(float(t) ** shift, diluted)


def ball_as_integral_check(family: Family, psi: Poly) -> tuple[UniPoly, UniPoly]:
    """Both sides of "the undiluted ball is the shell integral of spheres".

    Returns the pairing polynomial of the undiluted ball and the
    antiderivative (vanishing at 0) of the undiluted sphere's pairing
    polynomial; the two agree coefficient-for-coefficient.
    """
    if family.kind is not FamilyKind.BALL_UNDILUTED:
        raise ValueError("check applies to the undiluted ball family")
    lhs = pair_family(family, psi)
    sphere_family = Family(FamilyKind.SPHERE_UNDILUTED, family.dim)
    rhs = pair_family(sphere_family, psi).antiderivative()
    return lhs, rhs


def flux_unit_sphere(field: VectorFieldPoly) -> float:
    """Outward flux of a polynomial vector field through the unit sphere.

    On the unit sphere the outward normal at u is u itself, so the flux is
    the sphere paired with sum_i F_i(x) * x_i.
    """
    n = field.dim
    integrand = Poly.zero(n)
    for i, comp in enumerate(field.components):
        integrand = integrand + comp * Poly.variable(n, i)
    return pair(SphereUnit(n), integrand)


def homothety_scaling_checks(obj: VectorFieldPoly | Poly, t: float) -> float:
    """Residual of the scaling identity appropriate to the argument.

    For a vector field F: div(F o H_t) = t * (div F) o H_t, compared
    coefficient-exactly (largest absolute coefficient difference).

    For a test function phi: t^n * <B, phi o H_t> = <B_t, phi>, where B is
    the unit ball and B_t the undiluted ball family evaluated at t.
    """
    t = float(t)
    if isinstance(obj, VectorFieldPoly):
        scaled_field = VectorFieldPoly(
            tuple(c.scale_arguments(t) for c in obj.components)
        )
        lhs = divergence(scaled_field)
        rhs = divergence(obj).scale_arguments(t) * t
        diff = lhs - rhs
        return max((abs(c) for c in diff.terms.values()), default=0.0)
    if isinstance(obj, Poly):
        n = obj.dim
        lhs = t**n * pair(BallUnit(n), obj.scale_arguments(t))
        rhs = pair_family(Family(FamilyKind.BALL_UNDILUTED, n), obj).eval(t)
        return abs(lhs - rhs)
    raise TypeError("expected a polynomial vector field or a polynomial")
