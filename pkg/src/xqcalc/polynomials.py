"""Exact sparse polynomial arithmetic in up to three variables.

A polynomial is a mapping from exponent tuples to float coefficients; the
zero polynomial is the empty mapping.  Coefficient pruning removes exact
zeros only -- rounding residue is kept and judged by tolerances downstream.
All values are immutable after construction and all operations are pure,
so everything here can be shared freely between threads.

The module also provides univariate polynomials over a single formal
parameter (used for time-parametrized pairing values), polynomial maps
between coordinate spaces, polynomial vector fields, the usual first- and
second-order calculus operators, and closed forms for the full- and
half-period trigonometric moment integrals that back all sphere pairings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

MAX_DIM = 3
VAR_NAMES = ("x", "y", "z")

Exponents = tuple[int, ...]


class DimensionMismatchError(ValueError):
    """Operands live over coordinate spaces of different dimensions."""


def _check_dim(dim: int) -> int:
    if not isinstance(dim, int) or not 1 <= dim <= MAX_DIM:
        raise ValueError(f"dimension must be an integer in 1..{MAX_DIM}, got {dim!r}")
    return dim


class Poly:
    """Polynomial in ``dim`` variables with float coefficients.

    ``terms`` maps exponent tuples (length ``dim``, non-negative entries)
    to nonzero coefficients.  Construction normalizes: duplicate exponent
    tuples are merged and exactly-zero coefficients are dropped.

    Instances are treated as immutable; do not mutate ``terms`` in place.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[Exponents, float] | None = None):
        _check_dim(dim)
        merged: dict[Exponents, float] = {}
        for exps, coeff in (terms or {}).items():
            key = tuple(int(e) for e in exps)
            if len(key) != dim:
                raise DimensionMismatchError(
                    f"exponent tuple {key} has length {len(key)}, expected {dim}"
                )
            if any(e < 0 for e in key):
                raise ValueError(f"negative exponent in {key}")
            value = float(coeff)
            if not math.isfinite(value):
                raise ValueError(f"non-finite coefficient {value!r} for {key}")
            merged[key] = merged.get(key, 0.0) + value
        self.dim = dim
        self.terms = {e: c for e, c in merged.items() if c != 0.0}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> "Poly":
        return cls(dim)

    @classmethod
    def constant(cls, dim: int, value: float) -> "Poly":
        return cls(dim, {(0,) * dim: value})

    @classmethod
    def one(cls, dim: int) -> "Poly":
        return cls.constant(dim, 1.0)

    @classmethod
    def variable(cls, dim: int, axis: int) -> "Poly":
        _check_dim(dim)
        if not 0 <= axis < dim:
            raise ValueError(f"axis {axis} out of range for dimension {dim}")
        exps = tuple(1 if i == axis else 0 for i in range(dim))
        return cls(dim, {exps: 1.0})

    @classmethod
    def monomial(cls, dim: int, exps: Iterable[int], coeff: float = 1.0) -> "Poly":
        return cls(dim, {tuple(exps): coeff})

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; the zero polynomial reports 0."""
        return max((sum(e) for e in self.terms), default=0)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __repr__(self) -> str:
        items = ", ".join(f"{e}: {c!r}" for e, c in sorted(self.terms.items()))
        return f"Poly(dim={self.dim}, {{{items}}})"

    # -- ring operations ----------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.dim != self.dim:
                raise DimensionMismatchError(
                    f"cannot combine polynomials of dimensions {self.dim} and {other.dim}"
                )
            return other
        if isinstance(other, (int, float)):
            return Poly.constant(self.dim, float(other))
        return NotImplemented

    def __add__(self, other) -> "Poly":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in rhs.terms.items():
            out[e] = out.get(e, 0.0) + c
        return Poly(self.dim, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, float)):
            return self.scale(float(other))
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        out: dict[Exponents, float] = {}
        for ea, ca in self.terms.items():
            for eb, cb in rhs.terms.items():
                key = tuple(a + b for a, b in zip(ea, eb))
                out[key] = out.get(key, 0.0) + ca * cb
        return Poly(self.dim, out)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "Poly":
        if not isinstance(power, int) or power < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = Poly.one(self.dim)
        base = self
        k = power
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, factor: float) -> "Poly":
        return Poly(self.dim, {e: c * factor for e, c in self.terms.items()})

    # -- evaluation and calculus ---------------------------------------

    def eval(self, point: Iterable[float]) -> float:
        """Evaluate at a point (length must equal ``dim``)."""
        xs = tuple(float(v) for v in point)
        if len(xs) != self.dim:
            raise DimensionMismatchError(
                f"point of length {len(xs)} for polynomial in {self.dim} variables"
            )
        total = 0.0
        for exps, coeff in self.terms.items():
            value = coeff
            for x, e in zip(xs, exps):
                if e:
                    value *= x**e
            total += value
        return total

    def partial(self, axis: int) -> "Poly":
        """Formal partial derivative along one axis."""
        if not 0 <= axis < self.dim:
            raise ValueError(f"axis {axis} out of range for dimension {self.dim}")
        out: dict[Exponents, float] = {}
        for exps, coeff in self.terms.items():
            e = exps[axis]
            if e == 0:
                continue
            key = tuple(v - 1 if i == axis else v for i, v in enumerate(exps))
            out[key] = out.get(key, 0.0) + coeff * e
        return Poly(self.dim, out)

    def compose(self, pmap: "PolyMap") -> "Poly":
        """Substitute ``pmap``'s components for the variables (pullback)."""
        if self.dim != pmap.target_dim:
            raise DimensionMismatchError(
                f"polynomial in {self.dim} variables cannot be composed with a map "
                f"into {pmap.target_dim} variables"
            )
        src = pmap.source_dim
        powers: list[dict[int, Poly]] = [{0: Poly.one(src)} for _ in pmap.components]

        def component_power(i: int, e: int) -> Poly:
            cache = powers[i]
            if e not in cache:
                cache[e] = cache[e - 1] * pmap.components[i] if e - 1 in cache else pmap.components[i] ** e
            return cache[e]

        out = Poly.zero(src)
        for exps, coeff in self.terms.items():
            term = Poly.constant(src, coeff)
            for i, e in enumerate(exps):
                if e:
                    term = term * component_power(i, e)
            out = out + term
        return out

    def scale_arguments(self, factor: float) -> "Poly":
        """Pullback along the scaling x -> factor * x (each term picks up factor^|exps|)."""
        return Poly(
            self.dim, {e: c * factor ** sum(e) for e, c in self.terms.items()}
        )

    def embed(self, dim: int, axes: Iterable[int]) -> "Poly":
        """View this polynomial in a larger space, variable i placed at ``axes[i]``."""
        targets = tuple(axes)
        if len(targets) != self.dim:
            raise DimensionMismatchError("axes must list one target per variable")
        _check_dim(dim)
        if len(set(targets)) != len(targets) or any(not 0 <= a < dim for a in targets):
            raise ValueError(f"invalid axis placement {targets} for dimension {dim}")
        out: dict[Exponents, float] = {}
        for exps, coeff in self.terms.items():
            key = [0] * dim
            for axis, e in zip(targets, exps):
                key[axis] = e
            out[tuple(key)] = coeff
        return Poly(dim, out)

    def integrate_last_axis(self, a: float, b: float) -> "Poly":
        """Definite integral over the last variable; drops one dimension (dim >= 2)."""
        if self.dim < 2:
            raise ValueError("use interval_integral for univariate polynomials")
        out: dict[Exponents, float] = {}
        for exps, coeff in self.terms.items():
            e = exps[-1]
            weight = (b ** (e + 1) - a ** (e + 1)) / (e + 1)
            key = exps[:-1]
            out[key] = out.get(key, 0.0) + coeff * weight
        return Poly(self.dim - 1, out)

    def interval_integral(self, a: float, b: float) -> float:
        """Definite integral of a univariate polynomial over [a, b] (signed)."""
        if self.dim != 1:
            raise ValueError("interval_integral requires a univariate polynomial")
        total = 0.0
        for (e,), coeff in self.terms.items():
            total += coeff * (b ** (e + 1) - a ** (e + 1)) / (e + 1)
        return total

    def to_unipoly(self) -> "UniPoly":
        """Reinterpret a univariate polynomial as a UniPoly."""
        if self.dim != 1:
            raise ValueError("only univariate polynomials convert to UniPoly")
        if not self.terms:
            return UniPoly(())
        coeffs = [0.0] * (max(e for (e,) in self.terms) + 1)
        for (e,), c in self.terms.items():
            coeffs[e] = c
        return UniPoly(coeffs)


class UniPoly:
    """Polynomial in one formal parameter, coefficient of t^k at index k.

    Trailing exactly-zero coefficients are stripped, so the zero polynomial
    has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[float] = ()):
        cs = [float(c) for c in coeffs]
        while cs and cs[-1] == 0.0:
            cs.pop()
        for c in cs:
            if not math.isfinite(c):
                raise ValueError(f"non-finite coefficient {c!r}")
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls(())

    @classmethod
    def constant(cls, value: float) -> "UniPoly":
        return cls((value,))

    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> float:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0.0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)!r})"

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, float)):
            return UniPoly((float(other),))
        return NotImplemented

    def __add__(self, other) -> "UniPoly":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(rhs.coeffs))
        return UniPoly(self.coeff(k) + rhs.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "UniPoly":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        return self + (-rhs)

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, (int, float)):
            return UniPoly(c * float(other) for c in self.coeffs)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly(())
        out = [0.0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "UniPoly":
        """Multiply by t^k."""
        if k < 0:
            raise ValueError("shift must be non-negative")
        if not self.coeffs:
            return self
        return UniPoly((0.0,) * k + self.coeffs)

    def truncate(self, order: int) -> "UniPoly":
        """Keep coefficients of t^k for k < order."""
        return UniPoly(self.coeffs[:order])

    def derivative(self) -> "UniPoly":
        return UniPoly(c * k for k, c in enumerate(self.coeffs) if k >= 1)

    def antiderivative(self) -> "UniPoly":
        """The unique primitive vanishing at 0."""
        return UniPoly([0.0] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def eval(self, t: float) -> float:
        total = 0.0
        for c in reversed(self.coeffs):
            total = total * t + c
        return total

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.coeffs), default=0.0)


@dataclass(frozen=True)
class PolyMap:
    """Polynomial map between coordinate spaces, one component per target axis."""

    source_dim: int
    components: tuple[Poly, ...]

    def __post_init__(self):
        _check_dim(self.source_dim)
        comps = tuple(self.components)
        if not 1 <= len(comps) <= MAX_DIM:
            raise ValueError(f"target dimension must be 1..{MAX_DIM}, got {len(comps)}")
        for comp in comps:
            if comp.dim != self.source_dim:
                raise DimensionMismatchError(
                    f"component in {comp.dim} variables inside a map from "
                    f"{self.source_dim} variables"
                )
        object.__setattr__(self, "components", comps)

    @property
    def target_dim(self) -> int:
        return len(self.components)

    @classmethod
    def identity(cls, dim: int) -> "PolyMap":
        return cls(dim, tuple(Poly.variable(dim, i) for i in range(dim)))

    @classmethod
    def scaling(cls, factor: float, dim: int) -> "PolyMap":
        return cls(dim, tuple(Poly.variable(dim, i) * factor for i in range(dim)))

    def after(self, inner: "PolyMap") -> "PolyMap":
        """Composite map: (self.after(inner))(x) = self(inner(x))."""
        if inner.target_dim != self.source_dim:
            raise DimensionMismatchError(
                f"cannot compose a map from {self.source_dim} variables after a map "
                f"into {inner.target_dim} variables"
            )
        return PolyMap(inner.source_dim, tuple(c.compose(inner) for c in self.components))

    def __call__(self, point: Iterable[float]) -> tuple[float, ...]:
        xs = tuple(point)
        return tuple(c.eval(xs) for c in self.components)


@dataclass(frozen=True)
class VectorFieldPoly:
    """Polynomial vector field on R^n: n components, each in n variables."""

    components: tuple[Poly, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        _check_dim(len(comps))
        for comp in comps:
            if comp.dim != len(comps):
                raise DimensionMismatchError(
                    f"vector field on R^{len(comps)} has a component in "
                    f"{comp.dim} variables"
                )
        object.__setattr__(self, "components", comps)

    @property
    def dim(self) -> int:
        return len(self.components)


def gradient(p: Poly) -> VectorFieldPoly:
    return VectorFieldPoly(tuple(p.partial(i) for i in range(p.dim)))


def divergence(field: VectorFieldPoly) -> Poly:
    out = Poly.zero(field.dim)
    for i, comp in enumerate(field.components):
        out = out + comp.partial(i)
    return out


def laplacian(p: Poly) -> Poly:
    """Sum of pure second partials; agrees with divergence(gradient(p))."""
    out = Poly.zero(p.dim)
    for i in range(p.dim):
        out = out + p.partial(i).partial(i)
    return out


@lru_cache(maxsize=None)
def wallis_full(a: int, b: int) -> float:
    """Closed form of the full-period moment: integral of cos^a * sin^b over [0, 2*pi].

    Zero when either exponent is odd; otherwise computed by the stable
    downward recurrence W(a, b) = (a-1)/(a+b) * W(a-2, b) (and symmetrically
    in b) seeded with W(0, 0) = 2*pi, so no large factorials ever appear.
    """
    if a < 0 or b < 0:
        raise ValueError("exponents must be non-negative")
    if a % 2 or b % 2:
        return 0.0
    if a == 0 and b == 0:
        return 2.0 * math.pi
    if a >= 2:
        return (a - 1) / (a + b) * wallis_full(a - 2, b)
    return (b - 1) / (a + b) * wallis_full(a, b - 2)


@lru_cache(maxsize=None)
def wallis_half(a: int, b: int) -> float:
    """Closed form of the half-period moment: integral of sin^a * cos^b over [0, pi].

    Zero when b is odd (the integrand is odd about pi/2).  Otherwise the
    same downward recurrences apply; the base cases are pi for (0, 0) and
    2 for (1, 0).  The b-recurrence needs b >= 2 so its boundary term
    vanishes at both endpoints.
    """
    if a < 0 or b < 0:
        raise ValueError("exponents must be non-negative")
    if b % 2:
        return 0.0
    if a >= 2:
        return (a - 1) / (a + b) * wallis_half(a - 2, b)
    if b >= 2:
        return (b - 1) / (a + b) * wallis_half(a, b - 2)
    return 2.0 if a == 1 else math.pi
