"""Canonical rational maps ``P/Q`` with ``Q`` monic of degree ``d``."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from typing import Iterator, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .cpoly import (
    DEFAULT_TOLERANCES,
    Poly,
    Tolerances,
    derivative,
    evaluate,
    roots_with_multiplicities,
    shares_root,
)
from .moebius import Moebius, conjugate_polys

__all__ = [
    "RationalMap",
    "FixedPoint",
    "FixedPointSet",
    "InvalidMapError",
    "NonSimpleFixedPointError",
    "canonicalize",
    "fixed_point_polynomial",
    "fixed_points",
    "fatou_sum",
    "is_normalized",
    "multiset_distance",
]


class InvalidMapError(ValueError):
    """Input violates a canonical-form invariant (degree, monic, resultant)."""

    def __init__(self, message, invariant=None):
        super().__init__(message)
        self.invariant = invariant


class NonSimpleFixedPointError(ValueError):
    pass


class RationalMap:
    """A canonical rational map of degree ``d >= 2``.

    ``num`` holds ``a_0 .. a_d`` and ``den`` holds ``b_0 .. b_{d-1}, 1``,
    both ascending.  Construction checks that ``den`` is monic of degree
    ``d``, ``deg num <= d`` and that ``num`` and ``den`` share no root.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den, tol: Tolerances = DEFAULT_TOLERANCES):
        num = num if isinstance(num, Poly) else Poly(num)
        den = den if isinstance(den, Poly) else Poly(den)
        d = den.degree
        if d < 2:
            raise InvalidMapError(
                f"denominator must have degree d >= 2, got {d}", invariant="degree"
            )
        if num.degree > d:
            raise InvalidMapError(
                f"numerator degree {num.degree} exceeds denominator degree {d}",
                invariant="degree",
            )
        if abs(den.leading - 1) > tol.zero_test:
            raise InvalidMapError(
                f"denominator is not monic (leading coefficient {den.leading})",
                invariant="monic",
            )
        if shares_root(num, den, tol):
            raise InvalidMapError(
                "numerator and denominator share a root (resultant vanishes)",
                invariant="resultant",
            )
        self.num = num
        self.den = den

    @classmethod
    def from_parameters(cls, params: Sequence[complex], degree: int, **kw) -> "RationalMap":
        """Build from ``(a_d, ..., a_0, b_{d-1}, ..., b_0)``."""
        params = list(params)
        if len(params) != 2 * degree + 1:
            raise InvalidMapError(
                f"expected {2 * degree + 1} coefficient parameters, got {len(params)}",
                invariant="degree",
            )
        a = params[: degree + 1][::-1]
        b = params[degree + 1 :][::-1] + [1.0]
        return cls(Poly(a), Poly(b), **kw)

    @property
    def degree(self) -> int:
        return self.den.degree

    def a(self, k: int) -> complex:
        return self.num.coeff(k)

    def b(self, k: int) -> complex:
        return self.den.coeff(k)

    def parameters(self) -> np.ndarray:
        """Coefficient parameters ``(a_d, ..., a_0, b_{d-1}, ..., b_0)``."""
        d = self.degree
        a = [self.a(k) for k in range(d, -1, -1)]
        b = [self.b(k) for k in range(d - 1, -1, -1)]
        return np.array(a + b, dtype=complex)

    def __call__(self, z):
        return evaluate(self.num, z) / evaluate(self.den, z)

    def derivative_at(self, z: complex) -> complex:
        P, Q = self.num, self.den
        q = evaluate(Q, z)
        return (evaluate(derivative(P), z) * q - evaluate(P, z) * evaluate(derivative(Q), z)) / q**2

    def allclose(self, other: "RationalMap", rtol: float = 1e-10) -> bool:
        if self.degree != other.degree:
            return False
        x, y = self.parameters(), other.parameters()
        return bool(np.all(np.abs(x - y) <= rtol * max(1.0, np.max(np.abs(y)))))

    def __eq__(self, other):
        if not isinstance(other, RationalMap):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalMap(num={[complex(c) for c in self.num.coeffs]}, den={[complex(c) for c in self.den.coeffs]})"


@dataclass(frozen=True)
class FixedPoint:
    location: complex
    multiplicity: int
    multiplier: complex
    index: complex | None  # 1/(1 - multiplier), simple points only

    @property
    def is_simple(self) -> bool:
        return self.multiplicity == 1


@dataclass(frozen=True)
class FixedPointSet:
    points: tuple[FixedPoint, ...]

    def __iter__(self) -> Iterator[FixedPoint]:
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]

    @property
    def total_multiplicity(self) -> int:
        return sum(fp.multiplicity for fp in self.points)

    def multipliers(self) -> list[complex]:
        """Multipliers repeated by multiplicity, sorted by ``(re, im)``."""
        out = [fp.multiplier for fp in self.points for _ in range(fp.multiplicity)]
        return sorted(out, key=lambda m: (m.real, m.imag))

    def overlap_type(self) -> tuple[int, ...]:
        return tuple(sorted((fp.multiplicity for fp in self.points), reverse=True))

    def all_simple(self) -> bool:
        return all(fp.is_simple for fp in self.points)


def _relative_value(p: Poly, z: complex) -> float:
    scale = float(evaluate(Poly(np.abs(p.coeffs)), abs(z)).real)
    return abs(evaluate(p, z)) / scale if scale else 0.0


def _gamma_sequence() -> Iterator[int]:
    yield 0
    for k in count(1):
        yield k
        yield -k


def canonicalize(
    num_raw, den_raw, tol: Tolerances = DEFAULT_TOLERANCES
) -> tuple[RationalMap, Moebius]:
    """Bring ``num_raw/den_raw`` into canonical form.

    Returns ``(r, t)`` with ``r = t^-1 o (num_raw/den_raw) o t``.  When the
    denominator already has full degree ``t`` is the identity and only a
    rescaling happens.  Otherwise the map fixes infinity and is conjugated by
    ``t(z) = gamma + 1/z``, gamma being the first of 0, 1, -1, 2, -2, ...
    that is neither a fixed point nor a pole.
    """
    num = num_raw if isinstance(num_raw, Poly) else Poly(num_raw)
    den = den_raw if isinstance(den_raw, Poly) else Poly(den_raw)
    d = max(num.degree, den.degree)
    if d < 2:
        raise InvalidMapError(f"map has degree {d} < 2", invariant="degree")
    if den.is_zero():
        raise InvalidMapError("zero denominator", invariant="degree")
    if shares_root(num, den, tol):
        raise InvalidMapError(
            "numerator and denominator share a root (resultant vanishes)",
            invariant="resultant",
        )
    if den.degree == d:
        lead = den.leading
        den_c = np.array(den.coeffs / lead)
        den_c[-1] = 1.0
        return RationalMap(num / lead, Poly(den_c), tol=tol), Moebius.identity()

    fixed = Poly([0, 1]) * den - num
    for gamma in _gamma_sequence():
        if _relative_value(fixed, gamma) <= tol.zero_test:
            continue
        if _relative_value(den, gamma) <= tol.zero_test:
            continue
        t = Moebius(gamma, 1, 1, 0)
        n2, d2 = conjugate_polys(num, den, t, d)
        lead = d2.coeff(d)
        den_c = np.array(d2.coeffs[: d + 1] / lead)
        den_c[d] = 1.0
        return RationalMap(Poly(n2.coeffs[: d + 1] / lead), Poly(den_c), tol=tol), t


def fixed_point_polynomial(r: RationalMap) -> Poly:
    """``zQ(z) - P(z)``: monic of degree ``d+1``, its roots are the fixed points."""
    return Poly([0, 1]) * r.den - r.num


def fixed_points(r: RationalMap, tol: Tolerances = DEFAULT_TOLERANCES) -> FixedPointSet:
    """Fixed points with multiplicity, multiplier ``R'(z)`` and index.

    Points are ordered lexicographically by location.
    """
    clusters = roots_with_multiplicities(fixed_point_polynomial(r), tol)
    points = []
    for zeta, n in clusters:
        m = r.derivative_at(zeta)
        index = 1.0 / (1.0 - m) if n == 1 else None
        points.append(FixedPoint(zeta, n, m, index))
    return FixedPointSet(tuple(points))


def fatou_sum(r: RationalMap, tol: Tolerances = DEFAULT_TOLERANCES) -> complex:
    """Sum of the indices ``1/(1 - m_j)`` over all fixed points (equals 1)."""
    fps = fixed_points(r, tol)
    if not fps.all_simple():
        raise NonSimpleFixedPointError(
            f"map has non-simple fixed points (overlap type {fps.overlap_type()})"
        )
    return complex(sum(fp.index for fp in fps))


def is_normalized(r: RationalMap, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """True iff ``a_0 = 0``, ``b_1 = -1`` and ``b_0 = 1``."""
    z = tol.zero_test
    return abs(r.a(0)) <= z and abs(r.b(1) + 1) <= z and abs(r.b(0) - 1) <= z


def multiset_distance(xs, ys) -> float:
    """Largest pairwise gap under the best matching of two complex multisets.

    Sorting by ``(re, im)`` is unreliable when real parts tie up to rounding,
    so the pairing is solved as an assignment problem.
    """
    xs = np.asarray(list(xs), dtype=complex)
    ys = np.asarray(list(ys), dtype=complex)
    if xs.shape != ys.shape:
        return float("inf")
    if xs.size == 0:
        return 0.0
    cost = np.abs(xs[:, None] - ys[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())
