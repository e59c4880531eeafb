"""Overlap-type stratification and decomposition parameters.

Writing ``R(z) = z - Phat(z)/Q(z)`` with ``Phat = prod (z - zeta_k)**n_k``,
the partial fraction expansion

    Q(z)/Phat(z) = sum_k sum_{l=1}^{n_k} alpha[k][l] / (z - zeta_k)**l

gives coordinates ``(zeta_k, alpha[k][1..n_k])`` on each overlap-type locus.
``alpha[k][1]`` is the index of a simple fixed point, and the ``alpha[k][1]``
always sum to 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cpoly import DEFAULT_TOLERANCES, Poly, Tolerances, discriminant, multiply
from .ratmap import RationalMap, fixed_point_polynomial, fixed_points

__all__ = [
    "OverlapType",
    "DecomposedPoint",
    "DecompositionParams",
    "DecompositionError",
    "overlap_type",
    "decompose",
    "recompose",
    "stratum_dims",
    "locus_residual",
    "normalized_locus_residual",
    "total_overlap_residual",
    "partitions",
]

INDEX_SUM_TOL = 1e-8


class DecompositionError(ValueError):
    pass


@dataclass(frozen=True)
class OverlapType:
    """Multiset of fixed-point multiplicities, stored in descending order."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted((int(n) for n in self.parts), reverse=True))
        if not parts or parts[-1] < 1:
            raise ValueError(f"overlap type needs positive parts, got {self.parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def p(self) -> int:
        return len(self.parts)

    @property
    def degree(self) -> int:
        return sum(self.parts) - 1

    def is_generic(self) -> bool:
        return all(n == 1 for n in self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self):
        return "{" + ",".join(map(str, self.parts)) + "}"


@dataclass(frozen=True)
class DecomposedPoint:
    zeta: complex
    alphas: tuple[complex, ...]  # alpha_1 .. alpha_n, coefficient of (z - zeta)**-l

    @property
    def multiplicity(self) -> int:
        return len(self.alphas)


@dataclass(frozen=True)
class DecompositionParams:
    points: tuple[DecomposedPoint, ...]

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[complex, Sequence[complex]]]) -> "DecompositionParams":
        return cls(tuple(DecomposedPoint(complex(z), tuple(complex(a) for a in al)) for z, al in pairs))

    @property
    def degree(self) -> int:
        return sum(pt.multiplicity for pt in self.points) - 1

    @property
    def overlap_type(self) -> OverlapType:
        return OverlapType(tuple(pt.multiplicity for pt in self.points))

    def index_sum(self) -> complex:
        return sum((pt.alphas[0] for pt in self.points), 0j)

    def validate(self, tol: Tolerances = DEFAULT_TOLERANCES) -> None:
        """Raise :class:`DecompositionError` unless the parameters describe a degree >= 2 map."""
        if not self.points or any(pt.multiplicity < 1 for pt in self.points):
            raise DecompositionError("every point needs at least one coefficient")
        if self.degree < 2:
            raise DecompositionError(f"multiplicities sum to {self.degree + 1}, need at least 3")
        s = self.index_sum()
        if abs(s - 1) > INDEX_SUM_TOL:
            raise DecompositionError(f"sum of alpha_k,1 is {s}, must equal 1")
        scale = 1.0 + max(abs(a) for pt in self.points for a in pt.alphas)
        for pt in self.points:
            if abs(pt.alphas[-1]) <= tol.zero_test * scale:
                raise DecompositionError(
                    f"top coefficient alpha_k,n_k vanishes at zeta = {pt.zeta}"
                )
        zs = np.array([pt.zeta for pt in self.points])
        sep = tol.cluster_radius * (1.0 + np.max(np.abs(zs)))
        for i in range(len(zs)):
            for j in range(i + 1, len(zs)):
                if abs(zs[i] - zs[j]) <= sep:
                    raise DecompositionError(f"fixed points {zs[i]} and {zs[j]} are not distinct")


def overlap_type(r: RationalMap, tol: Tolerances = DEFAULT_TOLERANCES) -> OverlapType:
    return OverlapType(fixed_points(r, tol).overlap_type())


def _series_quotient(num: np.ndarray, den: np.ndarray, n: int) -> np.ndarray:
    """First ``n`` Taylor coefficients of ``num/den`` given those of each."""
    out = np.zeros(n, dtype=complex)
    for i in range(n):
        acc = num[i] if i < len(num) else 0
        for j in range(1, min(i, len(den) - 1) + 1):
            acc -= den[j] * out[i - j]
        out[i] = acc / den[0]
    return out


def _taylor(p: Poly, at: complex, n: int) -> np.ndarray:
    c = p.shift(at).coeffs
    out = np.zeros(n, dtype=complex)
    out[: min(n, len(c))] = c[:n]
    return out


def decompose(r: RationalMap, tol: Tolerances = DEFAULT_TOLERANCES) -> DecompositionParams:
    """Partial-fraction coefficients of ``Q/Phat`` at each fixed point.

    With ``G_k = Q / prod_{j != k} (z - zeta_j)**n_j``, the coefficient of
    ``(z - zeta_k)**-(n_k - i)`` is the i-th Taylor coefficient of ``G_k``
    at ``zeta_k``.
    """
    fps = fixed_points(r, tol)
    zs = [fp.location for fp in fps]
    ns = [fp.multiplicity for fp in fps]
    sep = tol.cluster_radius * (1.0 + max(abs(z) for z in zs))
    for i in range(len(zs)):
        for j in range(i + 1, len(zs)):
            if abs(zs[i] - zs[j]) <= sep:
                raise DecompositionError("fixed-point clusters are not separated")
    points = []
    for k, (zk, nk) in enumerate(zip(zs, ns)):
        cof = Poly([1.0])
        for j, (zj, nj) in enumerate(zip(zs, ns)):
            if j != k:
                cof = multiply(cof, Poly([-zj, 1.0]) ** nj)
        g = _series_quotient(_taylor(r.den, zk, nk), _taylor(cof, zk, nk), nk)
        points.append(DecomposedPoint(zk, tuple(complex(a) for a in g[::-1])))
    return DecompositionParams(tuple(points))


def recompose(dp: DecompositionParams, tol: Tolerances = DEFAULT_TOLERANCES) -> RationalMap:
    """Rebuild the canonical map from decomposition parameters.

    ``Q = sum_k (sum_i alpha[k][n_k - i] (z - zeta_k)**i) prod_{j != k} (z - zeta_j)**n_j``
    and ``P = z Q - Phat``.
    """
    dp.validate(tol)
    d = dp.degree
    factors = [Poly([-pt.zeta, 1.0]) ** pt.multiplicity for pt in dp.points]
    Q = Poly()
    for k, pt in enumerate(dp.points):
        local = Poly()
        shift = Poly([-pt.zeta, 1.0])
        power = Poly([1.0])
        for i in range(pt.multiplicity):
            local = local + power * pt.alphas[pt.multiplicity - 1 - i]
            power = multiply(power, shift)
        for j, f in enumerate(factors):
            if j != k:
                local = multiply(local, f)
        Q = Q + local
    qc = np.zeros(d + 1, dtype=complex)
    qc[: len(Q.coeffs)] = Q.coeffs[: d + 1]
    # leading coefficient is the index sum, already checked against 1
    qc[d] = 1.0
    Q = Poly(qc)
    phat = Poly([1.0])
    for f in factors:
        phat = multiply(phat, f)
    P = Poly((Poly([0, 1]) * Q - phat).coeffs[: d + 1])
    return RationalMap(P, Q, tol=tol)


def partitions(n: int, largest: int | None = None):
    """Partitions of ``n`` as descending tuples."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def stratum_dims(t: OverlapType | Sequence[int], d: int) -> tuple[int, int]:
    """``(d + p, d + 1 - p)``: dimension of the locus, and of the subset with
    fixed locations and indices."""
    parts = t.parts if isinstance(t, OverlapType) else tuple(t)
    if any(int(n) != n or n < 1 for n in parts) or sum(parts) != d + 1:
        raise ValueError(f"overlap type {parts} does not partition d+1 = {d + 1}")
    p = len(parts)
    return d + p, d + 1 - p


def _root_scale(phat: Poly) -> float:
    n = phat.degree
    c = phat.coeffs
    return max(abs(c[n - k]) ** (1.0 / k) for k in range(1, n + 1))


def _locus_d2(r: RationalMap) -> complex:
    a2, a1, a0 = r.a(2), r.a(1), r.a(0)
    b1, b0 = r.b(1), r.b(0)
    B = b1 - a2
    return (
        -27 * a0**2
        + a0 * (4 * B**3 - 18 * (b0 - a1) * B)
        + (a1 - b0) ** 2 * B**2
        + 4 * (a1 - b0) ** 3
    )


def _locus_d3(r: RationalMap) -> complex:
    a3, a2, a1, a0 = r.a(3), r.a(2), r.a(1), r.a(0)
    b2, b1, b0 = r.b(2), r.b(1), r.b(0)
    u, v, w = b2 - a3, b1 - a2, b0 - a1
    return (
        256 * a0**3
        + a0**2 * (128 * v**2 - 144 * u**2 * v + 27 * u**4 + 192 * u * w)
        + a0
        * (
            16 * v**4
            - 4 * u**2 * v**3
            - 80 * w * u * v**2
            + 18 * w * (u**3 + 8 * w) * v
            - 6 * w**2 * u**2
        )
        + w**2 * (4 * v**3 - u**2 * v**2 - 18 * w * u * v + w * (4 * u**3 + 27 * w))
    )


def locus_residual(r: RationalMap, scaled: bool = False) -> complex:
    """Defining polynomial of the overlap locus evaluated at ``r``.

    Degrees 2 and 3 use the explicit polynomials in the coefficient
    parameters (for degree 3 it equals ``-Discr(Phat)``); other degrees use
    ``Discr(Phat)``.  Zero iff ``r`` has a multiple fixed point.

    With ``scaled=True`` the value is divided by ``s**((d+1)d)`` where ``s``
    bounds the fixed points' moduli, which makes it invariant under
    ``z -> lambda z`` and comparable against a fixed threshold.
    """
    d = r.degree
    if d == 2:
        value = _locus_d2(r)
    elif d == 3:
        value = _locus_d3(r)
    else:
        value = discriminant(fixed_point_polynomial(r))
    if not scaled:
        return complex(value)
    s = _root_scale(fixed_point_polynomial(r))
    return complex(value / s ** ((d + 1) * d)) if s > 0 else 0j


def normalized_locus_residual(r: RationalMap) -> complex:
    """Overlap-locus equation restricted to normalized maps (degrees 2, 3).

    Vanishes iff ``a_1 = 1`` or the remaining factor vanishes; the caller is
    responsible for ``r`` being normalized.
    """
    d = r.degree
    a1, a2 = r.a(1), r.a(2)
    if d == 2:
        return complex((4 * (a1 - 1) + (a2 + 1) ** 2) * (a1 - 1))
    if d == 3:
        u = r.b(2) - r.a(3)
        rest = (
            -27 * (a1 - 1) ** 2
            + (a1 - 1) * (4 * u**3 + 18 * (a2 + 1) * u)
            + (a2 + 1) ** 2 * u**2
            + 4 * (a2 + 1) ** 3
        )
        return complex(rest * (a1 - 1))
    raise ValueError("explicit normalized locus is only available for d = 2, 3")


def total_overlap_residual(r: RationalMap) -> float:
    """Largest residual of the equations cutting out the ``{d+1}`` locus (d = 2, 3)."""
    d = r.degree
    if d == 2:
        B = r.b(1) - r.a(2)
        res = [r.a(1) - (r.b(0) - B**2 / 3), r.a(0) + B**3 / 27]
    elif d == 3:
        B = r.b(2) - r.a(3)
        res = [
            r.a(2) - (r.b(1) - 3 * B**2 / 8),
            r.a(1) - (r.b(0) - B**3 / 16),
            r.a(0) + B**4 / 256,
        ]
    else:
        raise ValueError("explicit {d+1} locus is only available for d = 2, 3")
    return float(max(abs(x) for x in res))
