"""Conjugating a canonical map into the normalized family.

A map is normalized when ``a_0 = 0``, ``b_1 = -1`` and ``b_0 = 1``.  The
construction moves a fixed point to the origin with a translation and then
conjugates by ``T(z) = z / (p z + q)``, which keeps 0 fixed.  Requiring
``b_1/b_0 = -1`` after conjugation forces ``q`` to be an affine function of
``p``; requiring ``b_0 = 1`` leaves a polynomial equation ``E(p) = 0`` of
degree at most ``d``.  When that equation has no usable root for one fixed
point, the next fixed point is tried.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import count

import numpy as np

from .cpoly import (
    DEFAULT_TOLERANCES,
    Poly,
    RootFindingError,
    Tolerances,
    derivative,
    evaluate,
    roots_with_multiplicities,
)
from .moebius import DegenerateConjugateError, Moebius, compose, conjugate_map
from .ratmap import (
    InvalidMapError,
    RationalMap,
    fixed_point_polynomial,
    fixed_points,
    is_normalized,
)

__all__ = [
    "NormalizationTrace",
    "NormalizationError",
    "translate_to_fixed_point",
    "b_d_star",
    "q_of_p",
    "p_equation",
    "normalize",
    "w_degeneracy",
]

log = logging.getLogger(__name__)


class NormalizationError(ArithmeticError):
    """No fixed point produced a valid normalizing transformation.

    ``attempts`` records, per candidate fixed point, why it was rejected.
    """

    def __init__(self, message, attempts=None):
        super().__init__(message)
        self.attempts = attempts or []


@dataclass(frozen=True)
class NormalizationTrace:
    result: RationalMap
    conjugator: Moebius
    chosen_fixed_point: complex
    p: complex
    q: complex
    attempts: int
    rejected: tuple = field(default=(), repr=False)


def translate_to_fixed_point(
    r: RationalMap, zeta: complex, tol: Tolerances = DEFAULT_TOLERANCES
) -> RationalMap:
    """Conjugate by ``z -> z + zeta`` so the fixed point ``zeta`` moves to 0."""
    phat = fixed_point_polynomial(r)
    scale = float(evaluate(Poly(np.abs(phat.coeffs)), abs(zeta)).real)
    if abs(evaluate(phat, zeta)) > tol.zero_test * scale:
        raise ValueError(f"{zeta} is not a fixed point")
    moved = conjugate_map(r, Moebius.translation(zeta), tol)
    # the constant term is P(zeta) - zeta Q(zeta) = 0 up to rounding
    num = np.array(moved.num.coeffs)
    num[0] = 0
    return RationalMap(Poly(num), moved.den, tol=tol)


def _reversed_head(r: RationalMap) -> tuple[Poly, Poly]:
    d = r.degree
    A = Poly([r.a(k) for k in range(d, 0, -1)])  # a_d + a_{d-1} p + ... + a_1 p^{d-1}
    B = Poly([r.b(k) for k in range(d, -1, -1)])  # 1 + b_{d-1} p + ... + b_0 p^d
    return A, B


def b_d_star_poly(r: RationalMap) -> Poly:
    """Leading denominator coefficient after conjugation by ``z/(pz+q)``, as a polynomial in ``p``.

    For ``a_0 = 0`` this equals ``prod(1 - zeta_k p)`` over the non-zero
    fixed points.
    """
    A, B = _reversed_head(r)
    return B - Poly([0, 1]) * A


def b_d_star(r: RationalMap, p: complex) -> complex:
    return evaluate(b_d_star_poly(r), p)


def q_of_p(r: RationalMap) -> Poly:
    """``q(p) = -((d b_0 - a_1) p + b_1) / b_0``."""
    d = r.degree
    b0, b1, a1 = r.b(0), r.b(1), r.a(1)
    return Poly([-b1 / b0, -(d * b0 - a1) / b0])


def p_equation(r: RationalMap, tol: Tolerances = DEFAULT_TOLERANCES) -> Poly:
    """``E(p) = b_0 q(p)**d - b_d*(p)``; roots give normalizing ``z/(pz + q(p))``.

    Requires ``a_0 = 0`` and ``b_0 != 0``.
    """
    d = r.degree
    b0 = r.b(0)
    if abs(r.a(0)) > tol.zero_test or abs(b0) <= tol.zero_test:
        raise ValueError("p_equation needs a_0 = 0 and b_0 != 0")
    q = q_of_p(r)
    if np.all(np.abs(q.coeffs) <= tol.zero_test * max(1.0, abs(b0))):
        raise ValueError("q(p) vanishes identically")
    return q**d * b0 - b_d_star_poly(r)


def _polish_p(r: RationalMap, p: complex, q_poly: Poly, bstar: Poly, tol: Tolerances) -> complex:
    """Newton on ``b_0 q(p)**d - b_d*(p)`` evaluated in factored form.

    The expanded coefficients of ``E`` suffer cancellation when ``b_0`` is
    small; raising the evaluated ``q(p)`` to the power ``d`` does not.
    """
    d, b0 = r.degree, r.b(0)
    dq = q_poly.coeff(1)
    dbstar = derivative(bstar)

    def f(x):
        qx = evaluate(q_poly, x)
        return b0 * qx**d - evaluate(bstar, x), d * b0 * qx ** (d - 1) * dq - evaluate(dbstar, x)

    val, slope = f(p)
    for _ in range(8):
        if slope == 0:
            break
        cand = p - val / slope
        cval, cslope = f(cand)
        if not abs(cval) < abs(val):
            break
        step = abs(cand - p)
        p, val, slope = cand, cval, cslope
        if step <= tol.root_refine * (1.0 + abs(p)):
            break
    return p


def _relative(p: Poly, x: complex) -> float:
    scale = float(evaluate(Poly(np.abs(p.coeffs)), abs(x)).real)
    return abs(evaluate(p, x)) / scale if scale else 0.0


def _candidate_order(fps):
    return sorted(
        fps,
        key=lambda fp: (-fp.multiplicity, abs(fp.location), fp.location.real, fp.location.imag),
    )


def _p_candidates(E: Poly, tol: Tolerances):
    """Roots of E ordered by modulus; small integers when E vanishes identically."""
    Et = E.trim(tol.zero_test)
    if Et.is_zero():
        # every p solves the equation (a blow-up fibre); take the simplest
        for k in count():
            yield complex(k)
            if k:
                yield complex(-k)
    if Et.degree < 1:
        return
    roots = [rc.value for rc in roots_with_multiplicities(Et, tol)]
    yield from sorted(roots, key=lambda p: (abs(p), p.real, p.imag))


def normalize(r: RationalMap, tol: Tolerances = DEFAULT_TOLERANCES) -> NormalizationTrace:
    """Find a Moebius conjugate of ``r`` in the normalized family.

    Fixed points are tried in order of multiplicity (largest first), then
    modulus, then ``(re, im)``.  For each, the map is translated so the
    point sits at 0 and the valid root ``p`` of :func:`p_equation` of
    smallest modulus is used.  ``result == conjugate_map(r, conjugator)``.
    """
    fps = fixed_points(r, tol)
    rejected = []
    for attempt, fp in enumerate(_candidate_order(fps), start=1):
        zeta = fp.location
        try:
            moved = translate_to_fixed_point(r, zeta, tol)
        except (ValueError, DegenerateConjugateError) as exc:
            rejected.append((zeta, f"translation failed: {exc}"))
            continue
        q_poly = q_of_p(moved)
        try:
            E = p_equation(moved, tol)
        except ValueError as exc:
            rejected.append((zeta, str(exc)))
            continue
        bstar = b_d_star_poly(moved)
        tried = 0
        try:
            candidates = _p_candidates(E, tol)
            for p in candidates:
                tried += 1
                if tried > 4 * (r.degree + 1):
                    break
                p = _polish_p(moved, p, q_poly, bstar, tol)
                q = evaluate(q_poly, p)
                if _relative(bstar, p) <= tol.zero_test or _relative(q_poly, p) <= tol.zero_test:
                    continue
                t = Moebius.fixing_origin(p, q)
                try:
                    result = conjugate_map(moved, t, tol)
                except (DegenerateConjugateError, InvalidMapError):
                    continue
                if not is_normalized(result, tol):
                    continue
                conj = compose(Moebius.translation(zeta), t)
                return NormalizationTrace(result, conj, zeta, p, q, attempt, tuple(rejected))
        except RootFindingError as exc:
            rejected.append((zeta, f"root finding failed: {exc}"))
            continue
        eff = E.trim(tol.zero_test).degree
        why = "E(p) is a non-zero constant" if eff == 0 else f"no valid root among {tried} candidates of E(p)"
        rejected.append((zeta, why))
        log.debug("fixed point %s rejected: %s", zeta, rejected[-1][1])
    raise NormalizationError(
        f"no fixed point yielded a normalizing conjugation ({len(rejected)} tried)",
        attempts=rejected,
    )


def w_degeneracy(w1: complex, w2: complex, w3: complex) -> complex:
    """Degree-3 obstruction: zero iff ``1/w1, 1/w2, 1/w3`` form an equilateral triangle."""
    return (
        (w2**2 - w1 * w2 + w1**2) * w3**2
        + (-w1 * w2**2 - w1**2 * w2) * w3
        + w1**2 * w2**2
    )
