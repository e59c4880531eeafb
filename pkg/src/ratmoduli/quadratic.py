"""Degree-2 maps: multiplier-spectrum coordinates and their inverse.

A normalized quadratic map is ``(a2 z**2 + a1 z) / (z**2 - z + 1)``, so it
is determined by ``(a2, a1)`` with ``a2**2 + a1 a2 + a1**2 != 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .cpoly import DEFAULT_TOLERANCES, Poly, Tolerances, roots_with_multiplicities
from .ratmap import InvalidMapError, RationalMap, fixed_points, multiset_distance

__all__ = [
    "SpectrumD2",
    "InvalidSpectrumError",
    "sigma_from_normalized",
    "sigma_from_spectrum",
    "spectrum_to_normalized",
    "fatou_valid",
    "normalized_quadratic",
]

SPECTRUM_TOL = 1e-8
_ROOT3 = np.sqrt(3.0)


class InvalidSpectrumError(ValueError):
    pass


@dataclass(frozen=True)
class SpectrumD2:
    """Multipliers at the three fixed points, counted with multiplicity."""

    m1: complex
    m2: complex
    m3: complex

    def __post_init__(self):
        for name in ("m1", "m2", "m3"):
            v = complex(getattr(self, name))
            if not np.isfinite(v):
                raise ValueError("multipliers must be finite")
            object.__setattr__(self, name, v)

    def values(self) -> tuple[complex, complex, complex]:
        return (self.m1, self.m2, self.m3)

    def sorted(self) -> tuple[complex, complex, complex]:
        return tuple(sorted(self.values(), key=lambda m: (m.real, m.imag)))


def normalized_quadratic(a2: complex, a1: complex) -> RationalMap:
    return RationalMap(Poly([0, a1, a2]), Poly([1, -1, 1]))


def sigma_from_normalized(a2: complex, a1: complex) -> tuple[complex, complex, complex]:
    """Elementary symmetric functions of the multipliers of a normalized quadratic map."""
    den = a2**2 + a1 * a2 + a1**2
    if abs(den) <= DEFAULT_TOLERANCES.zero_test * max(1.0, abs(a1) ** 2 + abs(a2) ** 2):
        raise InvalidMapError("a2^2 + a1 a2 + a1^2 vanishes", invariant="resultant")
    s1 = (2 * a2**2 + a1**2 * a2 + a1**3 - 2 * a1**2 + 3 * a1) / den
    s2 = (
        -(a1**2 - 2 * a1) * a2**2
        + (a1 - 2) * a2
        - 2 * a1**3
        + 4 * a1**2
        - 4 * a1
        + 3
    ) / den
    return complex(s1), complex(s2), complex(s1 - 2)


def sigma_from_spectrum(ms) -> tuple[complex, complex, complex]:
    m1, m2, m3 = ms
    return m1 + m2 + m3, m1 * m2 + m1 * m3 + m2 * m3, m1 * m2 * m3


def _count_ones(ms, tol) -> int:
    return sum(abs(m - 1) <= tol for m in ms)


def fatou_valid(s: SpectrumD2, tol: float = SPECTRUM_TOL) -> bool:
    """Whether the multiset can occur as the fixed-point multipliers of a quadratic map."""
    ms = s.values()
    ones = _count_ones(ms, tol)
    if ones >= 2:
        return True
    if ones == 1:
        # a multiplier equal to 1 means a multiple fixed point, hence at least two 1s
        return False
    indices = [1 / (1 - m) for m in ms]
    return abs(sum(indices) - 1) <= tol * max(1.0, sum(abs(x) for x in indices))


def _nonzero_roots(coeffs, tol) -> list[complex]:
    p = Poly(coeffs).trim(DEFAULT_TOLERANCES.zero_test)
    if p.degree < 1:
        return []
    return [rc.value for rc in roots_with_multiplicities(p) if abs(rc.value) > tol]


def _admissible(m: complex, mp: complex, tol: float) -> bool:
    return (
        abs(mp) > tol
        and abs(mp - 1j / _ROOT3) > tol
        and abs(mp + 1j / _ROOT3) > tol
        and abs(m * mp - 1) > tol
        and abs(m + mp - 2) > tol
    )


def _generic_map(m1: complex, m2: complex, p: complex) -> RationalMap:
    k = -((m1 - 2) * p - m2) / (p * ((m1 - 1) * p - m2 + 1))
    return normalized_quadratic(k * (m1 * p + 1), k * ((m1**2 - 2 * m1) * p - m2 * m1))


def spectrum_to_normalized(
    s: SpectrumD2, tol: float = SPECTRUM_TOL, check_tol: float = 1e-6
) -> RationalMap:
    """A normalized quadratic map whose fixed-point multipliers are ``s``.

    Cases: ``{1,1,1}`` and ``{0,0,2}`` have fixed representatives;
    ``{1,1,m}`` gives ``z(mz + p) / (p(z^2 - z + 1))`` with
    ``p^2 + (m+1)p + m^2 = 0``; otherwise an ordered pair ``(m, m')`` is
    picked from the multiset and ``p`` solves
    ``(-m^2 + 3m - 3)p^2 + (2m m' - 3m' - 1)p - m'^2 = 0``.

    Among quadratic roots, the one keeping ``|p|`` and ``|(m-1)p - m' + 1|``
    furthest from zero is preferred.  Pairs are scanned over the six
    orderings of the ``(re, im)``-sorted multiset.
    """
    if not fatou_valid(s, tol):
        raise InvalidSpectrumError(f"Fatou index formula violated by {s.values()}")
    ms = s.sorted()
    ones = _count_ones(ms, tol)
    if ones == 3:
        return RationalMap(Poly([0, 1, -1]), Poly([1, -1, 1]))
    if ones == 2:
        m = next(x for x in ms if abs(x - 1) > tol)
        roots = _nonzero_roots([m**2, m + 1, 1], tol)
        p = max(roots, key=lambda x: (abs(x), -x.real, -x.imag))
        return normalized_quadratic(m / p, 1.0)
    if multiset_distance(ms, (0, 0, 2)) <= tol:
        return RationalMap(Poly([0, 0, 1.5]), Poly([1, -1, 1]))

    scale = 1.0 + max(abs(m) for m in ms)
    tried = []
    for i, j, _ in permutations(range(3)):
        m1, m2 = ms[i], ms[j]
        if not _admissible(m1, m2, tol):
            continue
        roots = _nonzero_roots([-(m2**2), 2 * m2 * m1 - 3 * m2 - 1, -(m1**2) + 3 * m1 - 3], tol)
        roots.sort(
            key=lambda p: (-min(abs(p), abs((m1 - 1) * p - m2 + 1)), p.real, p.imag)
        )
        for p in roots:
            if abs((m1 - 1) * p - m2 + 1) <= tol:
                continue
            try:
                r = _generic_map(m1, m2, p)
            except InvalidMapError:
                continue
            err = multiset_distance(fixed_points(r).multipliers(), ms)
            tried.append(((m1, m2, p), err))
            if err <= check_tol * scale:
                return r
    raise RuntimeError(
        f"no admissible (m, m', p) reproduced the spectrum {ms}; tried {tried}"
    )
