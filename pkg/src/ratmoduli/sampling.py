"""Reproducible random maps for tests, demos and the ``gen`` subcommand.

The generator is SplitMix64: a 64-bit state advanced by the golden-ratio
increment ``0x9E3779B97F4A7C15``, then mixed with

    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

(all mod 2**64).  A uniform double in [0, 1) is ``(z >> 11) * 2**-53``.
Complex coefficients are uniform in the unit disk: ``sqrt(u) * exp(2 pi i v)``
with ``u`` drawn before ``v``.  Being pure integer arithmetic, the stream is
identical in any language.
"""

from __future__ import annotations

import cmath
import math
from typing import Sequence

from .cpoly import DEFAULT_TOLERANCES, Poly, Tolerances, from_roots, roots_with_multiplicities
from .ratmap import InvalidMapError, RationalMap
from .strata import DecompositionParams

__all__ = [
    "SplitMix64",
    "random_canonical_map",
    "random_decomposition",
    "random_spectrum",
    "regular_triangle_cubic",
]

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def disk(self, radius: float = 1.0) -> complex:
        r = radius * math.sqrt(self.random())
        return r * cmath.exp(2j * math.pi * self.random())


def random_canonical_map(
    degree: int, rng: SplitMix64, tol: Tolerances = DEFAULT_TOLERANCES
) -> RationalMap:
    """``a_0..a_d`` then ``b_0..b_{d-1}`` drawn from the unit disk; redrawn if degenerate."""
    while True:
        a = [rng.disk() for _ in range(degree + 1)]
        b = [rng.disk() for _ in range(degree)] + [1.0]
        try:
            return RationalMap(Poly(a), Poly(b), tol=tol)
        except InvalidMapError:
            continue


def random_decomposition(parts: Sequence[int], rng: SplitMix64, spread: float = 1.5):
    """Decomposition parameters with the given multiplicities.

    Fixed points are kept at least ``0.2`` apart, the top coefficients at
    least ``0.2`` in modulus, and the last ``alpha_k,1`` is solved from the
    index sum.
    """
    while True:
        zetas = []
        while len(zetas) < len(parts):
            z = rng.disk(spread)
            if all(abs(z - w) > 0.2 for w in zetas):
                zetas.append(z)
        alphas = [[rng.disk(2.0) for _ in range(n)] for n in parts]
        alphas[-1][0] = 1 - sum(al[0] for al in alphas[:-1])
        if all(abs(al[-1]) > 0.2 for al in alphas):
            return DecompositionParams.from_pairs(list(zip(zetas, alphas)))


def random_spectrum(rng: SplitMix64, radius: float = 3.0, margin: float = 1e-3):
    """Three multipliers satisfying the index formula; ``m1, m2`` in the disk of ``radius``."""
    while True:
        m1, m2 = rng.disk(radius), rng.disk(radius)
        if abs(m1 - 1) < margin or abs(m2 - 1) < margin:
            continue
        s = 1 - 1 / (1 - m1) - 1 / (1 - m2)
        if abs(s) < margin:
            continue
        return m1, m2, 1 - 1 / s


def regular_triangle_cubic(centre: complex = 1.0, radius: float = 0.5, b2: complex = 0.3) -> RationalMap:
    """A degree-3 map fixing 0 whose other fixed points have reciprocals on a regular triangle.

    The reciprocals are ``centre + radius * omega**k``.  ``b0`` and ``b1`` are
    chosen so that the normalizing equation for the fixed point 0 degenerates
    to a non-zero constant, so a normalizer must fall back to another fixed
    point.
    """
    omega = cmath.exp(2j * math.pi / 3)
    w = [1 / (centre + radius * omega**k) for k in range(3)]
    e2 = w[0] * w[1] + w[0] * w[2] + w[1] * w[2]
    e3 = w[0] * w[1] * w[2]
    # (2 b0 - e3)^3 - e3 b0^2 = 0
    cubic = Poly([-(e3**3), 6 * e3**2, -13 * e3, 8])
    b0 = max((rc.value for rc in roots_with_multiplicities(cubic)), key=lambda x: (abs(x), x.real))
    p0 = e2 / (3 * e3)
    b1 = -p0 * (2 * b0 - e3)
    Q = Poly([b0, b1, b2, 1])
    P = Poly([0, 1]) * Q - Poly([0, 1]) * from_roots(w)
    return RationalMap(P, Q)
