"""Fractional linear transformations and conjugation of rational maps."""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .cpoly import DEFAULT_TOLERANCES, Poly, Tolerances, multiply

__all__ = [
    "INF",
    "Moebius",
    "DegenerateConjugateError",
    "apply",
    "compose",
    "inverse",
    "conjugate_polys",
    "conjugate_map",
]

#: The point at infinity of the Riemann sphere.
INF = complex(float("inf"), 0.0)


class DegenerateConjugateError(ValueError):
    """The conjugated map fixes infinity, so it has no monic degree-d denominator."""


def _is_inf(z) -> bool:
    return cmath.isinf(z)


@dataclass(frozen=True)
class Moebius:
    """The map ``z -> (a z + b) / (c z + d)``.

    Entries are rescaled on construction so the entry of largest modulus
    equals 1; two transforms that differ by a scalar compare equal.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        m = np.array([self.a, self.b, self.c, self.d], dtype=complex)
        if not np.all(np.isfinite(m)):
            raise ValueError("Moebius entries must be finite")
        k = int(np.argmax(np.abs(m)))
        if m[k] == 0:
            raise ValueError("zero matrix is not a Moebius transformation")
        m = m / m[k]
        det = m[0] * m[3] - m[1] * m[2]
        if abs(det) <= DEFAULT_TOLERANCES.zero_test:
            raise ValueError(f"singular Moebius matrix (det={det:.3e})")
        for name, v in zip("abcd", m):
            object.__setattr__(self, name, complex(v))

    @classmethod
    def from_matrix(cls, m) -> "Moebius":
        m = np.asarray(m, dtype=complex)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def identity(cls) -> "Moebius":
        return cls(1, 0, 0, 1)

    @classmethod
    def translation(cls, alpha: complex) -> "Moebius":
        """``z -> z + alpha``."""
        return cls(1, alpha, 0, 1)

    @classmethod
    def fixing_origin(cls, p: complex, q: complex) -> "Moebius":
        """``z -> z / (p z + q)``; fixes 0 with derivative ``1/q`` there."""
        return cls(1, 0, p, q)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def __call__(self, z):
        return apply(self, z)

    def __matmul__(self, other: "Moebius") -> "Moebius":
        return compose(self, other)

    def is_close(self, other: "Moebius", atol: float = 1e-12) -> bool:
        """Equality up to a scalar multiple of the matrix."""
        x = self.matrix.ravel()
        y = other.matrix.ravel()
        # both normalized to a unit entry; compare the 2x2 minors
        return bool(
            np.all(np.abs(np.outer(x, y) - np.outer(y, x)) <= atol)
        )


def apply(t: Moebius, z):
    if _is_inf(z):
        return INF if t.c == 0 else t.a / t.c
    den = t.c * z + t.d
    if den == 0:
        return INF
    return (t.a * z + t.b) / den


def compose(s: Moebius, t: Moebius) -> Moebius:
    """``s o t``: apply ``t`` first."""
    return Moebius.from_matrix(s.matrix @ t.matrix)


def inverse(t: Moebius) -> Moebius:
    return Moebius(t.d, -t.b, -t.c, t.a)


def _linear_powers(lin: Poly, n: int) -> list[Poly]:
    out = [Poly([1.0])]
    for _ in range(n):
        out.append(multiply(out[-1], lin))
    return out


def conjugate_polys(num: Poly, den: Poly, t: Moebius, degree: int) -> tuple[Poly, Poly]:
    """Numerator and denominator of ``t^-1 o (num/den) o t``, unnormalized.

    ``num/den`` is treated as a degree-``degree`` map; substituting
    ``t(z) = (az+b)/(cz+d)`` and clearing ``(cz+d)**degree`` gives
    ``sum_k c_k (az+b)**k (cz+d)**(degree-k)`` for each polynomial.
    """
    up = _linear_powers(Poly([t.b, t.a]), degree)
    down = _linear_powers(Poly([t.d, t.c]), degree)

    def substitute(p: Poly) -> Poly:
        acc = Poly()
        for k in range(degree + 1):
            ck = p.coeff(k)
            if ck != 0:
                acc = acc + multiply(up[k], down[degree - k]) * ck
        return acc

    pn = substitute(num)
    qn = substitute(den)
    # t^-1(w) = (d w - b) / (-c w + a)
    return pn * t.d - qn * t.b, qn * t.a - pn * t.c


def conjugate_map(r, t: Moebius, tol: Tolerances = DEFAULT_TOLERANCES):
    """Return the canonical form of ``t^-1 o r o t``.

    Fixed points of the result are the images of those of ``r`` under
    ``t^-1``, with the same multipliers.  Raises
    :class:`DegenerateConjugateError` when the conjugate fixes infinity.
    """
    d = r.degree
    num, den = conjugate_polys(r.num, r.den, t, d)
    lead = den.coeff(d)
    if abs(lead) <= tol.zero_test * max(np.max(np.abs(den.coeffs)), np.max(np.abs(num.coeffs))):
        raise DegenerateConjugateError(
            "conjugate fixes infinity; re-canonicalize with ratmap.canonicalize"
        )
    num_c = num.coeffs[: d + 1] / lead
    den_c = np.array(den.coeffs[: d + 1] / lead)
    den_c[d] = 1.0
    return type(r)(Poly(num_c), Poly(den_c), tol=tol)
