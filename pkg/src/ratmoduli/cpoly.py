"""Dense complex polynomials: arithmetic, Aberth root finding with
multiplicity clustering, resultants and discriminants.

Coefficients are stored in ascending order, ``c[k]`` multiplies ``z**k``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

__all__ = [
    "Poly",
    "RootCluster",
    "Tolerances",
    "RootFindingError",
    "DEFAULT_TOLERANCES",
    "evaluate",
    "derivative",
    "multiply",
    "divrem",
    "roots_with_multiplicities",
    "resultant",
    "relative_resultant",
    "discriminant",
    "relative_discriminant",
    "shares_root",
    "from_roots",
]

_EPS = np.finfo(float).eps
_MAX_ITER = 200
# fixed angular offset of the initial Aberth guesses; breaks the real-axis
# symmetry of real polynomials
_START_PHASE = 0.4
# how far beyond the predicted noise spread cluster members may lie
_SPREAD_FACTOR = 4.0


class RootFindingError(ArithmeticError):
    """Simultaneous iteration did not reach the backward-error floor."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared by every module.

    Parameters
    ----------
    root_refine : float
        Relative step size at which Newton/Aberth updates are considered
        converged.
    cluster_radius : float
        Minimum merge radius for root clustering, scaled by
        ``1 + max|root|``.
    zero_test : float
        Relative threshold for treating a computed quantity as zero.
    """

    root_refine: float = 1e-12
    cluster_radius: float = 1e-7
    zero_test: float = 1e-9

    def __post_init__(self):
        for name in ("root_refine", "cluster_radius", "zero_test"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be finite and positive, got {value!r}")
        if self.cluster_radius <= self.root_refine:
            raise ValueError("cluster_radius must exceed root_refine")


DEFAULT_TOLERANCES = Tolerances()


def _as_coeffs(coeffs) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(coeffs, dtype=complex)).ravel()
    if not np.all(np.isfinite(arr)):
        raise ValueError("polynomial coefficients must be finite")
    nz = np.flatnonzero(arr)
    arr = arr[: nz[-1] + 1] if nz.size else arr[:0]
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


class Poly:
    """Immutable polynomial with complex coefficients in ascending order.

    Exact zero leading coefficients are dropped on construction, so
    ``degree`` is ``len(coeffs) - 1``; the zero polynomial has degree -1.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[complex] | np.ndarray | "Poly" = ()):
        if isinstance(coeffs, Poly):
            self._c = coeffs._c
        else:
            self._c = _as_coeffs(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs)

    # -- construction helpers -------------------------------------------
    @classmethod
    def monomial(cls, k: int, c: complex = 1.0) -> "Poly":
        out = np.zeros(k + 1, dtype=complex)
        out[k] = c
        return cls(out)

    @classmethod
    def constant(cls, c: complex) -> "Poly":
        return cls([c])

    # -- basic properties -------------------------------------------------
    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def leading(self) -> complex:
        return complex(self._c[-1]) if len(self._c) else 0j

    def is_zero(self) -> bool:
        return len(self._c) == 0

    def coeff(self, k: int) -> complex:
        """Coefficient of ``z**k`` (zero beyond the degree)."""
        return complex(self._c[k]) if 0 <= k < len(self._c) else 0j

    def norm(self) -> float:
        return float(np.linalg.norm(self._c))

    def monic(self) -> "Poly":
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no leading coefficient")
        return Poly(self._c / self._c[-1])

    def trim(self, rel_tol: float) -> "Poly":
        """Drop leading coefficients below ``rel_tol * max|c|``."""
        if self.is_zero():
            return self
        scale = np.max(np.abs(self._c))
        c = self._c
        k = len(c)
        while k > 0 and abs(c[k - 1]) <= rel_tol * scale:
            k -= 1
        return Poly(c[:k])

    def shift(self, a: complex) -> "Poly":
        """Return ``p(z + a)``, i.e. the Taylor coefficients of ``p`` at ``a``."""
        c = np.array(self._c, dtype=complex)
        n = len(c)
        # repeated synthetic division
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                c[j] += a * c[j + 1]
        return Poly(c)

    # -- arithmetic -------------------------------------------------------
    def __call__(self, z):
        return evaluate(self, z)

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self._c), len(other._c))
        out = np.zeros(n, dtype=complex)
        out[: len(self._c)] += self._c
        out[: len(other._c)] += other._c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(-self._c)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Poly):
            return multiply(self, other)
        return Poly(self._c * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Poly(self._c / complex(scalar))

    def __pow__(self, k: int):
        out = Poly([1.0])
        for _ in range(k):
            out = multiply(out, self)
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return np.array_equal(self._c, other._c)

    def __hash__(self):
        return hash(self._c.tobytes())

    def allclose(self, other: "Poly", rtol: float = 1e-12, atol: float = 0.0) -> bool:
        n = max(len(self._c), len(other._c))
        a = np.zeros(n, dtype=complex)
        b = np.zeros(n, dtype=complex)
        a[: len(self._c)] = self._c
        b[: len(other._c)] = other._c
        scale = max(np.max(np.abs(a), initial=0.0), np.max(np.abs(b), initial=0.0))
        return bool(np.all(np.abs(a - b) <= atol + rtol * scale))

    def __repr__(self):
        return f"Poly({[complex(c) for c in self._c]})"


def _coerce(x) -> Poly:
    return x if isinstance(x, Poly) else Poly([x])


def evaluate(p: Poly, z):
    """Horner evaluation of ``p`` at a scalar or array ``z``."""
    c = p.coeffs
    if np.ndim(z) == 0:
        acc = 0j
        for a in c[::-1]:
            acc = acc * z + a
        return complex(acc)
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for a in c[::-1]:
        acc = acc * z + a
    return acc


def derivative(p: Poly, order: int = 1) -> Poly:
    c = p.coeffs
    for _ in range(order):
        if len(c) <= 1:
            return Poly()
        c = c[1:] * np.arange(1, len(c))
    return Poly(c)


def multiply(p: Poly, q: Poly) -> Poly:
    if p.is_zero() or q.is_zero():
        return Poly()
    return Poly(np.convolve(p.coeffs, q.coeffs))


def divrem(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Polynomial long division, ``p = q * quot + rem`` with deg rem < deg q."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    n, m = p.degree, q.degree
    if n < m:
        return Poly(), p
    rem = np.array(p.coeffs, dtype=complex)
    quot = np.zeros(n - m + 1, dtype=complex)
    lc = q.coeffs[-1]
    for k in range(n - m, -1, -1):
        t = rem[k + m] / lc
        quot[k] = t
        rem[k : k + m + 1] -= t * q.coeffs
    return Poly(quot), Poly(rem[:m])


def from_roots(roots: Iterable[complex], leading: complex = 1.0) -> Poly:
    out = Poly([leading])
    for r in roots:
        out = multiply(out, Poly([-r, 1.0]))
    return out


class RootCluster(NamedTuple):
    value: complex
    multiplicity: int


def _noise_bound(abs_c: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Running rounding-error bound of Horner's rule at ``z``."""
    az = np.abs(z)
    acc = np.zeros(az.shape)
    for a in abs_c[::-1]:
        acc = acc * az + a
    return 4 * len(abs_c) * _EPS * acc


def _aberth(c: np.ndarray, tol: Tolerances) -> np.ndarray:
    """Aberth-Ehrlich iteration for a polynomial with ``c[0] != 0``."""
    n = len(c) - 1
    if n == 1:
        return np.array([-c[0] / c[1]])
    p = Poly(c)
    dp = derivative(p)
    abs_c = np.abs(c)
    radius = 1.0 + np.max(abs_c[:-1]) / abs_c[-1]
    z = radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + _START_PHASE))
    for _ in range(_MAX_ITER):
        pz = evaluate(p, z)
        dpz = evaluate(dp, z)
        done = np.abs(pz) <= _noise_bound(abs_c, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = pz / dpz
            step = newton / (1.0 - newton * s)
        step = np.where(np.isfinite(step), step, 0.0)
        step[done] = 0.0
        z = z - step
        if np.all(done | (np.abs(step) <= tol.root_refine * (1.0 + np.abs(z)))):
            return z
    residuals = np.abs(evaluate(p, z))
    raise RootFindingError(
        f"Aberth iteration did not converge in {_MAX_ITER} steps "
        f"(max residual {residuals.max():.3e})",
        residuals=residuals,
    )


def _noise_at(abs_c: np.ndarray, z) -> float:
    """Uncertainty of ``p(z)``: Horner rounding plus a normwise coefficient error."""
    z = np.atleast_1d(z)
    normwise = _noise_bound(np.full_like(abs_c, abs_c.max()), z)
    return float((_noise_bound(abs_c, z) + normwise)[0])


def _cluster_spread(p: Poly, abs_c: np.ndarray, center: complex, m: int) -> float:
    """Distance over which an m-fold root at ``center`` scatters under the noise in ``p``.

    Near an m-fold root ``p(z) ~ p^(m)(c)/m! (z - c)^m``, so a perturbation of
    size ``eps`` moves the roots a distance ``(m! eps / |p^(m)(c)|)**(1/m)``.
    """
    dm = abs(evaluate(derivative(p, m), center)) / math.factorial(m)
    if dm == 0:
        return 0.0
    return (_noise_at(abs_c, center) / dm) ** (1.0 / m)


def _agglomerate(p: Poly, z: np.ndarray, floor: float) -> list[list[int]]:
    """Single-linkage merging in order of distance, gated by the expected spread.

    Gaps up to ``floor`` always merge.  Otherwise the candidate group first
    absorbs every approximation within twice its radius of its centre (an
    m-fold root is isolated from the other roots), and is accepted when its
    diameter is within ``_SPREAD_FACTOR`` times the noise-induced spread of an
    m-fold root at that centre.
    """
    n = len(z)
    abs_c = np.abs(p.coeffs)
    groups = {i: [i] for i in range(n)}
    owner = list(range(n))
    pairs = sorted(
        ((abs(z[i] - z[j]), i, j) for i in range(n) for j in range(i + 1, n)),
        key=lambda t: t[0],
    )
    for dist, i, j in pairs:
        gi, gj = owner[i], owner[j]
        if gi == gj:
            continue
        absorbed = {gi, gj}
        if dist > floor:
            while True:
                members = [k for g in absorbed for k in groups[g]]
                center = complex(np.mean(z[members]))
                reach = 2.0 * float(np.max(np.abs(z[members] - center)))
                near = {owner[k] for k in range(n) if owner[k] not in absorbed and abs(z[k] - center) <= reach}
                if not near:
                    break
                absorbed |= near
            pts = z[members]
            diameter = float(np.max(np.abs(pts[:, None] - pts[None, :])))
            if diameter > _SPREAD_FACTOR * _cluster_spread(p, abs_c, center, len(members)):
                continue
        keep = min(absorbed)
        for g in absorbed - {keep}:
            for k in groups.pop(g):
                owner[k] = keep
                groups[keep].append(k)
    return list(groups.values())


def _refine(p: Poly, center: complex, m: int, spread: float, tol: Tolerances) -> complex:
    """Newton on ``p^(m-1)``, where an m-fold root is simple."""
    q = derivative(p, m - 1)
    dq = derivative(q)
    z = center
    for _ in range(20):
        d = evaluate(dq, z)
        if d == 0:
            break
        step = evaluate(q, z) / d
        if not cmath.isfinite(step) or abs(z - step - center) > spread:
            break
        z -= step
        if abs(step) <= tol.root_refine * (1.0 + abs(z)):
            break
    return z


def roots_with_multiplicities(p: Poly, tol: Tolerances = DEFAULT_TOLERANCES) -> list[RootCluster]:
    """Roots of ``p`` grouped into clusters with multiplicities.

    Approximations come from Aberth-Ehrlich iteration.  Groups are merged,
    closest pair first, when the gap is below ``cluster_radius * (1 + max|root|)``
    or within a small multiple of the distance an m-fold root at the merged
    centre would scatter under rounding noise; the latter catches the
    ``eps**(1/m)`` spread of higher multiplicities.  Each cluster centre is
    the mean of its members, polished by Newton's method on the
    ``(m-1)``-th derivative.

    Returns clusters sorted lexicographically by ``(re, im)``.
    """
    if p.degree < 1:
        raise ValueError("root finding needs a polynomial of degree >= 1")
    c = p.coeffs
    nzero = int(np.flatnonzero(c)[0])
    approx = np.zeros(nzero, dtype=complex)
    if p.degree > nzero:
        approx = np.concatenate([approx, _aberth(c[nzero:], tol)])

    scale = 1.0 + float(np.max(np.abs(approx)))
    groups = _agglomerate(p, approx, tol.cluster_radius * scale)

    clusters = []
    for g in groups:
        members = approx[g]
        m = len(g)
        center = complex(np.mean(members))
        if nzero and m == nzero and np.all(members == 0):
            value = 0j
        else:
            spread = max(float(np.max(np.abs(members - center))), tol.cluster_radius * scale)
            value = complex(_refine(p, center, m, spread, tol))
        clusters.append(RootCluster(value, m))
    clusters.sort(key=lambda rc: (rc.value.real, rc.value.imag))
    return clusters


def _sylvester(p: Poly, q: Poly) -> np.ndarray:
    m, n = p.degree, q.degree
    size = m + n
    S = np.zeros((size, size), dtype=complex)
    pd = p.coeffs[::-1]
    qd = q.coeffs[::-1]
    for i in range(n):
        S[i, i : i + m + 1] = pd
    for i in range(m):
        S[n + i, i : i + n + 1] = qd
    return S


def resultant(p: Poly, q: Poly) -> complex:
    """Sylvester resultant, ``lc(p)**deg(q) * prod(q(r) for r in roots(p))``."""
    if p.is_zero() or q.is_zero():
        return 0j
    if p.degree == 0 and q.degree == 0:
        raise ValueError("resultant of two constants is undefined")
    return complex(np.linalg.det(_sylvester(p, q)))


def relative_resultant(p: Poly, q: Poly) -> float:
    """``|Res(p, q)|`` divided by its Hadamard bound ``|p|**deg q * |q|**deg p``.

    Scale invariant and bounded by 1; near zero iff ``p`` and ``q`` nearly
    share a root.
    """
    if p.is_zero() or q.is_zero():
        return 0.0
    r = abs(resultant(p, q))
    return r / (p.norm() ** q.degree * q.norm() ** p.degree)


def discriminant(p: Poly) -> complex:
    n = p.degree
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    sign = -1.0 if (n * (n - 1) // 2) % 2 else 1.0
    return sign * resultant(p, derivative(p)) / p.leading


def relative_discriminant(p: Poly) -> float:
    """Scale-invariant size of the discriminant, see :func:`relative_resultant`."""
    if p.degree < 2:
        raise ValueError("discriminant needs degree >= 2")
    return relative_resultant(p, derivative(p))


def _approx_roots(p: Poly, tol: Tolerances) -> np.ndarray:
    c = p.coeffs
    nzero = int(np.flatnonzero(c)[0])
    out = np.zeros(nzero, dtype=complex)
    if p.degree > nzero:
        out = np.concatenate([out, _aberth(c[nzero:], tol)])
    return out


def shares_root(p: Poly, q: Poly, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """Whether ``p`` and ``q`` have a numerically common root.

    A Hadamard-scaled resultant above ``zero_test`` settles the question
    cheaply.  Otherwise each root ``r`` of the higher-degree polynomial is
    checked for ``|p(r)| <= zero_test * sum |c_k| |r|**k`` on the other one;
    unlike the resultant ratio this does not degrade when a translation
    spreads the coefficient magnitudes.
    """
    if p.is_zero() or q.is_zero():
        return True
    if p.degree == 0 or q.degree == 0:
        return False
    if relative_resultant(p, q) > tol.zero_test:
        return False
    if p.degree > q.degree:
        p, q = q, p
    roots = _approx_roots(q, tol)
    abs_c = Poly(np.abs(p.coeffs))
    vals = np.abs(evaluate(p, roots))
    scale = np.abs(evaluate(abs_c, np.abs(roots)))
    return bool(np.any(vals <= tol.zero_test * scale))
