import cmath

import numpy as np
import pytest

from ratmoduli.cpoly import (
    DEFAULT_TOLERANCES,
    Poly,
    Tolerances,
    derivative,
    discriminant,
    divrem,
    evaluate,
    from_roots,
    multiply,
    relative_resultant,
    resultant,
    roots_with_multiplicities,
    shares_root,
)


def test_poly_trims_and_degree():
    assert Poly([1, 2, 0, 0]).degree == 1
    assert Poly([]).degree == -1
    assert Poly([0, 0]).is_zero()
    assert Poly([1, 2]) == Poly([1, 2, 0])


def test_tolerances_validated():
    with pytest.raises(ValueError):
        Tolerances(zero_test=0.0)
    with pytest.raises(ValueError):
        Tolerances(cluster_radius=1e-14, root_refine=1e-12)


@pytest.mark.parametrize(
    "coeffs, z, expected",
    [([1, -1, 1], 0, 1), ([1, -1, 1], 1, 1), ([0, 0, 0, 1], 2j, -8j)],
)
def test_evaluate(coeffs, z, expected):
    assert evaluate(Poly(coeffs), z) == expected


def test_evaluate_array():
    v = evaluate(Poly([1, -1, 1]), np.array([0, 1, 2]))
    assert np.array_equal(v, [1, 1, 3])


def test_derivative():
    assert derivative(Poly([0, 0, 0, 1])) == Poly([0, 0, 3])
    assert derivative(Poly([5])).is_zero()
    assert derivative(Poly([1, -1, 1])) == Poly([-1, 2])
    assert derivative(Poly([1, 1, 1, 1]), order=2) == Poly([2, 6])


def test_multiply():
    z = Poly([0, 1])
    assert multiply(z, Poly([-1, 1])) == Poly([0, -1, 1])
    p = Poly([3, 1j, 2])
    assert multiply(p, Poly([1])) == p
    assert multiply(Poly([-1, 1]), Poly([1, 1])) == Poly([-1, 0, 1])


def test_divrem():
    q, r = divrem(Poly([0, 0, 0, 1]), Poly([0, 0, 1]))
    assert q == Poly([0, 1]) and r.is_zero()
    q, r = divrem(Poly([1, -1, 1]), Poly([0, 1]))
    assert q == Poly([-1, 1]) and r == Poly([1])
    p = Poly([2, 3, 4])
    q, r = divrem(p, Poly([1]))
    assert q == p and r.is_zero()
    with pytest.raises(ZeroDivisionError):
        divrem(p, Poly([]))


def test_shift_is_taylor_expansion():
    p = Poly([1, -1, 1])
    # p(z + 2) = z^2 + 3z + 3
    assert p.shift(2) == Poly([3, 3, 1])


def _as_set(clusters):
    return sorted((complex(round(c.value.real, 9), round(c.value.imag, 9)), c.multiplicity) for c in clusters)


def test_roots_monomial():
    assert [(c.value, c.multiplicity) for c in roots_with_multiplicities(Poly([0, 0, 0, 1]))] == [(0, 3)]


def test_roots_factored():
    cl = roots_with_multiplicities(from_roots([0, 1, 1]))
    assert [c.multiplicity for c in cl] == [1, 2]
    assert abs(cl[0].value) < 1e-12 and abs(cl[1].value - 1) < 1e-10


def test_roots_quadratic_formula():
    cl = roots_with_multiplicities(Poly([1, -1, 1]))
    expected = [cmath.exp(-1j * cmath.pi / 3), cmath.exp(1j * cmath.pi / 3)]
    assert [c.multiplicity for c in cl] == [1, 1]
    assert max(abs(c.value - e) for c, e in zip(cl, expected)) < 1e-13


@pytest.mark.parametrize(
    "roots",
    [
        [2, 2, 2, 2, -1],
        [1j, 1j, -1j, -1j, 0.5],
        [0.3 + 0.1j] * 3 + [-0.7] * 2 + [4],
        [1e-3, 1e-3, 5],
    ],
)
def test_roots_multiplicities_recovered(roots):
    cl = roots_with_multiplicities(from_roots(roots))
    got = sorted((c.multiplicity for c in cl), reverse=True)
    distinct = {}
    for r in roots:
        distinct[complex(r)] = distinct.get(complex(r), 0) + 1
    assert got == sorted(distinct.values(), reverse=True)
    for c in cl:
        assert min(abs(c.value - r) for r in distinct) < 1e-8


def test_roots_against_numpy_oracle():
    rng = np.random.default_rng(3)
    for n in range(2, 12):
        c = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
        ours = np.array([cl.value for cl in roots_with_multiplicities(Poly(c))])
        ref = np.roots(c[::-1])
        assert len(ours) == n
        for r in ref:
            assert np.min(np.abs(ours - r)) < 1e-9 * (1 + abs(r))


def test_roots_rejects_constants():
    with pytest.raises(ValueError):
        roots_with_multiplicities(Poly([3]))


def test_resultant_examples():
    z = Poly([0, 1])
    assert abs(resultant(z, z)) == 0
    assert abs(resultant(Poly([-1, 1]), Poly([1, 1])) - 2) < 1e-14
    assert abs(resultant(Poly([0, 0, 1]), Poly([1, -1, 1])) - 1) < 1e-14


def test_resultant_product_formula():
    # Res(p, q) = lc(p)^deg q * prod q(roots of p)
    rng = np.random.default_rng(5)
    pr = rng.normal(size=3) + 1j * rng.normal(size=3)
    q = Poly(rng.normal(size=4) + 1j * rng.normal(size=4))
    p = from_roots(pr, leading=2.0)
    expected = 2.0**q.degree * np.prod([evaluate(q, r) for r in pr])
    assert abs(resultant(p, q) - expected) < 1e-10 * abs(expected)


def test_discriminant_examples():
    assert abs(discriminant(from_roots([0, 1, 1]))) < 1e-14
    assert abs(discriminant(Poly([1, -1, 1])) - (-3)) < 1e-13
    assert abs(discriminant(Poly([1, 0, 1])) - (-4)) < 1e-13


def test_discriminant_cubic_formula():
    # b^2c^2 - 4ac^3 - 4b^3d - 27a^2d^2 + 18abcd for a z^3 + b z^2 + c z + d
    a, b, c, d = 2.0, -1 + 1j, 3.0, 0.5j
    expected = b**2 * c**2 - 4 * a * c**3 - 4 * b**3 * d - 27 * a**2 * d**2 + 18 * a * b * c * d
    assert abs(discriminant(Poly([d, c, b, a])) - expected) < 1e-12 * abs(expected)


def test_relative_resultant_scale_invariant():
    p, q = Poly([1, 2, 3]), Poly([-1, 0.5, 1])
    assert abs(relative_resultant(p, q) - relative_resultant(p * 1e6, q * 1e-4)) < 1e-12


def test_shares_root():
    assert shares_root(from_roots([1, 2]), from_roots([2, 3]))
    assert not shares_root(from_roots([1, 2]), from_roots([3, 4]))
    assert shares_root(Poly([0, 1]), Poly([0, 0, 1]))
    assert not shares_root(Poly([1]), from_roots([3, 4]))
