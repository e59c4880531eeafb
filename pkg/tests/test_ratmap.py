import numpy as np
import pytest

from ratmoduli.cpoly import Poly, from_roots
from ratmoduli.moebius import Moebius, conjugate_map, inverse
from ratmoduli.ratmap import (
    InvalidMapError,
    NonSimpleFixedPointError,
    RationalMap,
    canonicalize,
    fatou_sum,
    fixed_point_polynomial,
    fixed_points,
    is_normalized,
    multiset_distance,
)
from ratmoduli.sampling import SplitMix64, random_canonical_map


@pytest.mark.parametrize(
    "num, den, invariant",
    [
        ([0, 1], [1, 1], "degree"),
        ([1, 1, 1, 1], [1, -1, 1], "degree"),
        ([0, 0, 1], [1, -1, 2], "monic"),
        ([0, -1, 1], [0, 1, 1], "resultant"),
    ],
)
def test_invariants_rejected(num, den, invariant):
    with pytest.raises(InvalidMapError) as info:
        RationalMap(num, den)
    assert info.value.invariant == invariant


def test_parameters_round_trip(triple_cubic):
    params = triple_cubic.parameters()
    assert np.array_equal(params, [-3, -4, -2, 0, 0, -1, -1])
    assert RationalMap.from_parameters(params, 3) == triple_cubic


def test_canonicalize_already_canonical():
    r, t = canonicalize(Poly([0, 0, 1]), Poly([1, -1, 1]))
    assert r == RationalMap([0, 0, 1], [1, -1, 1]) and t.is_close(Moebius.identity())


def test_canonicalize_rescales():
    r, t = canonicalize(Poly([0, 0, 2]), Poly([2, -2, 2]))
    assert r.allclose(RationalMap([0, 0, 1], [1, -1, 1]), 1e-15)
    assert t.is_close(Moebius.identity())


def test_canonicalize_map_fixing_infinity():
    num, den = Poly([0, 0, 1]), Poly([1])
    r, t = canonicalize(num, den)
    # 0 and 1 are fixed by z^2, so gamma = -1 and t(z) = -1 + 1/z
    assert t.is_close(Moebius(-1, 1, 1, 0))
    assert r.allclose(RationalMap([0, 0, 0.5], [0.5, -1, 1]), 1e-14)
    ti = inverse(t)
    for z in [0.3 + 0.1j, 2 - 1j]:
        assert abs(r(z) - ti(t(z) ** 2)) < 1e-12
    assert sorted(m.real for m in fixed_points(r).multipliers()) == pytest.approx([0, 0, 2], abs=1e-9)


def test_canonicalize_rejects_degenerate():
    with pytest.raises(InvalidMapError):
        canonicalize(Poly([0, 1]), Poly([1]))
    with pytest.raises(InvalidMapError):
        canonicalize(from_roots([1, 2]), from_roots([1, 3]))


@pytest.mark.parametrize(
    "num, den, expected",
    [
        ([0, 1, -1], [1, -1, 1], from_roots([0, 0, 0])),
        ([0, 0, 1], [1, -1, 1], from_roots([0, 1, 1])),
        ([0, -2, -4, -3], [-1, -1, 0, 1], from_roots([0, -1, -1, -1])),
    ],
)
def test_fixed_point_polynomial(num, den, expected):
    assert fixed_point_polynomial(RationalMap(num, den)).allclose(expected, atol=1e-15)


def test_fixed_points_triple_cubic(triple_cubic):
    fps = fixed_points(triple_cubic)
    assert [(round(fp.location.real, 9), fp.multiplicity) for fp in fps] == [(-1, 3), (0, 1)]
    triple, simple = fps
    assert abs(triple.multiplier - 1) < 1e-8 and triple.index is None
    assert abs(simple.multiplier - 2) < 1e-12 and abs(simple.index + 1) < 1e-12
    assert fps.overlap_type() == (3, 1)


def test_fixed_points_double(double_point):
    fps = fixed_points(double_point)
    assert [fp.multiplicity for fp in fps] == [1, 2]
    assert abs(fps[0].multiplier) < 1e-12 and abs(fps[0].index - 1) < 1e-12
    assert abs(fps[1].location - 1) < 1e-9 and abs(fps[1].multiplier - 1) < 1e-8


def test_multipliers_002():
    r = RationalMap([0, 0, 1.5], [1, -1, 1])
    assert multiset_distance(fixed_points(r).multipliers(), [0, 0, 2]) < 1e-12
    assert abs(fatou_sum(r) - 1) < 1e-12


def test_fatou_sum_random_cubics():
    rng = SplitMix64(11)
    for _ in range(50):
        r = random_canonical_map(3, rng)
        assert abs(fatou_sum(r) - 1) < 1e-8


def test_fatou_sum_rejects_multiple(triple_cubic):
    with pytest.raises(NonSimpleFixedPointError):
        fatou_sum(triple_cubic)


def test_is_normalized(n3_point, double_point):
    assert is_normalized(n3_point)
    assert is_normalized(double_point)
    assert not is_normalized(RationalMap([1, 0, 1], [1, -1, 1]))


def test_fixed_points_move_under_conjugation():
    rng = SplitMix64(4)
    r = random_canonical_map(3, rng)
    t = Moebius(1, 0.2, -0.1j, 1)
    c = conjugate_map(r, t)
    moved = [inverse(t)(fp.location) for fp in fixed_points(r)]
    assert multiset_distance(moved, [fp.location for fp in fixed_points(c)]) < 1e-9
    assert multiset_distance(fixed_points(r).multipliers(), fixed_points(c).multipliers()) < 1e-9


def test_multiset_distance_ignores_order():
    assert multiset_distance([1, 2j, 3], [3, 1, 2j]) == 0
    assert multiset_distance([1, 2], [1, 2, 3]) == float("inf")
    # near-equal real parts would confuse a lexicographic sort
    a = [1 + 1e-15 + 1j, 1 - 1j]
    b = [1 - 1j, 1 + 1j]
    assert multiset_distance(a, b) < 1e-14
