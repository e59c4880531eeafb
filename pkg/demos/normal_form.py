"""Bringing maps into the normalized family a0 = 0, b1 = -1, b0 = 1."""
import numpy as np

from ratmoduli import Moebius, RationalMap, SplitMix64, conjugate_map, fixed_points, normalize, random_canonical_map
from ratmoduli.normalform import p_equation
from ratmoduli.sampling import regular_triangle_cubic

R = RationalMap([0, -2, -4, -3], [-1, -1, 0, 1])

# conjugating by z/(pz - 1 - p) gives a whole line of normalized maps
print("conjugates of R by z/(pz-1-p):")
for p in (0, 1, -2, 1j):
    Rp = conjugate_map(R, Moebius(1, 0, p, -1 - p))
    print(f"  p = {p!s:>3}: parameters {np.round(Rp.parameters(), 10)}")

# they all have the multipliers of R
print("multipliers:", np.round(fixed_points(R).multipliers(), 8))

tr = normalize(R)
print("\nnormalize(R) picks the fixed point", np.round(tr.chosen_fixed_point, 12))
print("  p =", np.round(tr.p, 12), " q =", np.round(tr.q, 12))
print("  result", np.round(tr.result.parameters(), 10))

# a random quartic
r = random_canonical_map(4, SplitMix64(7))
tr = normalize(r)
print("\nrandom quartic normalized at attempt", tr.attempts)
print("  a0, b1, b0 =", np.round([tr.result.a(0), tr.result.b(1), tr.result.b(0)], 12))

# when the reciprocals of the other fixed points form a regular triangle the
# equation for p at 0 degenerates to a non-zero constant; normalize falls back
T = regular_triangle_cubic()
print("\nE(p) at the fixed point 0:", p_equation(T).trim(1e-9))
tr = normalize(T)
print("normalized via fixed point", np.round(tr.chosen_fixed_point, 10), "after", tr.attempts, "attempts")
for zeta, why in tr.rejected:
    print("  rejected", zeta, "-", why)
