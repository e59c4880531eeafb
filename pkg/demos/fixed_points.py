"""Fixed points, multipliers and the index formula for a few small maps."""
import numpy as np

from ratmoduli import RationalMap, SplitMix64, fatou_sum, fixed_points, random_canonical_map

# (-3z^3 - 4z^2 - 2z) / (z^3 - z - 1): a simple fixed point and a triple one
R = RationalMap([0, -2, -4, -3], [-1, -1, 0, 1])
print("R =", R)
for fp in fixed_points(R):
    print(f"  zeta = {fp.location:.6f}  n = {fp.multiplicity}  m = {fp.multiplier:.6f}  index = {fp.index}")

# z^2/(z^2 - z + 1) has a double fixed point at 1
D = RationalMap([0, 0, 1], [1, -1, 1])
print("\nz^2/(z^2-z+1):", [(complex(np.round(f.location, 9)), f.multiplicity) for f in fixed_points(D)])

# with simple fixed points the indices 1/(1-m) add up to 1
rng = SplitMix64(2024)
for d in (2, 3, 4, 5):
    r = random_canonical_map(d, rng)
    print(f"degree {d}: sum of indices - 1 = {abs(fatou_sum(r) - 1):.2e}")
