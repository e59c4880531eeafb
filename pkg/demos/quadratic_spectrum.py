"""Degree 2: from coefficients to multipliers and back."""
import numpy as np

from ratmoduli import SpectrumD2, fixed_points, sigma_from_normalized, spectrum_to_normalized

for a2, a1 in [(1, 0), (-1, 1), (2, 3)]:
    s = sigma_from_normalized(a2, a1)
    print(f"(a2, a1) = ({a2}, {a1}):  sigma = {np.round(s, 12)}")

for ms in [(1, 1, 1), (0, 0, 2), (1, 1, 0), (1, 1, 5)]:
    r = spectrum_to_normalized(SpectrumD2(*ms))
    print(f"{ms} -> {np.round(r.parameters(), 12)}")

# a generic spectrum: pick two multipliers, the third follows from the index formula
m1, m2 = 0.5 + 0.5j, -2.0
m3 = 1 - 1 / (1 - 1 / (1 - m1) - 1 / (1 - m2))
r = spectrum_to_normalized(SpectrumD2(m1, m2, m3))
print("\nasked for", np.round([m1, m2, m3], 10))
print("got      ", np.round(fixed_points(r).multipliers(), 10))
