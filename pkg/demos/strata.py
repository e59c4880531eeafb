"""Overlap types, decomposition parameters and the loci of multiple fixed points."""
import numpy as np

from ratmoduli import (
    DecompositionParams,
    RationalMap,
    SplitMix64,
    decompose,
    locus_residual,
    overlap_type,
    partitions,
    random_canonical_map,
    recompose,
    stratum_dims,
)

R = RationalMap([0, -2, -4, -3], [-1, -1, 0, 1])
print("overlap type of R:", overlap_type(R))
for pt in decompose(R).points:
    print(f"  zeta = {pt.zeta:.3f}  alphas = {np.round(pt.alphas, 12)}")

# the single normalized quadratic with a triple fixed point
N3 = recompose(DecompositionParams.from_pairs([(0, (1, -1, 1))]))
print("\nrecompose(zeta=0, alpha=(1,-1,1)) ->", np.round(N3.parameters(), 12))

# round trip through decomposition parameters on a generic map
r = random_canonical_map(4, SplitMix64(1))
back = recompose(decompose(r))
print("\nround trip error on a random quartic:", np.max(np.abs(back.parameters() - r.parameters())))

# the locus polynomial vanishes exactly on maps with a multiple fixed point
print("\nlocus residuals:")
print("  R          ", abs(locus_residual(R)))
print("  triple point", abs(locus_residual(N3)))
print("  random     ", abs(locus_residual(random_canonical_map(3, SplitMix64(2)))))

print("\nstratum dimensions for d = 3:")
for parts in partitions(4):
    print(f"  {str(parts):>14}  (locus, fibre) = {stratum_dims(parts, 3)}")
