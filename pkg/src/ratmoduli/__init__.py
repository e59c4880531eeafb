"""Numerical tools for the moduli space of complex rational maps of degree d >= 2.

Maps are held in canonical form ``P/Q`` with ``Q`` monic of degree ``d``.
The package normalizes them under Moebius conjugation, computes fixed
points, multipliers and indices, sorts maps into overlap-type strata and
converts between coefficient and decomposition parameters.  Degree 2 also
has multiplier-spectrum coordinates in both directions.
"""

from .cpoly import (
    DEFAULT_TOLERANCES,
    Poly,
    RootCluster,
    RootFindingError,
    Tolerances,
    discriminant,
    resultant,
    roots_with_multiplicities,
)
from .moebius import INF, DegenerateConjugateError, Moebius, compose, conjugate_map, inverse
from .normalform import NormalizationError, NormalizationTrace, normalize, w_degeneracy
from .quadratic import (
    InvalidSpectrumError,
    SpectrumD2,
    fatou_valid,
    sigma_from_normalized,
    spectrum_to_normalized,
)
from .ratmap import (
    FixedPoint,
    FixedPointSet,
    InvalidMapError,
    NonSimpleFixedPointError,
    RationalMap,
    canonicalize,
    fatou_sum,
    fixed_points,
    is_normalized,
    multiset_distance,
)
from .sampling import SplitMix64, random_canonical_map, random_decomposition
from .strata import (
    DecompositionError,
    DecompositionParams,
    OverlapType,
    decompose,
    locus_residual,
    overlap_type,
    partitions,
    recompose,
    stratum_dims,
)

__version__ = "0.1.0"
