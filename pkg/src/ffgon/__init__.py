"""ffgon: exact geometry of numbers over the Laurent series field F_q((1/t)).

Lattice reduction over F_q[t], successive minima with witnesses, the
diagonal * (1 mod p) * integral decomposition of unit-determinant matrices,
region-exact minima of products of linear forms, closed-form bound tables
with brute-force oracles, split-at-infinity extensions with discriminant
verification, and periodic-orbit certificates for the diagonal action.

Hot enumeration kernels run through a compiled extension when present; a
pure-Python fallback is selected automatically (see ffgon.kernels).
"""

from .errors import (
    BruteForceTooLarge,
    DetNotOne,
    FFGONError,
    InconsistentDiscriminant,
    IntegralBasisRejected,
    IterationCeiling,
    MalformedInput,
    NotSimpleRoot,
    NotSplitOverK,
    PrecisionUnderflow,
    SearchTooLarge,
    SubsetConditionFails,
    UnsupportedCharacteristic,
    UnsupportedDegree,
)
from .fq import Field, field
from .poly import Poly
from .series import DEFAULT_FLOOR, LaurentSeries, integral_part, laurent_parse, norm_log

__version__ = "0.1.0"

__all__ = [
    "Field",
    "field",
    "Poly",
    "LaurentSeries",
    "integral_part",
    "laurent_parse",
    "norm_log",
    "DEFAULT_FLOOR",
    "FFGONError",
    "PrecisionUnderflow",
    "NotSimpleRoot",
    "NotSplitOverK",
    "SearchTooLarge",
    "BruteForceTooLarge",
    "DetNotOne",
    "SubsetConditionFails",
    "UnsupportedDegree",
    "UnsupportedCharacteristic",
    "IterationCeiling",
    "InconsistentDiscriminant",
    "IntegralBasisRejected",
    "MalformedInput",
    "__version__",
]
