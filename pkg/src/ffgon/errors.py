"""Exception hierarchy shared by all modules.

Every failure mode a caller is expected to handle programmatically gets its
own class; the CLI maps these onto exit codes.
"""


class FFGONError(Exception):
    """Base class for all library errors."""


class PrecisionUnderflow(FFGONError):
    """A quantity cannot be resolved at the working precision floor.

    Raised e.g. when taking the norm of a truncated series whose stored
    coefficients are all zero, or when dividing by such an element.
    """


class NotSimpleRoot(FFGONError):
    """Hensel lifting was asked to lift a residue root that is not simple."""


class NotSplitOverK(FFGONError):
    """A polynomial does not visibly split over F_q((1/t)).

    Deliberately conservative: raised whenever a Newton-polygon segment has a
    non-integer slope or its residual polynomial lacks enough simple roots in
    F_q, without attempting ramified or inseparable analysis.
    """


class SearchTooLarge(FFGONError):
    """An enumeration would exceed a configured work ceiling."""


class BruteForceTooLarge(FFGONError):
    """A brute-force verification was requested above its size ceiling."""


class DetNotOne(FFGONError):
    """An operation requiring determinant exactly 1 got something else."""


class SubsetConditionFails(FFGONError):
    """The disjoint-subset product condition on eigenvalue norms fails."""


class UnsupportedDegree(FFGONError):
    """Extension degree outside the constructible range [2, q+1]."""


class UnsupportedCharacteristic(FFGONError):
    """Operation not available in this characteristic (e.g. sqrt in char 2)."""


class IterationCeiling(FFGONError):
    """An iterative process exceeded its configured step bound."""


class InconsistentDiscriminant(FFGONError):
    """A discriminant norm that cannot belong to a split-at-infinity field."""


class IntegralBasisRejected(FFGONError):
    """A candidate integral basis failed the determinant acceptance test."""


class MalformedInput(FFGONError):
    """A text file or expression does not follow the documented syntax."""
