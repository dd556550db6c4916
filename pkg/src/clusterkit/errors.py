"""Exception types shared across the package."""


class ClusterKitError(Exception):
    """Base class for all clusterkit errors."""


class ParseError(ClusterKitError):
    """Malformed Laurent expression or JSON input."""


class NotDivisible(ClusterKitError):
    """Exact Laurent division requested where the divisor is not a factor."""


class NonUnitNegativePower(ClusterKitError):
    """Substitution of a non-invertible image into a negative exponent."""


class ZeroIntoNegativePower(ClusterKitError):
    """Substitution of 0 into a variable occurring with negative exponent."""


class NotSkewSymmetrizable(ClusterKitError):
    """The principal part of the matrix admits no positive integer symmetrizer."""


class NotExchangeable(ClusterKitError):
    """A frozen or unknown variable was used where an exchangeable one is required."""


class NotAdmissible(ClusterKitError):
    """A mutation sequence contains a non-exchangeable entry."""

    def __init__(self, step: int, message: str):
        super().__init__(message)
        self.step = step


class NotContained(ClusterKitError):
    """Requested subseed variables are not contained in the seed."""


class NotFrozen(ClusterKitError):
    """A gluing pairing references a variable that is not frozen."""


class NameClash(ClusterKitError):
    """Gluing operands share a variable name outside the pairing."""


class MissingImage(ClusterKitError):
    """A non-inducible morphism spec lacks the image of a needed cluster variable."""


class NotInjective(ClusterKitError):
    """The morphism spec is not an injection on initial cluster variables."""


class NotComponentEmbedding(ClusterKitError):
    """The source does not embed as indecomposable components of the freezing."""


class NotIdeal(ClusterKitError):
    """Factorization through the image seed requires an ideal morphism."""


class SubsetBudgetExceeded(ClusterKitError):
    """Full 2^|ex| freezing enumeration refused without an explicit flag."""
