"""Exception hierarchy shared by all qdual modules."""


class QDualError(Exception):
    """Base class for all package-specific errors."""


class DivisionByZero(QDualError, ZeroDivisionError):
    """Division or inversion with a zero divisor in Q(q)."""


class InvalidArgument(QDualError, ValueError):
    """Out-of-range argument to a quantum-combinatorics function."""


class BasisMismatch(QDualError):
    """Operands act on different basis families."""


class NotDiagonal(QDualError):
    """A generator passed as diagonal sends a basis label off its line."""


class SpecializationSingular(QDualError):
    """A denominator vanishes at the chosen rational value of q."""


class IndexOutOfRange(QDualError, ValueError):
    """Generator index outside the legal range for the family and rank."""


class ComponentOutOfRange(QDualError, ValueError):
    """Tuple component outside its index set."""


class InvariantViolation(QDualError):
    """A produced label breaks its structural invariants (internal trap)."""


class RankMismatch(QDualError):
    """Word generators do not match the ambient rank of the module."""


class NotInRhoSubset(QDualError):
    """A matrix label is outside the unit-column-sum subset."""


class OddRank(QDualError):
    """Weight parity requested for an odd ambient rank."""


class TruncationCapExceeded(QDualError):
    """A braid operator series failed to truncate within the cap."""


class NotWeightHomogeneous(QDualError):
    """A vector spread over several weight spaces where one is required."""


class NonUniqueSolution(QDualError):
    """A triangular solve has positive nullity at some degree."""


class Inconsistent(QDualError):
    """A linear system admits no solution."""


class UnreachableCoset(QDualError):
    """A weight lies outside every normalized root-lattice coset."""


class UnknownCheck(QDualError, KeyError):
    """Check id not present in the registry."""


class SizeLimit(QDualError):
    """An enumeration would exceed the configured cap."""
