"""Exception hierarchy shared by the finite and analytic layers."""

from __future__ import annotations


class GyroError(Exception):
    """Base class for every error raised by gyroklein."""


class DegreeMismatch(GyroError, ValueError):
    pass


class TableFormatError(GyroError, ValueError):
    """A table file or matrix could not be parsed into a square index table."""


class Infeasible(GyroError):
    """A search or enumeration would exceed its configured cap."""


class ClosureTooLarge(Infeasible):
    pass


class AutSearchTooLarge(Infeasible):
    pass


class SearchTooLarge(Infeasible):
    pass


class TupleCapExceeded(Infeasible):
    pass


class GyrogroupAxiomError(GyroError):
    """A Cayley table violates one of the gyrogroup axioms.

    ``counterexample`` holds the lexicographically smallest witness found,
    as a tuple of element indices.
    """

    def __init__(self, message: str, counterexample: tuple = ()):
        super().__init__(message)
        self.counterexample = counterexample


class NoIdentity(GyrogroupAxiomError):
    pass


class MultipleIdentities(GyrogroupAxiomError):
    pass


class RowNotBijective(GyrogroupAxiomError):
    pass


class MissingInverse(GyrogroupAxiomError):
    pass


class GyrNotAutomorphism(GyrogroupAxiomError):
    pass


class LoopPropertyFails(GyrogroupAxiomError):
    pass


class LeftCancellationFails(GyrogroupAxiomError):
    pass


class EmptySubset(GyroError, ValueError):
    pass


class NotASubgyrogroup(GyroError, ValueError):
    pass


class NotInStabilizer(GyroError, ValueError):
    pass


class TrivialGyrogroup(GyroError, ValueError):
    pass


class EmptyFamily(GyroError, ValueError):
    pass


class DomainNotInvariant(GyroError, ValueError):
    pass


class OutOfBall(GyroError, ValueError):
    pass


# the disk is the 2-d ball; keep the name the disk API documents
OutOfDisk = OutOfBall


class DimensionMismatch(GyroError, ValueError):
    pass


class DegeneratePair(GyroError, ValueError):
    pass
