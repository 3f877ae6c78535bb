"""Exception hierarchy.

Every error that is caused by a concrete violation carries the offending
carrier indices (or points) in ``witness`` so callers can report them.
"""


class QrakitError(Exception):
    """Base class for all package errors."""

    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = tuple(witness) if witness is not None else None

    def __str__(self):
        msg = super().__str__()
        if self.witness is not None:
            return f"{msg} (witness {self.witness})"
        return msg


class InputError(QrakitError):
    """Malformed or inconsistent input data."""


class BudgetExceeded(QrakitError):
    """A search or enumeration hit its configured size budget."""


# algebra structure

class NotAPoset(InputError):
    pass


class NotALattice(InputError):
    pass


class NoMeet(NotALattice):
    pass


class NoJoin(NotALattice):
    pass


class NotAMonoid(InputError):
    pass


class NotResiduated(QrakitError):
    pass


class InFLRequired(QrakitError):
    pass


class MissingNegations(QrakitError):
    pass


class SizeTooSmall(InputError):
    pass


class EvenOuterChain(InputError):
    pass


class IdentityNotIrreducible(QrakitError):
    pass


class SignatureMismatch(InputError):
    pass


# relations and contexts

class DimensionMismatch(InputError):
    pass


class NotSubsetOfE(QrakitError):
    pass


class NotABijection(QrakitError):
    pass


class NotAnUpset(QrakitError):
    pass


class TooManyUpsets(BudgetExceeded):
    pass


class PoolUnavailable(BudgetExceeded):
    pass


class InvalidContext(InputError):
    """Base for violated hypotheses of the relational construction."""


class OrderNotInE(InvalidContext):
    pass


class NotAnEquivalence(InvalidContext):
    pass


class AlphaNotAutomorphism(InvalidContext):
    pass


class BetaNotDualAutomorphism(InvalidContext):
    pass


class BetaNotSelfInverse(InvalidContext):
    pass


class MapNotInE(InvalidContext):
    pass


class BetaAlphaMismatch(InvalidContext):
    pass


class EmbeddingInvalid(QrakitError):
    pass
