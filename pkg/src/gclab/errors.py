"""Exception hierarchy.

Every validator raises a subclass of :class:`ValidationError` carrying a
``witness`` attribute naming the offending elements. Mathematical negative
answers (not a cocycle, not equivalent, ...) are ordinary return values
except where a construction cannot proceed at all.
"""


class GclabError(Exception):
    """Base class for every error raised by this package."""

    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidInput(GclabError):
    pass


class CapExceeded(GclabError):
    pass


class ValidationError(GclabError):
    pass


# groups and modules
class NotAssociative(ValidationError):
    pass


class NoIdentity(ValidationError):
    pass


class NoInverse(ValidationError):
    pass


class NotAutomorphism(ValidationError):
    pass


class NotCompatible(ValidationError):
    pass


class NotHomomorphism(ValidationError):
    pass


# cohomology
class ModuleMismatch(ValidationError):
    pass


class NotSurjective(ValidationError):
    pass


class CoefficientMismatch(ValidationError):
    pass


class NotEquivariant(ValidationError):
    pass


# extensions
class NotACocycle(ValidationError):
    pass


class NotASection(ValidationError):
    pass


class ShapeMismatch(ValidationError):
    pass


class NotSplit(ValidationError):
    pass


# groupoids
class BadComposability(ValidationError):
    pass


class BadIdentity(ValidationError):
    pass


class BadInverse(ValidationError):
    pass


class NotAnAction(ValidationError):
    pass


# morita
class NotFunctorial(ValidationError):
    pass


class NotSurjectiveOnObjects(ValidationError):
    pass


class NotFullyFaithful(ValidationError):
    pass


class CompositionIncoherent(ValidationError):
    pass


# torsors
class NotPrincipal(ValidationError):
    """Two points of one fibre are joined by zero or several morphisms."""


class NotHomogeneous(NotPrincipal):
    """Two points of one fibre are joined by no morphism at all."""


class AnchorMismatch(ValidationError):
    pass


class QuotientIllDefined(ValidationError):
    pass


class IncompatibleBases(ValidationError):
    pass


class NotAbelian(ValidationError):
    pass


class NotConnected(ValidationError):
    pass


class NotBounded(ValidationError):
    pass


# galois
class HypothesisFailed(ValidationError):
    pass


class NonUniqueAutomorphismValue(ValidationError):
    pass


# fields and quantum examples
class NotPrime(InvalidInput):
    pass


class Reducible(InvalidInput):
    pass


class BadCongruence(InvalidInput):
    pass


class NotScalar(ValidationError):
    pass


class NotFree(ValidationError):
    pass
