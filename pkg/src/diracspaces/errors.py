"""Exception hierarchy shared by all modules."""


class DiracSpacesError(Exception):
    """Base class for every error raised by the package."""


class DimensionMismatch(DiracSpacesError, ValueError):
    pass


class NotCoisotropic(DiracSpacesError):
    pass


class NotIsotropic(DiracSpacesError):
    pass


class NotComposable(DiracSpacesError):
    pass


# Alias used for module actions.
ComposabilityViolation = NotComposable


class IncompatibleJ(DiracSpacesError):
    pass


class InvalidGroupoid(DiracSpacesError):
    pass


class NotLambdaCoisotropic(DiracSpacesError):
    pass


class JacobiFailure(DiracSpacesError):
    pass


class InvalidQuadraticData(DiracSpacesError):
    pass


class InvalidTriple(DiracSpacesError):
    pass


class KNotTrivial(DiracSpacesError):
    pass


class KNotContained(DiracSpacesError):
    pass


class FormNotPushedForward(DiracSpacesError):
    pass


class CandidateDimMismatch(DiracSpacesError, ValueError):
    pass


class NotKStable(DiracSpacesError):
    pass


class InvalidModel(DiracSpacesError):
    """A finite-model datum (group, representation, bundle) breaks its axioms."""


class IdentityViolation(DiracSpacesError, AssertionError):
    """An identity that must hold by construction failed; indicates a bug or bad input."""
