"""Exception hierarchy.  Every error raised on purpose by the library is a
subclass of :class:`ClassicalError`, so callers (and the CLI) can separate
domain rejections from bugs."""


class ClassicalError(Exception):
    pass


# field layer
class UnknownConwayPolynomial(ClassicalError):
    pass


class NotPrime(ClassicalError):
    pass


class ZeroInput(ClassicalError):
    pass


class EvenCharacteristic(ClassicalError):
    pass


# linear algebra
class ShapeMismatch(ClassicalError):
    pass


class Singular(ClassicalError):
    pass


# forms
class IncompatibleDimension(ClassicalError):
    pass


class ZeroForm(ClassicalError):
    pass


class SymmetryViolation(ClassicalError):
    pass


class OddCharRequired(ClassicalError):
    pass


class Degenerate(ClassicalError):
    pass


class NotIsometric(ClassicalError):
    """Raised by :func:`clgroups.forms.isometry`.  ``similar`` is set when the
    forms differ only by a scalar (odd dimension, odd characteristic)."""

    def __init__(self, msg, similar=None):
        super().__init__(msg)
        self.similar = similar


class KindMismatch(ClassicalError):
    pass


# groups / quotient
class NotSimilarity(ClassicalError):
    pass


class NotIsometry(ClassicalError):
    pass


class SingularVector(ClassicalError):
    pass


class NotQuasisimple(ClassicalError):
    pass


class NotInDelta(ClassicalError):
    pass


class OutOfRange(ClassicalError):
    pass


class ParseError(ClassicalError):
    def __init__(self, msg, line=None):
        if line is not None:
            msg = f"line {line}: {msg}"
        super().__init__(msg)
        self.line = line
