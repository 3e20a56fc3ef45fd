"""Exception hierarchy. Each subclass maps to its own CLI exit code."""


class GravchordsError(Exception):
    exit_code = 1


class InvalidPolygon(GravchordsError, ValueError):
    exit_code = 3


class InvalidChord(GravchordsError, ValueError):
    exit_code = 4


class PresentationError(GravchordsError, ValueError):
    exit_code = 5


class NotGravity(GravchordsError, ValueError):
    exit_code = 6


class NotResidual(GravchordsError, ValueError):
    exit_code = 7


class NotCompletelyCrossing(GravchordsError, ValueError):
    exit_code = 8


class InvalidWeights(GravchordsError, ValueError):
    exit_code = 9


class UnsupportedWeights(GravchordsError, ValueError):
    exit_code = 10


class EmptyLocus(GravchordsError, ValueError):
    exit_code = 11


class SizeGuard(GravchordsError, ValueError):
    exit_code = 12


class MalformedInput(GravchordsError, ValueError):
    exit_code = 13


class InvariantViolation(GravchordsError, RuntimeError):
    exit_code = 20
