"""Exceptions raised by admlab.

Every error carries a human readable ``msg``. Parse errors also carry the
1-based ``line`` of the offending input when it is known.
"""


class AdmError(Exception):
    """Base class for all admlab errors."""

    def __init__(self, msg):
        super(AdmError, self).__init__(msg)
        self.msg = msg


class AdmInputError(AdmError):
    """Input cannot be used: syntax, references or values are wrong.

    Parameters
    ----------
    msg : str
        Error description
    line : int, optional
        Line number in the input document
    """

    def __init__(self, msg, line=None):
        if line is not None:
            msg = 'line %d: %s' % (line, msg)
        super(AdmInputError, self).__init__(msg)
        self.line = line


class GraphSyntaxError(AdmInputError):
    pass


class UnknownVertexError(AdmInputError):
    pass


class UnknownEdgeError(AdmInputError):
    pass


class InvalidLengthError(AdmInputError):
    pass


class DisconnectedGraphError(AdmInputError):
    pass


class InvalidPointError(AdmInputError):
    pass


class LedgerSyntaxError(AdmInputError):
    pass


class InputEncodingError(AdmInputError):
    """Input file is not valid UTF-8."""


class UnbalancedSourcesError(AdmError):
    """Current sources do not sum to zero."""


class MeasureMassError(AdmError):
    """Measure does not have the total mass a computation requires."""


class GenusError(AdmError):
    """Graph genus is outside the range an operation supports."""


class MissingDataError(AdmError):
    """A piecewise function lacks values on part of a graph."""


class ArityMismatchError(AdmError):
    """Pairing or map applied to arguments of the wrong number or space."""


class UnknownAtomError(AdmError):
    pass


class UnknownIdentityError(AdmError):
    pass


class InvariantViolation(AdmError):
    """Internal consistency check failed.

    This points to a bug rather than bad input. ``graph`` holds the
    serialized graph that triggered the failure when one is involved.
    """

    def __init__(self, msg, graph=None):
        super(InvariantViolation, self).__init__(msg)
        self.graph = graph


class SingularSystemError(InvariantViolation):
    """Linear system has no unique solution."""
