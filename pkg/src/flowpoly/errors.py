"""Exception hierarchy.

Everything raised on purpose derives from FlowPolyError, which the CLI maps to
exit status 1. Each subclass carries a short stable ``code`` used in JSON
diagnostics.
"""

from __future__ import annotations


class FlowPolyError(Exception):
    code = "domain-error"


class InvalidEdgeError(FlowPolyError):
    code = "invalid-edge"


class ArityError(FlowPolyError):
    code = "arity"


class GraphParseError(FlowPolyError):
    code = "parse"

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class BoundaryNetflowError(FlowPolyError):
    code = "boundary-netflow"


class ConnectivityError(FlowPolyError):
    code = "not-connected"


class PreconditionError(FlowPolyError):
    code = "precondition"


class WrongTheoremError(PreconditionError):
    code = "wrong-theorem"


class DegenerateGraphError(PreconditionError):
    code = "degenerate-graph"


class UnsupportedLoopError(PreconditionError):
    code = "unsupported-loop"


class NotReducibleError(FlowPolyError):
    code = "not-reducible"


class InvalidCycleError(FlowPolyError):
    code = "invalid-cycle"


class InvalidFlowError(FlowPolyError):
    code = "invalid-flow"


class SizeError(FlowPolyError):
    code = "too-large"


class PoleError(FlowPolyError):
    code = "pole"


class NonInvertibleError(FlowPolyError):
    code = "non-invertible"


class UnsupportedKernelError(FlowPolyError):
    code = "unsupported-kernel"


class FitError(FlowPolyError):
    code = "fit"


class CrosscheckError(FlowPolyError):
    """Two volume methods disagreed. This signals a bug, never user error."""

    code = "crosscheck-mismatch"


class QuasiPolynomialWarning(UserWarning):
    """Ehrhart samples do not fit a single polynomial of the expected degree."""


class EmptyPolytopeWarning(UserWarning):
    pass
