"""Exception hierarchy shared by every module."""


class ZZCompileError(Exception):
    """Base class for all toolkit errors."""


class MalformedInput(ZZCompileError, ValueError):
    pass


class InvalidParameter(ZZCompileError, ValueError):
    pass


class PreconditionViolation(ZZCompileError, ValueError):
    pass


class DimensionMismatch(ZZCompileError, ValueError):
    pass


class NumericalFailure(ZZCompileError, ArithmeticError):
    pass


class ResourceLimit(ZZCompileError, RuntimeError):
    pass


class OracleTimeout(ResourceLimit):
    pass


class UnverifiedInput(ZZCompileError, ValueError):
    pass


class MissingVariable(ZZCompileError, KeyError):
    pass


class InconsistentWarmStart(ZZCompileError, RuntimeError):
    pass


class ParseError(ZZCompileError, ValueError):
    pass


class InfeasibleSolution(ZZCompileError, ValueError):
    pass


class ConstructionError(ZZCompileError, RuntimeError):
    """A construction produced an output that failed exact verification."""
