"""Exception hierarchy shared by the library and the command line front end."""


class CographError(Exception):
    """Base class for all errors raised by cographedit."""


class InputError(CographError, ValueError):
    """Malformed input: out-of-range vertex ids, bad files, invalid parameters."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CapacityError(CographError):
    """An exponential routine was asked to run beyond its configured bound."""


class ContractError(CographError):
    """A documented precondition on the arguments does not hold."""


class RecognitionError(CographError):
    """The graph is not a cograph; ``witness`` holds an induced P4."""

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class InvariantViolation(CographError):
    """Internal consistency check failed (a bug, not a user error)."""
