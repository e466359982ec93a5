"""Exception hierarchy shared by all transdist modules."""


class TransdistError(Exception):
    """Base class for all errors raised by this package."""


class InputError(TransdistError, ValueError):
    """Malformed or mutually inconsistent inputs (alphabet mismatch, bad word, ...)."""


class PreconditionError(TransdistError, ValueError):
    """A documented operation precondition does not hold (e.g. ambiguous automaton)."""


class IntegrityError(TransdistError, RuntimeError):
    """An internal invariant was violated at runtime (e.g. two accepting runs)."""


class ResourceLimitError(TransdistError, RuntimeError):
    """A configurable size ceiling was exceeded during a construction."""


class UnsupportedCaseError(TransdistError, RuntimeError):
    """The inputs fall into a documented case the procedure does not handle."""


class ParseError(InputError):
    """Error while parsing a machine file; carries the offending line."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)
