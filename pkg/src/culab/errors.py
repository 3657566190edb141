"""Exceptions shared across the library.

Everything user-facing derives from ModelError so the CLI can map the whole
family to the "invalid input" exit code.
"""


class ModelError(Exception):
    """Base class for errors caused by invalid inputs or unmet preconditions."""


class ParseError(ModelError):
    """Malformed model file. Carries line/column when they are known."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class UnknownLabel(KeyError, ModelError):
    """Lookup of a label that names no element."""

    def __str__(self):  # KeyError quotes its argument; keep the message plain
        return Exception.__str__(self)


class ValidationError(ModelError):
    """A structural law failed. `law` names it, `bindings` pins the witness."""

    def __init__(self, law, message, bindings=None):
        super().__init__(f"{law} violated: {message}")
        self.law = law
        self.bindings = dict(bindings or {})


class PreorderRejected(ModelError):
    """Operation that needs a partial order was given a preorder_ok model."""


class NotAScale(ModelError):
    def __init__(self, clause, message):
        super().__init__(f"not a scale ({clause}): {message}")
        self.clause = clause


class NotAnIdeal(ModelError):
    def __init__(self, clause, message):
        super().__init__(f"not an ideal ({clause}): {message}")
        self.clause = clause


class PreconditionFailed(ModelError):
    """A witness search was called on an instance outside its precondition."""


class HypothesisNotChecked(ModelError):
    """A formulation was requested whose hypotheses fail on this model."""


class UnknownBuiltin(ModelError):
    pass


class GuardrailExceeded(ModelError):
    """Enumeration request beyond the supported size bound."""
