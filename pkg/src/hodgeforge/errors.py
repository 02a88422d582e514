"""Shared exception types."""


class EngineError(Exception):
    """Base class for all errors raised by hodgeforge."""


class ContextMismatchError(EngineError):
    """Operands live in incompatible ambient rings."""


class UnsupportedClassError(EngineError):
    """The requested operation would need a class the model keeps opaque
    (a free diagonal pushforward, or the undecomposed divisor generator Z)."""


class HomogeneityError(EngineError):
    """An input that must be homogeneous (or of top degree) is not."""


class GuardError(EngineError):
    """A parameter is outside the supported range."""


class CharacterError(EngineError):
    """A weight multiset is not a valid character (not Weyl-invariant, or
    peeling produced a negative multiplicity)."""


class DslError(EngineError):
    """Base class for expression-language errors."""


class DslParseError(DslError):
    def __init__(self, message, line, col, expected=()):
        self.line = line
        self.col = col
        self.expected = tuple(sorted(expected))
        detail = f"parse error at {line}:{col}: {message}"
        if self.expected:
            detail += " (expected " + ", ".join(self.expected) + ")"
        super().__init__(detail)


class DslEvalError(DslError):
    def __init__(self, message, span=None):
        self.span = span
        if span is not None:
            message = f"at {span[0]}:{span[1]}: {message}"
        super().__init__(message)
