"""Exception types raised across the package."""


class DimensionError(ValueError):
    """Operands do not share the same (alpha, beta) shape."""


class InvalidTypeError(ValueError):
    """A type quintuple is inconsistent (negative or out-of-range entries)."""


class ParameterError(ValueError):
    """Construction parameters outside the supported range."""


class EnumerationCapError(RuntimeError):
    """Refusing to materialize more codewords than the configured cap."""

    def __init__(self, needed, cap):
        super().__init__(f"enumeration needs {needed} vectors, cap is {cap}")
        self.needed = needed
        self.cap = cap


class CodeFileError(ValueError):
    """Malformed code file; carries the 1-indexed line number."""

    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
