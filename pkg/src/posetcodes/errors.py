"""Typed errors shared across the library."""


class PosetCodesError(Exception):
    """Base class for every error raised by this package."""


class FieldError(PosetCodesError, ValueError):
    """Unsupported field order, or an impossible field operation."""


class NotAPartialOrderError(PosetCodesError, ValueError):
    """Relation input contains a cycle (antisymmetry fails)."""


class FormatError(PosetCodesError, ValueError):
    """Malformed poset or code text."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CapacityError(PosetCodesError, ValueError):
    """An exhaustive operation would exceed its size guard."""


class ZeroCodeError(PosetCodesError, ValueError):
    """Operation requires a code with at least two codewords."""


class NonHierarchicalError(PosetCodesError, ValueError):
    """Operation requires a hierarchical poset."""


class InternalCheckError(PosetCodesError, RuntimeError):
    """A closed form disagreed with its brute-force oracle, or two
    theorem-equivalent routes returned different answers.  Must never
    happen; signals a bug, not bad input."""
