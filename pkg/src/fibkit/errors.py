"""Exception hierarchy shared across fibkit modules."""

from __future__ import annotations


class FibkitError(Exception):
    """Base class for all fibkit errors."""


class ParseError(FibkitError):
    """Syntax error in identity or catalog text.

    Carries the source position and, when known, the set of token kinds
    that would have been accepted at that position.
    """

    def __init__(self, message: str, line: int = 0, col: int = 0,
                 expected: frozenset[str] = frozenset()):
        self.line = line
        self.col = col
        self.expected = expected
        loc = f"{line}:{col}: " if line else ""
        exp = f" (expected {', '.join(sorted(expected))})" if expected else ""
        super().__init__(f"{loc}{message}{exp}")


class UnboundSymbolError(ParseError):
    """An identity uses a symbol that is neither a declared parameter nor a sum variable."""

    def __init__(self, symbol: str, line: int = 0, col: int = 0):
        self.symbol = symbol
        super().__init__(f"unbound symbol '{symbol}'", line, col)


class CatalogError(FibkitError):
    """Malformed catalog file or inconsistent catalog contents."""


class EvalError(FibkitError):
    """Evaluation precondition violated at a concrete parameter point."""


class GridError(FibkitError):
    """A GridSpec does not cover an identity's parameters or violates a range constraint."""


class SymbolicError(FibkitError):
    """An identity cannot be handled by the symbolic prover (non-affine structure)."""


class InternalFault(FibkitError):
    """An invariant that must hold by theorem was violated; always a fibkit bug."""
