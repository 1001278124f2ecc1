"""Exception types shared across the package."""


class DomainError(ValueError):
    """Evaluation requested outside x, y >= 0 or orders outside (0, 1]."""


class OutOfClass(ValueError):
    """An object falls outside the closed expression/image class."""


class NotSeparable(ArithmeticError):
    """Kernel application left a coupled (non-separable) denominator."""


class OutsideROC(ValueError):
    """A transform was evaluated outside its region of convergence."""


class PoleHit(ZeroDivisionError):
    """A transform-domain denominator vanishes at the evaluation point."""


class ArityMismatch(ValueError):
    """Wrong number of boundary images for a derivative rule."""


class NonConvergent(RuntimeError):
    """Adaptive quadrature hit its subdivision limit."""


class ValidationError(ValueError):
    """A parsed problem violates the structural invariants."""


class ParseError(ValueError):
    """Syntax error in an expression or problem file."""

    def __init__(self, message, line=1, column=1, expected=()):
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        detail = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"line {line}, column {column}: {message}{detail}")


class InvariantViolation(AssertionError):
    """An internal consistency check failed."""
