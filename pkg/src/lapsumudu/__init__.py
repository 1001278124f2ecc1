"""Exact Laplace-Sumudu decomposition solver for conformable fractional PDEs."""

from .errors import (ArityMismatch, DomainError, InvariantViolation, NonConvergent, NotSeparable,
                     OutOfClass, OutsideROC, ParseError, PoleHit, ValidationError)
from .expr import Expr, NonlinearitySpec, adomian, d_dtau, d_dxi, evaluate
from .parsing import load_problem, parse_expr, parse_problem
from .render import render
from .solver import Problem, SeriesSolution, Status, residual, solve
from .transform import (LinearOperator, TransformExpr, apply_kernel, derivative_rule,
                        eval_transform, forward, inverse)

__version__ = "0.1.0"

__all__ = [
    "ArityMismatch", "DomainError", "InvariantViolation", "NonConvergent", "NotSeparable",
    "OutOfClass", "OutsideROC", "ParseError", "PoleHit", "ValidationError",
    "Expr", "NonlinearitySpec", "adomian", "d_dtau", "d_dxi", "evaluate",
    "load_problem", "parse_expr", "parse_problem", "render",
    "Problem", "SeriesSolution", "Status", "residual", "solve",
    "LinearOperator", "TransformExpr", "apply_kernel", "derivative_rule", "eval_transform",
    "forward", "inverse",
]
