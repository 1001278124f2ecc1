"""Floating-point oracles: quadrature transform, finite differences, tables, grids."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy import integrate

from .errors import DomainError, NonConvergent, OutsideROC
from .expr import COS, SIN, Expr, evaluate

__all__ = ["QuadratureConfig", "ErrorTableRow", "quad_forward", "fd_conformable",
           "make_error_table", "surface"]


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-9
    rel_tol: float = 1e-9
    # integrate up to T with poly(T) * exp(-margin * T) below this
    truncation: float = 1e-12
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0 and self.truncation > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be positive")


def _horizon(power: int, margin: float, eps: float) -> float:
    t = -math.log(eps) / margin
    # grow until the polynomial factor is also swamped
    while power and power * math.log(t) - margin * t > math.log(eps):
        t *= 1.5
    return t


def _half_line(power: int, rate: float, trig, decay: float, cfg: QuadratureConfig) -> float:
    """``int_0^inf t^power e^{(rate - decay) t} trig(t) dt`` by truncated adaptive quadrature."""
    margin = decay - rate
    upper = _horizon(power, margin, cfg.truncation)
    kind, freq = trig

    def f(t):
        return t**power * math.exp(-margin * t)

    opts = dict(epsabs=cfg.abs_tol, epsrel=cfg.rel_tol, limit=cfg.max_subdivisions)
    if kind in (SIN, COS):
        opts.update(weight=kind, wvar=float(freq))
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, _ = integrate.quad(f, 0.0, upper, **opts)
        except integrate.IntegrationWarning as exc:
            raise NonConvergent(f"quadrature did not converge: {exc}") from exc
    return value


def quad_forward(e: Expr, v: float, w: float, cfg: QuadratureConfig | None = None,
                 eta: float = 1, gamma: float = 1) -> float:
    """Double transform by direct quadrature in canonical variables.

    ``eta`` and ``gamma`` are accepted for interface symmetry only; after the
    change of variables the integral does not depend on them.
    """
    cfg = cfg or QuadratureConfig()
    if not w > 0:
        raise OutsideROC(f"w must be positive, got {w}")
    a_max, b_max = e.rates()
    if a_max is None:
        return 0.0
    if not v > a_max:
        raise OutsideROC(f"v = {v} is not > {a_max}")
    if not 1 / w > b_max:
        raise OutsideROC(f"1/w = {1 / w} is not > {b_max}")
    total = 0.0
    for (px, py, ax, ay, tx, ty), c in e.sorted_items():
        ix = _half_line(px, float(ax), tx, v, cfg)
        iy = _half_line(py, float(ay), ty, 1 / w, cfg) / w
        total += float(c) * ix * iy
    return total


def fd_conformable(e: Expr, x: float, y: float, eta: float, gamma: float,
                   direction: str = "x", step: float = 1e-5) -> float:
    """Conformable derivative as ``x^(1-eta)`` times a central difference in x (or y)."""
    if step <= 0:
        raise DomainError("step must be positive")
    if x <= 0 or y <= 0:
        raise DomainError("finite differences need positive x and y")
    if direction == "x":
        if x <= step:
            raise DomainError("x must exceed the step")
        diff = evaluate(e, x + step, y, eta, gamma) - evaluate(e, x - step, y, eta, gamma)
        return x ** (1 - float(eta)) * diff / (2 * step)
    if direction == "y":
        if y <= step:
            raise DomainError("y must exceed the step")
        diff = evaluate(e, x, y + step, eta, gamma) - evaluate(e, x, y - step, eta, gamma)
        return y ** (1 - float(gamma)) * diff / (2 * step)
    raise ValueError(f"direction must be 'x' or 'y', got {direction!r}")


@dataclass(frozen=True)
class ErrorTableRow:
    x: float
    y: float
    eta: float
    gamma: float
    exact: float
    cdlsmd: float

    @property
    def abs_error(self) -> float:
        return abs(self.exact - self.cdlsmd)


def make_error_table(solution: Expr, exact: Expr, xs: Iterable[float], ys: Iterable[float],
                     orders: Sequence[tuple[float, float]]) -> list[ErrorTableRow]:
    """Rows ordered by (eta, gamma), then x, then y.

    ``exact`` is evaluated at integer order, ``solution`` at each fractional order.
    """
    xs, ys = list(xs), list(ys)
    rows = []
    for eta, gamma in orders:
        for x in xs:
            for y in ys:
                rows.append(ErrorTableRow(
                    float(x), float(y), float(eta), float(gamma),
                    evaluate(exact, x, y, 1, 1), evaluate(solution, x, y, eta, gamma)))
    return rows


def surface(e: Expr, x_range: tuple[float, float], y_range: tuple[float, float],
            resolution: int, eta: float = 1, gamma: float = 1) -> np.ndarray:
    """``resolution x resolution`` grid, row-major in y then x, columns ``x, y, value``."""
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    for lo, hi in (x_range, y_range):
        if lo < 0 or hi <= lo:
            raise ValueError("ranges must be nonnegative and increasing")
    xs = np.linspace(*x_range, resolution)
    ys = np.linspace(*y_range, resolution)
    gy, gx = np.meshgrid(ys, xs, indexing="ij")
    vals = evaluate(e, gx, gy, eta, gamma)
    return np.column_stack([gx.ravel(), gy.ravel(), np.broadcast_to(vals, gx.shape).ravel()])
