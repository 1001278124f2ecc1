"""Modified decomposition solver in the Laplace-Sumudu domain.

The forcing is split as ``g = g1 + g2``.  ``g1`` and the initial/boundary
data produce the leading component; ``g2`` is meant to cancel the first
Adomian polynomial, which typically ends the series after one step:

    psi_0     = T^-1[ K * (boundary terms + T[g1]) ]
    psi_1     = T^-1[ K * T[g2 - A_0] ]
    psi_{s+1} = -T^-1[ K * T[A_s] ],   s >= 1

with ``K`` the inverse symbol of the linear operator.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InvariantViolation, NotSeparable, OutOfClass, ValidationError
from .poly import Poly
from .expr import ZERO, Expr, NonlinearitySpec, adomian, as_fraction, d_dtau, d_dxi
from .transform import (LinearOperator, TransformExpr, apply_kernel, forward, inverse,
                        laplace_x, sumudu_y)

log = logging.getLogger(__name__)

__all__ = ["Problem", "Status", "SeriesSolution", "build_psi0", "build_psi1",
           "build_next", "solve", "residual", "check_conditions"]


@dataclass(frozen=True)
class Problem:
    """``L[psi] + N[psi] = g1 + g2`` with data at y = 0 and x = 0.

    ``ics[j]`` is the j-th y-derivative at tau = 0 (a function of xi) and
    ``bcs[k]`` the k-th x-derivative at xi = 0 (a function of tau).
    """

    linear_op: LinearOperator
    nonlin: NonlinearitySpec | None
    g1: Expr
    g2: Expr
    ics: tuple[Expr, ...] = ()
    bcs: tuple[Expr, ...] = ()
    eta: Fraction = Fraction(1)
    gamma: Fraction = Fraction(1)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "ics", tuple(self.ics))
        object.__setattr__(self, "bcs", tuple(self.bcs))
        object.__setattr__(self, "eta", as_fraction(self.eta))
        object.__setattr__(self, "gamma", as_fraction(self.gamma))
        self.validate()

    def validate(self) -> None:
        op = self.linear_op
        if len(self.ics) != op.n:
            raise ValidationError(f"operator has y-order {op.n} but {len(self.ics)} "
                                  "initial conditions were given")
        if len(self.bcs) != op.m:
            raise ValidationError(f"operator has x-order {op.m} but {len(self.bcs)} "
                                  "boundary conditions were given")
        for j, f in enumerate(self.ics):
            if not f.is_pure_xi():
                raise ValidationError(f"ic{j} must depend on X only")
        for k, h in enumerate(self.bcs):
            if not h.is_pure_tau():
                raise ValidationError(f"bc{k} must depend on Y only")
        for label, q in (("eta", self.eta), ("gamma", self.gamma)):
            if not 0 < q <= 1:
                raise ValidationError(f"{label} must lie in (0, 1], got {q}")

    @property
    def forcing(self) -> Expr:
        return self.g1 + self.g2

    def lhs(self, psi: Expr) -> Expr:
        out = self.linear_op.apply(psi)
        if self.nonlin is not None:
            out = out + self.nonlin(psi)
        return out


@dataclass(frozen=True)
class Status:
    kind: str  # "Converged" | "Truncated" | "Failed"
    index: int | None = None
    reason: str = ""

    def __str__(self) -> str:
        if self.kind == "Failed":
            return f"Failed({self.reason})"
        return f"{self.kind}({self.index})"

    @property
    def ok(self) -> bool:
        return self.kind == "Converged"


@dataclass(frozen=True)
class SeriesSolution:
    components: tuple[Expr, ...]
    status: Status
    assembled: Expr = field(default=ZERO)


def _boundary_operand(p: Problem) -> TransformExpr:
    ic_images = [laplace_x(f) for f in p.ics]
    bc_images = [sumudu_y(h) for h in p.bcs]
    out = TransformExpr()
    for c, dx, dy in p.linear_op.terms:
        for k in range(dx):
            out = out + bc_images[k].times(num_v=Poly.monomial(dx - 1 - k)).scale(c)
        for j in range(dy):
            out = out + ic_images[j].times(den_w=Poly.monomial(dy - j)).scale(c)
    return out


def _kernel_inverse(p: Problem, source: Expr) -> Expr:
    if source.is_zero():
        return ZERO
    return inverse(apply_kernel(p.linear_op, forward(source)))


def build_psi0(p: Problem) -> Expr:
    operand = _boundary_operand(p) + forward(p.g1)
    return inverse(apply_kernel(p.linear_op, operand))


def build_psi1(p: Problem, psi0: Expr) -> Expr:
    return _kernel_inverse(p, p.g2 - adomian(p.nonlin, [psi0], 0))


def build_next(p: Problem, components: Sequence[Expr], s: int) -> Expr:
    if s < 1:
        raise ValueError("build_next covers s >= 1")
    return -_kernel_inverse(p, adomian(p.nonlin, components, s))


def _certified_index(components: Sequence[Expr]) -> int | None:
    """Smallest k >= 1 with psi_k .. psi_{2k-1} all zero, if any.

    Every later Adomian polynomial of a bilinear term then pairs at least one
    index >= k, so all further components vanish by induction.
    """
    k = 1
    while 2 * k <= len(components):
        if all(c.is_zero() for c in components[k:2 * k]):
            return k
        k += 1
    return None


def solve(p: Problem, max_terms: int = 8) -> SeriesSolution:
    """Run the recurrence until the tail provably vanishes or ``max_terms``."""
    if max_terms < 1:
        raise ValueError("max_terms must be positive")
    comps: list[Expr] = []
    stage = "psi0"
    try:
        comps.append(build_psi0(p))
        while (k := _certified_index(comps)) is None:
            if len(comps) >= max_terms:
                return SeriesSolution(tuple(comps), Status("Truncated", max_terms), _sum(comps))
            n = len(comps)
            stage = f"psi{n}"
            comps.append(build_psi1(p, comps[0]) if n == 1 else build_next(p, comps, n - 1))
            log.debug("%s has %d terms", stage, len(comps[-1]))
        # one extra step as a consistency check on the vanishing tail
        n = len(comps)
        stage = f"psi{n}"
        extra = build_psi1(p, comps[0]) if n == 1 else build_next(p, comps, n - 1)
    except (NotSeparable, OutOfClass) as exc:
        return SeriesSolution(tuple(comps), Status("Failed", None, f"{stage}: {exc}"), _sum(comps))
    if not extra.is_zero():
        raise InvariantViolation(f"{stage} is nonzero after the tail was certified zero")
    if k == 1 and comps[0].is_zero():
        k = 0
    kept = tuple(comps[: k + 1])
    return SeriesSolution(kept, Status("Converged", k), _sum(kept))


def _sum(comps) -> Expr:
    out = ZERO
    for c in comps:
        out = out + c
    return out


def residual(p: Problem, candidate: Expr) -> Expr:
    """``L[psi] + N[psi] - g`` as an exact expression (zero certifies a solution)."""
    return p.lhs(candidate) - p.forcing


def check_conditions(p: Problem, candidate: Expr) -> dict[str, bool]:
    """Exact check of every initial and boundary condition."""
    out = {}
    for j, f in enumerate(p.ics):
        out[f"ic{j}"] = d_dtau(candidate, j).at_tau_zero() == f
    for k, h in enumerate(p.bcs):
        out[f"bc{k}"] = d_dxi(candidate, k).at_xi_zero() == h
    return out
