"""Monotone iteration between constant barriers and a Newton cross-check."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .barriers import BarrierCertificate
from .exceptions import BracketEscape, InvalidParams, NoConvergence, SingularJacobian
from .model import ProblemParams, eval_f, eval_f_u
from .spectral import (
    DEFAULT_N_GRID,
    PeriodicFunction,
    second_derivative,
    second_derivative_matrix,
    solve_shifted,
)
from .verify import residual_norm

logger = logging.getLogger(__name__)

ESCAPE_MARGIN = 0.1
NEWTON_RESIDUAL_TOL = 1e-10
CONDITION_LIMIT = 1e12


class Direction(enum.Enum):
    Ascending = "Ascending"
    Descending = "Descending"


@dataclass(frozen=True)
class SolverConfig:
    """Discretisation and stopping parameters.

    ``lam`` is the monotone shift; ``None`` means :func:`choose_lambda`.
    """

    n_grid: int = DEFAULT_N_GRID
    lam: Optional[float] = None
    iterate_tol: float = 1e-10
    residual_tol: float = 1e-8
    max_iter_monotone: int = 10000
    max_iter_newton: int = 50
    monotonicity_slack: float = 1e-9

    def __post_init__(self):
        n = self.n_grid
        if n < 8 or n & (n - 1):
            raise InvalidParams(f"n_grid must be a power of two >= 8, got {n}")
        for name in ("iterate_tol", "residual_tol", "monotonicity_slack"):
            if not getattr(self, name) > 0:
                raise InvalidParams(f"{name} must be > 0")
        if self.lam is not None and not self.lam > 0:
            raise InvalidParams("lam must be > 0")
        if self.max_iter_monotone < 1 or self.max_iter_newton < 1:
            raise InvalidParams("iteration caps must be >= 1")


@dataclass
class IterationTrace:
    step_norms: list = field(default_factory=list)
    monotone_violation: float = 0.0
    iterations: int = 0
    min_values: list = field(default_factory=list)
    max_values: list = field(default_factory=list)
    residual_norms: list = field(default_factory=list)

    @property
    def final_step(self) -> float:
        return self.step_norms[-1] if self.step_norms else float("nan")


def _tail_estimate(steps) -> float:
    """Remaining distance to the limit for a linearly converging sequence.

    The contraction factor is estimated from the last two steps; a
    non-contracting pair falls back to the last step itself.
    """
    if len(steps) < 2 or steps[-2] == 0.0:
        return steps[-1]
    q = steps[-1] / steps[-2]
    if q >= 1.0:
        return steps[-1]
    return steps[-1] * q / (1.0 - q)


def choose_lambda(cert: BarrierCertificate, params: ProblemParams) -> float:
    """Shift ``omega**-2 (1 + 2|mu| R)`` making ``f(s, u) + lam u`` increasing for |u| <= R."""
    return (1.0 + 2.0 * abs(params.mu) * cert.R) / params.omega**2


def monotone_iterate(
    start: PeriodicFunction,
    direction: Direction,
    params: ProblemParams,
    cert: BarrierCertificate,
    config: SolverConfig = SolverConfig(),
):
    """Iterate ``u <- (-d^2/ds^2 + lam)^-1 (f(., u) + lam u)`` from a barrier.

    Returns ``(solution, trace)``. Convergence is declared when both the
    sup-norm step and the geometric estimate of the remaining error drop
    below ``config.iterate_tol``; it must then be confirmed by the residual
    on a twice-refined grid.
    """
    lam = config.lam if config.lam is not None else choose_lambda(cert, params)
    ascending = direction is Direction.Ascending
    s = start.grid
    lo, hi = cert.r - ESCAPE_MARGIN, cert.R + ESCAPE_MARGIN
    trace = IterationTrace()
    u = start

    for _ in range(config.max_iter_monotone):
        rhs = eval_f(s, u.values, params) + lam * u.values
        new = solve_shifted(PeriodicFunction.from_values(rhs), lam)
        diff = new.values - u.values
        step = float(np.max(np.abs(diff)))
        backwards = float(np.max(-diff if ascending else diff))
        trace.monotone_violation = max(trace.monotone_violation, backwards, 0.0)
        trace.step_norms.append(step)
        trace.min_values.append(float(new.values.min()))
        trace.max_values.append(float(new.values.max()))
        trace.iterations += 1
        u = new
        if trace.min_values[-1] < lo or trace.max_values[-1] > hi:
            raise BracketEscape(
                f"iterate left [{lo:.6g}, {hi:.6g}] at iteration {trace.iterations}", trace
            )
        if step < config.iterate_tol and _tail_estimate(trace.step_norms) < config.iterate_tol:
            break
    else:
        raise NoConvergence(
            f"monotone iteration did not converge in {config.max_iter_monotone} steps "
            f"(last step {trace.final_step:.3e})",
            trace,
            u,
        )

    if trace.monotone_violation > config.monotonicity_slack:
        logger.warning(
            "%s run lost monotonicity by %.3e (slack %.1e)",
            direction.value,
            trace.monotone_violation,
            config.monotonicity_slack,
        )
    res = residual_norm(u, params, refine=2)
    trace.residual_norms.append(res)
    if not res <= config.residual_tol:
        raise NoConvergence(
            f"step norm converged but refined residual {res:.3e} exceeds "
            f"{config.residual_tol:.1e}",
            trace,
            u,
        )
    return u, trace


def _grid_residual(u: np.ndarray, s: np.ndarray, params: ProblemParams) -> np.ndarray:
    upp = second_derivative(PeriodicFunction.from_values(u)).values
    return upp + eval_f(s, u, params)


def newton_solve(
    init: PeriodicFunction,
    params: ProblemParams,
    config: SolverConfig = SolverConfig(),
):
    """Newton on the collocation residual ``u'' + f(s, u)``.

    The Jacobian is the dense spectral second-derivative matrix plus
    ``diag(f_u(s, u))``. Raises :class:`SingularJacobian` when its 2-norm
    condition number exceeds 1e12.
    """
    n = init.n_grid
    s = init.grid
    d2 = second_derivative_matrix(n)
    u = np.array(init.values, dtype=float)
    trace = IterationTrace()

    rho = _grid_residual(u, s, params)
    trace.residual_norms.append(float(np.max(np.abs(rho))))
    # at least one step, so a converged seed is confirmed rather than accepted
    while trace.iterations == 0 or trace.residual_norms[-1] > NEWTON_RESIDUAL_TOL:
        if trace.iterations >= config.max_iter_newton:
            raise NoConvergence(
                f"Newton did not converge in {config.max_iter_newton} steps "
                f"(residual {trace.residual_norms[-1]:.3e})",
                trace,
                PeriodicFunction.from_values(u),
            )
        jac = d2 + np.diag(eval_f_u(s, u, params))
        cond = np.linalg.cond(jac)
        if not cond <= CONDITION_LIMIT:
            raise SingularJacobian(float(cond), trace)
        du = np.linalg.solve(jac, -rho)
        u = u + du
        trace.step_norms.append(float(np.max(np.abs(du))))
        trace.min_values.append(float(u.min()))
        trace.max_values.append(float(u.max()))
        trace.iterations += 1
        rho = _grid_residual(u, s, params)
        trace.residual_norms.append(float(np.max(np.abs(rho))))

    return PeriodicFunction.from_values(u), trace
