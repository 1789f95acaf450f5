"""Post-hoc checks of computed solutions against the existence claims."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .barriers import BarrierCertificate, compute_barriers, reflect
from .model import ProblemParams, SignCase, eval_f
from .spectral import PeriodicFunction, second_derivative

BOUND_TOL = 1e-8
SYMMETRY_TOL = 1e-7


@dataclass(frozen=True, eq=False)
class SolutionReport:
    """A solution of the canonical (s-variable) problem with its checks.

    ``cert`` is the certificate of the mu < 0 problem actually solved, i.e.
    the reflected problem's certificate in the PositiveMu case.
    """

    params: ProblemParams
    sign_case: SignCase
    cert: BarrierCertificate
    solution: PeriodicFunction
    residual_sup: float
    residual_sup_refined: float
    min_u: float
    max_u: float
    bracket_ok: bool
    positivity_ok: bool
    iterations: int
    solver: str
    degenerate_mode: bool
    lower_bound_ok: bool = True
    upper_bound_ok: bool = True


@dataclass(frozen=True)
class SampledSolution:
    """Solution of the original equation sampled at ``t_j = s_j / omega``."""

    t: np.ndarray
    values: np.ndarray
    second_derivative: np.ndarray
    period: float

    def residual(self, params: ProblemParams) -> np.ndarray:
        u = self.values
        return (
            self.second_derivative
            + u
            + params.mu * u * u
            - params.epsilon * np.cos(params.omega * self.t)
        )


def residual_norm(u: PeriodicFunction, params: ProblemParams, refine: int = 1) -> float:
    """Sup-norm of ``u'' + omega**-2 (u + mu u^2 - eps cos s)`` on a refine*N grid."""
    if refine not in (1, 2, 4):
        raise ValueError(f"refine must be 1, 2 or 4, got {refine}")
    fine = u.resample(refine * u.n_grid)
    upp = second_derivative(fine).values
    defect = upp + eval_f(fine.grid, fine.values, params)
    return float(np.max(np.abs(defect)))


def back_transform(u: PeriodicFunction, params: ProblemParams) -> SampledSolution:
    """Map the canonical solution back to ``t = s / omega`` on one period."""
    t = u.grid / params.omega
    upp = params.omega**2 * second_derivative(u).values
    return SampledSolution(t, np.array(u.values), upp, 2.0 * np.pi / params.omega)


def bracket_bounds(sign_case: SignCase, cert: BarrierCertificate) -> tuple[float, float]:
    """Interval the solution of the original problem must lie in."""
    if sign_case is SignCase.NegativeMu:
        return cert.r, cert.R
    return -cert.R, -cert.r


def build_report(
    u: PeriodicFunction,
    params: ProblemParams,
    cert: BarrierCertificate,
    iterations: int,
    solver: str,
) -> SolutionReport:
    """Assemble a report for ``u`` solving the ORIGINAL ``params`` problem."""
    sign_case = params.sign_case
    lo, hi = bracket_bounds(sign_case, cert)
    min_u, max_u = float(u.values.min()), float(u.values.max())
    lower_ok = min_u >= lo - BOUND_TOL
    upper_ok = max_u <= hi + BOUND_TOL
    report = SolutionReport(
        params=params,
        sign_case=sign_case,
        cert=cert,
        solution=u,
        residual_sup=residual_norm(u, params, refine=1),
        residual_sup_refined=residual_norm(u, params, refine=2),
        min_u=min_u,
        max_u=max_u,
        bracket_ok=bool(lower_ok and upper_ok),
        positivity_ok=False,
        iterations=int(iterations),
        solver=solver,
        degenerate_mode=params.is_degenerate,
        lower_bound_ok=bool(lower_ok),
        upper_bound_ok=bool(upper_ok),
    )
    return replace(report, positivity_ok=check_sign_claim(report))


def check_sign_claim(report: SolutionReport) -> bool:
    """u >= r > 0 for mu < 0; u <= -r < 0 for mu > 0 (r from the reflected certificate)."""
    r = report.cert.r
    if report.sign_case is SignCase.NegativeMu:
        return bool(report.min_u >= r - BOUND_TOL)
    return bool(report.max_u <= -r + BOUND_TOL)


def phase_shift_symmetry(params: ProblemParams, config=None) -> float:
    """sup_s |u_{-eps}(s) - u_{eps}(s + pi)| for the two Descending solutions.

    Reflects first when mu > 0. Solver errors propagate.
    """
    from .solvers import Direction, SolverConfig, monotone_iterate

    config = config or SolverConfig()
    work = reflect(params) if params.mu > 0 else params
    flipped = ProblemParams(work.mu, -work.epsilon, work.omega, work.allow_degenerate)
    solutions = []
    for p in (work, flipped):
        cert = compute_barriers(p)
        start = PeriodicFunction.constant(cert.R, config.n_grid)
        u, _ = monotone_iterate(start, Direction.Descending, p, cert, config)
        solutions.append(u)
    u_plus, u_minus = solutions
    shifted = u_plus.shift(config.n_grid // 2)
    return u_minus.sup_distance(shifted)


def sandwich_ok(lower: Optional[PeriodicFunction], upper: PeriodicFunction) -> bool:
    """Minimal (Ascending) limit below maximal (Descending) limit pointwise."""
    if lower is None:
        return True
    return bool(np.all(lower.values <= upper.values + BOUND_TOL))
