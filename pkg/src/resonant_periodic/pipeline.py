"""certify -> shift -> monotone runs -> Newton confirmation -> verification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .barriers import Certification, certify
from .model import ProblemParams
from .solvers import Direction, SolverConfig, choose_lambda, monotone_iterate, newton_solve
from .spectral import PeriodicFunction
from .verify import SolutionReport, build_report, sandwich_ok

AGREEMENT_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class SolveOutcome:
    certification: Certification
    config: SolverConfig
    lam: float
    descending: SolutionReport
    ascending: Optional[SolutionReport]
    newton: SolutionReport
    newton_shift: float
    descending_violation: float
    ascending_violation: Optional[float]
    checks: dict

    @property
    def params(self) -> ProblemParams:
        return self.certification.params

    @property
    def solution(self) -> PeriodicFunction:
        return self.descending.solution

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _to_original(u: PeriodicFunction, reflected: bool) -> PeriodicFunction:
    return -u if reflected else u


def solve_instance(
    params: ProblemParams,
    config: SolverConfig = SolverConfig(),
    r_choice: Optional[float] = None,
    R_choice: Optional[float] = None,
    ascending: bool = True,
) -> SolveOutcome:
    """Run the whole pipeline on one parameter triple.

    Certification and solver errors propagate; failed verification checks
    are reported in ``checks`` instead of raising.
    """
    cfn = certify(params, r_choice, R_choice)
    work, cert, reflected = cfn.working, cfn.cert, cfn.reflected
    lam = config.lam if config.lam is not None else choose_lambda(cert, work)
    n = config.n_grid

    u_max, tr_max = monotone_iterate(
        PeriodicFunction.constant(cert.R, n), Direction.Descending, work, cert, config
    )
    desc = build_report(
        _to_original(u_max, reflected), params, cert, tr_max.iterations, "Monotone-Descending"
    )

    asc = None
    asc_violation = None
    u_min = None
    if ascending:
        u_min, tr_min = monotone_iterate(
            PeriodicFunction.constant(cert.r, n), Direction.Ascending, work, cert, config
        )
        asc = build_report(
            _to_original(u_min, reflected), params, cert, tr_min.iterations, "Monotone-Ascending"
        )
        asc_violation = tr_min.monotone_violation

    u_newton, tr_newton = newton_solve(u_max, work, config)
    newton = build_report(
        _to_original(u_newton, reflected), params, cert, tr_newton.iterations, "Newton"
    )
    shift = u_newton.sup_distance(u_max)

    checks = {
        "certified": cfn.signs.certified,
        "residual_ok": desc.residual_sup_refined <= config.residual_tol,
        "bracket_ok": desc.bracket_ok,
        "sign_claim_ok": desc.positivity_ok,
        "newton_agreement_ok": shift <= AGREEMENT_TOL,
        "newton_residual_ok": newton.residual_sup_refined <= config.residual_tol,
    }
    if asc is not None:
        checks["ascending_residual_ok"] = asc.residual_sup_refined <= config.residual_tol
        checks["ascending_bracket_ok"] = asc.bracket_ok
        checks["sandwich_ok"] = sandwich_ok(u_min, u_max)
    checks = {k: bool(v) for k, v in checks.items()}
    return SolveOutcome(
        certification=cfn,
        config=config,
        lam=lam,
        descending=desc,
        ascending=asc,
        newton=newton,
        newton_shift=shift,
        descending_violation=tr_max.monotone_violation,
        ascending_violation=asc_violation,
        checks=checks,
    )

