"""Positive and negative periodic solutions of u'' + u + mu u^2 = eps cos(omega t).

Constant barriers from the two quadratics ``mu a^2 + a -+ |eps| = 0`` bracket
a solution that a shifted monotone iteration then computes; a Newton
collocation solver and a set of verification routines cross-check it.
"""

from .barriers import (
    BarrierCertificate,
    Certification,
    SignReport,
    certify,
    compute_barriers,
    quadratic_roots,
    reflect,
    resonance_condition,
    verify_barrier_signs,
)
from .estimator import BarrierTransformer, ResonantPeriodicSolver
from .exceptions import (
    BracketEscape,
    DegenerateDiscriminant,
    InvalidBracketChoice,
    InvalidParams,
    NoConvergence,
    NonPositiveShift,
    OscillatorError,
    ResonanceConditionViolated,
    ShapeError,
    SingularJacobian,
    WrongSignCase,
)
from .model import (
    CandidateFunction,
    ProblemParams,
    SignCase,
    eval_f,
    eval_f_u,
    is_lower_solution,
    is_upper_solution,
    rescale_period,
)
from .pipeline import SolveOutcome, solve_instance
from .solvers import (
    Direction,
    IterationTrace,
    SolverConfig,
    choose_lambda,
    monotone_iterate,
    newton_solve,
)
from .spectral import (
    PeriodicFunction,
    second_derivative,
    solve_shifted,
    to_coeffs,
    to_values,
)
from .verify import (
    SolutionReport,
    back_transform,
    check_sign_claim,
    phase_shift_symmetry,
    residual_norm,
)

__version__ = "0.1.0"
