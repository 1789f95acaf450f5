"""Constant barrier certificates for the mu < 0 problem and the mu > 0 reflection."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

from .exceptions import (
    DegenerateDiscriminant,
    InvalidBracketChoice,
    ResonanceConditionViolated,
    WrongSignCase,
)
from .model import ProblemParams

SIGN_TOL = 1e-10


@dataclass(frozen=True)
class BarrierCertificate:
    """Roots of the two barrier quadratics and the chosen constant bracket [r, R].

    a2 < a1 solve ``mu a^2 + a - |eps| = 0`` and b2 < b1 solve
    ``mu b^2 + b + |eps| = 0``.
    """

    a1: float
    a2: float
    b1: float
    b2: float
    r: float
    R: float
    discriminant_a: float
    discriminant_b: float


@dataclass(frozen=True)
class SignReport:
    worst_lower: float
    worst_upper: float
    certified: bool


def resonance_condition(params: ProblemParams) -> bool:
    return 4.0 * abs(params.mu) * abs(params.epsilon) < 1.0


def quadratic_roots(A: float, B: float, C: float) -> tuple[float, float]:
    """Real roots of ``A x^2 + B x + C`` in ascending order.

    Uses ``q = -(B + sign(B) sqrt(D)) / 2`` with roots ``q / A`` and ``C / q``,
    which keeps full relative accuracy on the small root.
    """
    if A == 0:
        raise ValueError("leading coefficient must be nonzero")
    disc = B * B - 4.0 * A * C
    if not disc > 0:
        raise DegenerateDiscriminant(disc)
    q = -0.5 * (B + math.copysign(math.sqrt(disc), B))
    x1 = q / A
    # q == 0 only when B == 0 and C == 0, which has disc == 0
    x2 = C / q
    return (x1, x2) if x1 <= x2 else (x2, x1)


def compute_barriers(
    params: ProblemParams,
    r_choice: Optional[float] = None,
    R_choice: Optional[float] = None,
) -> BarrierCertificate:
    """Build the certificate; defaults to the tightest bracket r = a2, R = b1."""
    mu, abs_eps = params.mu, abs(params.epsilon)
    if not mu < 0:
        raise WrongSignCase(f"compute_barriers needs mu < 0, got mu={mu!r}; reflect first")
    product = 4.0 * abs(mu) * abs_eps
    if not product < 1.0:
        raise ResonanceConditionViolated(product)

    disc_a = 1.0 + 4.0 * mu * abs_eps
    disc_b = 1.0 - 4.0 * mu * abs_eps
    a2, a1 = quadratic_roots(mu, 1.0, -abs_eps)
    b2, b1 = quadratic_roots(mu, 1.0, abs_eps)

    r = a2 if r_choice is None else float(r_choice)
    R = b1 if R_choice is None else float(R_choice)
    if not a2 <= r <= a1:
        raise InvalidBracketChoice(f"r={r!r} outside [a2, a1] = [{a2!r}, {a1!r}]")
    if not R >= b1:
        raise InvalidBracketChoice(f"R={R!r} below b1={b1!r}")
    return BarrierCertificate(
        a1=a1, a2=a2, b1=b1, b2=b2, r=r, R=R, discriminant_a=disc_a, discriminant_b=disc_b
    )


def verify_barrier_signs(cert: BarrierCertificate, params: ProblemParams) -> SignReport:
    """Worst-case (over s) values of the two barrier inequalities.

    ``r + mu r^2 - |eps| >= 0`` gives f(s, r) >= 0 for every s and
    ``R + mu R^2 + |eps| <= 0`` gives f(s, R) <= 0 for every s.
    """
    mu, abs_eps = params.mu, abs(params.epsilon)
    worst_lower = cert.r + mu * cert.r**2 - abs_eps
    worst_upper = cert.R + mu * cert.R**2 + abs_eps
    certified = worst_lower >= -SIGN_TOL and worst_upper <= SIGN_TOL
    return SignReport(worst_lower, worst_upper, bool(certified))


def reflect(params: ProblemParams) -> ProblemParams:
    """(mu, eps, omega) -> (-mu, -eps, omega); u solves one iff -u solves the other."""
    return replace(params, mu=-params.mu, epsilon=-params.epsilon)


@dataclass(frozen=True)
class Certification:
    """Certificate for any sign of mu.

    ``working`` is the mu < 0 problem the certificate belongs to; it equals
    ``reflect(params)`` when ``reflected`` is set.
    """

    params: ProblemParams
    working: ProblemParams
    reflected: bool
    cert: BarrierCertificate
    signs: SignReport


def certify(
    params: ProblemParams,
    r_choice: Optional[float] = None,
    R_choice: Optional[float] = None,
) -> Certification:
    """Certify ``params``, routing mu > 0 through :func:`reflect`."""
    if params.mu == 0:
        raise WrongSignCase("mu == 0 has no barrier certificate")
    reflected = params.mu > 0
    working = reflect(params) if reflected else params
    cert = compute_barriers(working, r_choice, R_choice)
    return Certification(params, working, reflected, cert, verify_barrier_signs(cert, working))
