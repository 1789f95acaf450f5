"""Problem parameters, the canonical field and lower/upper solution predicates.

The forced oscillator ``u'' + u + mu u^2 = eps cos(omega t)`` is rescaled with
``s = omega t`` to the 2*pi-periodic problem ``-u''(s) = f(s, u)`` where

    f(s, u) = omega**-2 * (u + mu u**2 - eps cos s).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidParams

TWO_PI = 2.0 * math.pi
DEFAULT_SLACK = 1e-9


class SignCase(enum.Enum):
    NegativeMu = "NegativeMu"
    PositiveMu = "PositiveMu"


@dataclass(frozen=True)
class ProblemParams:
    """The triple (mu, epsilon, omega).

    ``mu == 0`` or ``epsilon == 0`` is only accepted with
    ``allow_degenerate=True``; those limits serve as exact test oracles.
    """

    mu: float
    epsilon: float
    omega: float
    allow_degenerate: bool = False

    def __post_init__(self):
        for name in ("mu", "epsilon", "omega"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidParams(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, float(value))
        if not self.omega > 0:
            raise InvalidParams(f"omega must be > 0, got {self.omega!r}")
        if not self.allow_degenerate and (self.mu == 0.0 or self.epsilon == 0.0):
            raise InvalidParams(
                "mu and epsilon must be nonzero (pass allow_degenerate=True "
                "for the unforced/linear limits)"
            )

    @property
    def sign_case(self) -> SignCase:
        if self.mu < 0:
            return SignCase.NegativeMu
        if self.mu > 0:
            return SignCase.PositiveMu
        raise InvalidParams("mu == 0 has no sign case")

    @property
    def is_degenerate(self) -> bool:
        return self.mu == 0.0 or self.epsilon == 0.0


def eval_f(s, u, params: ProblemParams):
    """Canonical field ``omega**-2 (u + mu u^2 - eps cos s)``; broadcasts over arrays."""
    return (u + params.mu * u * u - params.epsilon * np.cos(s)) / params.omega**2


def eval_f_u(s, u, params: ProblemParams):
    """Partial derivative of :func:`eval_f` with respect to ``u``."""
    del s
    return (1.0 + 2.0 * params.mu * u) / params.omega**2


def rescale_period(params: ProblemParams) -> float:
    """Period ``2 pi / omega`` of the sought solution in the original time."""
    if not params.omega > 0:
        raise InvalidParams(f"omega must be > 0, got {params.omega!r}")
    return TWO_PI / params.omega


def _forward_derivative(samples, h):
    # one-sided 4th order: (-25 f0 + 48 f1 - 36 f2 + 16 f3 - 3 f4) / 12h
    f0, f1, f2, f3, f4 = samples
    return (-25.0 * f0 + 48.0 * f1 - 36.0 * f2 + 16.0 * f3 - 3.0 * f4) / (12.0 * h)


@dataclass(frozen=True)
class CandidateFunction:
    """A candidate lower or upper solution sampled on ``s_j = 2 pi j / N``.

    ``endpoint_values`` holds (c(0), c(2 pi)) and ``endpoint_derivatives``
    the one-sided derivatives (c'(0), c'(2 pi)).
    """

    values: np.ndarray
    second_derivative: np.ndarray
    endpoint_derivatives: tuple[float, float]
    endpoint_values: tuple[float, float]

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        second = np.asarray(self.second_derivative, dtype=float)
        if values.ndim != 1 or values.shape != second.shape:
            raise InvalidParams("values and second_derivative must be 1-D of equal length")
        if values.size < 4:
            raise InvalidParams("a candidate needs at least 4 grid points")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "second_derivative", second)

    @property
    def n_grid(self) -> int:
        return self.values.size

    @property
    def grid(self) -> np.ndarray:
        return TWO_PI * np.arange(self.n_grid) / self.n_grid

    @classmethod
    def constant(cls, c: float, n_grid: int = 128) -> "CandidateFunction":
        return cls(
            values=np.full(n_grid, float(c)),
            second_derivative=np.zeros(n_grid),
            endpoint_derivatives=(0.0, 0.0),
            endpoint_values=(float(c), float(c)),
        )

    @classmethod
    def from_callable(cls, func, n_grid: int = 128) -> "CandidateFunction":
        """Sample ``func`` and difference it with 4th-order stencils.

        The interior second derivative uses the centred five-point stencil
        with the grid spacing; endpoint derivatives are one-sided.
        """
        h = TWO_PI / n_grid
        s = TWO_PI * np.arange(n_grid) / n_grid
        f = lambda x: np.asarray(func(x), dtype=float)  # noqa: E731
        values = f(s)
        second = (
            -f(s + 2 * h) + 16.0 * f(s + h) - 30.0 * values + 16.0 * f(s - h) - f(s - 2 * h)
        ) / (12.0 * h * h)
        left = f(np.arange(5) * h)
        right = f(TWO_PI - np.arange(5) * h)
        return cls(
            values=values,
            second_derivative=second,
            endpoint_derivatives=(
                float(_forward_derivative(left, h)),
                float(-_forward_derivative(right, h)),
            ),
            endpoint_values=(float(left[0]), float(right[0])),
        )


def is_lower_solution(
    c: CandidateFunction, params: ProblemParams, slack: float = DEFAULT_SLACK
) -> bool:
    """-c'' <= f(s, c), c(0) = c(2 pi) and c'(0) >= c'(2 pi), all up to ``slack``."""
    field = eval_f(c.grid, c.values, params)
    if not np.all(-c.second_derivative <= field + slack):
        return False
    if abs(c.endpoint_values[0] - c.endpoint_values[1]) > slack:
        return False
    d0, d2pi = c.endpoint_derivatives
    return bool(d0 >= d2pi - slack)


def is_upper_solution(
    c: CandidateFunction, params: ProblemParams, slack: float = DEFAULT_SLACK
) -> bool:
    """-c'' >= f(s, c), c(0) = c(2 pi) and c'(0) <= c'(2 pi), all up to ``slack``."""
    field = eval_f(c.grid, c.values, params)
    if not np.all(-c.second_derivative >= field - slack):
        return False
    if abs(c.endpoint_values[0] - c.endpoint_values[1]) > slack:
        return False
    d0, d2pi = c.endpoint_derivatives
    return bool(d0 <= d2pi + slack)
