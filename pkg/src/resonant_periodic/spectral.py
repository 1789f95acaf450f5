"""Fourier representation of real 2*pi-periodic functions on an equispaced grid.

Convention: ``u(s_j) = sum_k c_k exp(i k s_j)`` with ``s_j = 2 pi j / N``;
coefficients are stored in numpy FFT order, so ``coeffs[N // 2]`` is the
Nyquist mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import NonPositiveShift, ShapeError

DEFAULT_N_GRID = 128


def _check_size(n: int) -> None:
    if n < 8 or n & (n - 1):
        raise ShapeError(f"grid size must be a power of two >= 8, got {n}")


def grid(n: int) -> np.ndarray:
    return 2.0 * math.pi * np.arange(n) / n


def wavenumbers(n: int) -> np.ndarray:
    """Integer wavenumbers in FFT order (Nyquist reported as -N/2)."""
    return np.fft.fftfreq(n, d=1.0 / n)


def to_coeffs(values) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if values.ndim != 1:
        raise ShapeError(f"expected a 1-D array, got shape {values.shape}")
    _check_size(values.size)
    return np.fft.fft(values) / values.size


def to_values(coeffs, n: int | None = None) -> np.ndarray:
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.ndim != 1:
        raise ShapeError(f"expected a 1-D array, got shape {coeffs.shape}")
    if n is not None and coeffs.size != n:
        raise ShapeError(f"expected {n} coefficients, got {coeffs.size}")
    _check_size(coeffs.size)
    return np.fft.ifft(coeffs * coeffs.size).real


@dataclass(frozen=True, eq=False)
class PeriodicFunction:
    """Grid samples of a real 2*pi-periodic function with their Fourier coefficients.

    Build instances through :meth:`from_values`, :meth:`from_coeffs` or
    :meth:`from_callable`; the arrays are made read-only.
    """

    values: np.ndarray
    coeffs: np.ndarray

    @classmethod
    def from_values(cls, values) -> "PeriodicFunction":
        values = np.array(values, dtype=float)
        coeffs = to_coeffs(values)
        values.setflags(write=False)
        coeffs.setflags(write=False)
        return cls(values, coeffs)

    @classmethod
    def from_coeffs(cls, coeffs) -> "PeriodicFunction":
        coeffs = np.array(coeffs, dtype=complex)
        values = to_values(coeffs)
        values.setflags(write=False)
        coeffs.setflags(write=False)
        return cls(values, coeffs)

    @classmethod
    def from_callable(cls, func, n: int = DEFAULT_N_GRID) -> "PeriodicFunction":
        _check_size(n)
        return cls.from_values(np.broadcast_to(func(grid(n)), (n,)))

    @classmethod
    def constant(cls, c: float, n: int = DEFAULT_N_GRID) -> "PeriodicFunction":
        return cls.from_values(np.full(n, float(c)))

    @property
    def n_grid(self) -> int:
        return self.values.size

    @property
    def grid(self) -> np.ndarray:
        return grid(self.n_grid)

    def resample(self, m: int) -> "PeriodicFunction":
        """Trigonometric interpolant evaluated on an ``m``-point grid (m >= N).

        The Nyquist coefficient is split evenly between +N/2 and -N/2.
        """
        n = self.n_grid
        _check_size(m)
        if m < n:
            raise ShapeError(f"cannot resample {n} points down to {m}")
        if m == n:
            return self
        half = n // 2
        c = np.zeros(m, dtype=complex)
        c[:half] = self.coeffs[:half]
        c[m - half + 1:] = self.coeffs[half + 1:]
        c[half] = 0.5 * self.coeffs[half]
        c[m - half] = 0.5 * self.coeffs[half]
        return PeriodicFunction.from_coeffs(c)

    def __call__(self, s) -> np.ndarray:
        """Evaluate the trigonometric interpolant at arbitrary points."""
        s = np.asarray(s, dtype=float)
        n = self.n_grid
        half = n // 2
        k = np.arange(1, half)
        phase = np.multiply.outer(s, k)
        c = self.coeffs
        out = c[0].real + 2.0 * (
            np.cos(phase) @ c[1:half].real - np.sin(phase) @ c[1:half].imag
        )
        return out + c[half].real * np.cos(half * s)

    def shift(self, delta_index: int) -> "PeriodicFunction":
        """Samples of ``s -> u(s + 2 pi delta_index / N)``."""
        return PeriodicFunction.from_values(np.roll(self.values, -delta_index))

    def __neg__(self) -> "PeriodicFunction":
        return PeriodicFunction.from_values(-self.values)

    def sup_distance(self, other: "PeriodicFunction") -> float:
        if other.n_grid != self.n_grid:
            raise ShapeError("grid sizes differ")
        return float(np.max(np.abs(self.values - other.values)))


def second_derivative(u: PeriodicFunction) -> PeriodicFunction:
    """Spectral ``u''``: multiply by ``-k^2`` and drop the Nyquist mode."""
    n = u.n_grid
    k = wavenumbers(n)
    c = -(k**2) * u.coeffs
    c[n // 2] = 0.0
    return PeriodicFunction.from_coeffs(c)


def second_derivative_matrix(n: int) -> np.ndarray:
    """Dense real matrix of :func:`second_derivative` acting on grid values."""
    _check_size(n)
    k = wavenumbers(n)
    symbol = -(k**2)
    symbol[n // 2] = 0.0
    eye = np.eye(n)
    return np.fft.ifft(symbol[:, None] * np.fft.fft(eye, axis=0), axis=0).real


def solve_shifted(g: PeriodicFunction, lam: float) -> PeriodicFunction:
    """Solve ``-u'' + lam u = g`` with periodic boundary conditions (lam > 0)."""
    if not lam > 0:
        raise NonPositiveShift(f"shift must be > 0, got {lam!r}")
    n = g.n_grid
    k = wavenumbers(n)
    c = g.coeffs / (k**2 + lam)
    c[n // 2] = 0.0
    return PeriodicFunction.from_coeffs(c)
