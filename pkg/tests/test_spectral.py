import numpy as np
import pytest

from resonant_periodic.exceptions import NonPositiveShift, ShapeError
from resonant_periodic.spectral import (
    PeriodicFunction,
    grid,
    second_derivative,
    second_derivative_matrix,
    solve_shifted,
    to_coeffs,
    to_values,
    wavenumbers,
)


def dft_direct(values):
    """O(N^2) sum c_k = (1/N) sum_j u_j exp(-i k s_j), independent of numpy.fft."""
    n = len(values)
    j = np.arange(n)
    k = wavenumbers(n)
    return np.exp(-1j * np.outer(k, 2 * np.pi * j / n)) @ values / n


def smooth_random(rng, n, modes=6):
    s = grid(n)
    out = rng.normal()
    for k in range(1, modes + 1):
        out = out + rng.normal() / k**2 * np.cos(k * s) + rng.normal() / k**2 * np.sin(k * s)
    return PeriodicFunction.from_values(out)


def test_cos_single_mode():
    c = to_coeffs(np.cos(grid(8)))
    expected = np.zeros(8, complex)
    expected[1] = expected[-1] = 0.5
    assert np.allclose(c, expected, atol=1e-15)


def test_constant_mode():
    c = to_coeffs(np.full(16, 3.0))
    assert c[0] == pytest.approx(3.0)
    assert np.max(np.abs(c[1:])) < 1e-15


def test_round_trip(rng):
    v = rng.normal(size=64)
    assert np.max(np.abs(to_values(to_coeffs(v)) - v)) < 1e-12


def test_matches_direct_dft(rng):
    v = rng.normal(size=32)
    assert np.allclose(to_coeffs(v), dft_direct(v), atol=1e-13)


def test_conjugate_symmetry(rng):
    c = to_coeffs(rng.normal(size=32))
    k = np.arange(1, 16)
    assert np.allclose(c[k], np.conj(c[-k]), atol=1e-15)


@pytest.mark.parametrize("n", [4, 12, 100])
def test_bad_sizes(n):
    with pytest.raises(ShapeError):
        to_coeffs(np.zeros(n))


def test_length_mismatch():
    with pytest.raises(ShapeError):
        to_values(np.zeros(16, complex), n=32)
    with pytest.raises(ShapeError):
        to_coeffs(np.zeros((8, 8)))


@pytest.mark.parametrize(
    "func, expected",
    [
        (lambda s: np.cos(2 * s), lambda s: -4 * np.cos(2 * s)),
        (lambda s: 7.0 + 0 * s, lambda s: 0 * s),
        (lambda s: np.sin(s) + np.cos(3 * s), lambda s: -np.sin(s) - 9 * np.cos(3 * s)),
    ],
)
def test_second_derivative_eigenfunctions(func, expected):
    u = PeriodicFunction.from_callable(func, 32)
    assert np.max(np.abs(second_derivative(u).values - expected(u.grid))) < 1e-12


def test_second_derivative_drops_nyquist():
    n = 16
    u = PeriodicFunction.from_values(np.cos(n // 2 * grid(n)))
    assert np.max(np.abs(second_derivative(u).values)) < 1e-12


def test_second_derivative_matrix_matches(rng):
    u = smooth_random(rng, 32)
    d2 = second_derivative_matrix(32)
    assert np.allclose(d2 @ u.values, second_derivative(u).values, atol=1e-11)


@pytest.mark.parametrize(
    "func, lam, expected",
    [
        (np.cos, 1.0, lambda s: np.cos(s) / 2),
        (lambda s: np.full_like(s, 2.5), 0.7, lambda s: np.full_like(s, 2.5 / 0.7)),
        (lambda s: np.cos(3 * s), 2.0, lambda s: np.cos(3 * s) / 11),
    ],
)
def test_solve_shifted_examples(func, lam, expected):
    g = PeriodicFunction.from_callable(func, 32)
    assert np.max(np.abs(solve_shifted(g, lam).values - expected(g.grid))) < 1e-14


@pytest.mark.parametrize("lam", [0.0, -1.0])
def test_solve_shifted_rejects_nonpositive(lam):
    with pytest.raises(NonPositiveShift):
        solve_shifted(PeriodicFunction.constant(1.0, 8), lam)


def test_solve_shifted_linear(rng):
    g1, g2 = smooth_random(rng, 64), smooth_random(rng, 64)
    a, b, lam = 1.7, -0.3, 2.2
    combo = PeriodicFunction.from_values(a * g1.values + b * g2.values)
    lhs = solve_shifted(combo, lam).values
    rhs = a * solve_shifted(g1, lam).values + b * solve_shifted(g2, lam).values
    assert np.max(np.abs(lhs - rhs)) < 1e-12


@pytest.mark.parametrize("c", [0.0, 1e-300, 3.0, 1e6])
def test_resolvent_positive_on_constants(c):
    u = solve_shifted(PeriodicFunction.constant(c, 16), 0.5)
    assert np.all(u.values >= 0)


def test_shifted_operator_inverts(rng):
    for lam in (0.3, 1.0, 3.18):
        g = smooth_random(rng, 128, modes=20)
        u = solve_shifted(g, lam)
        back = -second_derivative(u).values + lam * u.values
        assert np.max(np.abs(back - g.values)) < 1e-10


def test_resolvent_preserves_order(rng):
    # nonnegative band-limited increments: h = c0 + sum a_k cos + b_k sin with c0 >= sum |a_k| + |b_k|
    s = grid(128)
    for lam in (0.8, 3.18, 10.0):
        for _ in range(25):
            g1 = smooth_random(rng, 128, modes=10)
            a = rng.normal(size=(2, 10)) / np.arange(1, 11) ** 2
            h = np.abs(a).sum() * rng.uniform(1.0, 1.5)
            for k in range(1, 11):
                h = h + a[0, k - 1] * np.cos(k * s) + a[1, k - 1] * np.sin(k * s)
            assert np.all(h >= 0)
            g2 = PeriodicFunction.from_values(g1.values + h)
            assert np.all(
                solve_shifted(g1, lam).values <= solve_shifted(g2, lam).values + 1e-9
            )


def test_resample_and_evaluate(rng):
    u = smooth_random(rng, 32)
    fine = u.resample(128)
    assert np.allclose(fine.values[::4], u.values, atol=1e-13)
    s = rng.uniform(0, 2 * np.pi, size=50)
    assert np.allclose(u(s), fine(s), atol=1e-13)
    assert np.allclose(u(u.grid), u.values, atol=1e-13)


def test_shift_half_period():
    u = PeriodicFunction.from_callable(np.cos, 16)
    assert np.allclose(u.shift(8).values, -u.values, atol=1e-15)


def test_values_are_read_only():
    u = PeriodicFunction.constant(1.0, 8)
    with pytest.raises(ValueError):
        u.values[0] = 2.0
