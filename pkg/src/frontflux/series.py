"""Front series ``f(theta) = sum_i beta_i (alpha - theta)^i`` of the reduced ODE.

Writing ``s = alpha - theta`` (so ``f_theta = -f_s`` and ``theta = alpha - s``)
and matching powers of s in

    f f_ss + f_s^2 / n - (m+1)/2 (alpha - s) f_s - m f = 0

gives, at order s^j, a relation that is linear in beta_{j+1} with
coefficient ``(j+1) beta_1 (j + 1/n)``; the lowest order fixes
``beta_1 = n alpha (m+1) / 2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRecurrenceError, ParameterError, SeriesOverflowError
from .similarity import reduced_ode_residual

__all__ = [
    "MAX_ORDER",
    "FrontSeries",
    "beta_closed",
    "build_series",
    "eval_f",
    "eval_df",
    "ode_residual",
]

MAX_ORDER = 64
GROWTH_GUARD = 1e12


@dataclass(frozen=True)
class FrontSeries:
    n: float
    m: float
    alpha: float
    order: int
    coeffs: tuple

    @property
    def beta(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=float)

    def f(self, theta):
        s = self.alpha - np.asarray(theta, dtype=float)
        value = np.polynomial.polynomial.polyval(s, self.beta)
        return np.where(s >= 0, value, 0.0)

    def df(self, theta):
        s = self.alpha - np.asarray(theta, dtype=float)
        d = np.polynomial.polynomial.polyder(self.beta)
        value = -np.polynomial.polynomial.polyval(s, d)
        return np.where(s >= 0, value, 0.0)

    def d2f(self, theta):
        s = self.alpha - np.asarray(theta, dtype=float)
        d2 = np.polynomial.polynomial.polyder(self.beta, 2)
        value = np.polynomial.polynomial.polyval(s, d2) if d2.size else 0.0 * s
        return np.where(s >= 0, value, 0.0)

    def ode_residual(self, theta):
        return reduced_ode_residual(
            self.n, self.m, theta, self.f(theta), self.df(theta), self.d2f(theta)
        )

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "alpha": self.alpha,
            "order": self.order,
            "coefficients": [float(c) for c in self.coeffs],
        }


def _check_args(n, m, alpha):
    if not n > 0:
        raise ParameterError(f"n must be > 0, got {n}")
    if not alpha > 0:
        raise ParameterError(f"alpha must be > 0, got {alpha}")
    if m + 1.0 == 0:
        raise ParameterError("m = -1 gives a stationary front (beta_1 = 0)")


def beta_closed(i: int, n: float, m: float, alpha: float) -> float:
    """Closed-form coefficient beta_i for i = 1..5."""
    if i not in (1, 2, 3, 4, 5):
        raise ValueError(f"closed forms exist for i = 1..5 only, got {i}")
    _check_args(n, m, alpha)
    if i == 1:
        return 0.5 * alpha * n * (m + 1)
    if i == 2:
        return 0.25 * (m - 1) * n / (n + 1)
    q = n * m + n + 2 * m
    if i == 3:
        return -n * (m - 1) * q / (12 * (n + 1) ** 2 * alpha * (1 + 2 * n) * (m + 1))
    if i == 4:
        p4 = 5 * n * m - n + 7 * m - 3
        return (
            n * (m - 1) * q * p4
            / (48 * alpha**2 * (n + 1) ** 3 * (1 + 2 * n) * (m + 1) ** 2 * (3 * n + 1))
        )
    p5 = (
        303 * n * m**2 + 82 * m**2 + 102 * n**3 * m**2 + 317 * n**2 * m**2
        - 204 * n**2 * m - 238 * n * m - 70 * m - 48 * n**3 * m
        + 12 + 7 * n**2 - 6 * n**3 + 31 * n
    )
    return -(
        n * (m - 1) * q * p5
        / (
            240 * alpha**3 * (3 * n + 1) * (m + 1) ** 3 * (1 + 2 * n) ** 2
            * (n + 1) ** 4 * (1 + 4 * n)
        )
    )


def build_series(n: float, m: float, alpha: float, N: int, max_order: int = MAX_ORDER) -> FrontSeries:
    """Truncated front series of order ``N`` by power matching.

    Raises
    ------
    DegenerateRecurrenceError
        If the coefficient multiplying the next beta vanishes.
    SeriesOverflowError
        If ``|beta_i| alpha^i`` exceeds ``1e12 |beta_1| alpha``.
    """
    _check_args(n, m, alpha)
    N = int(N)
    if N < 1 or N > max_order:
        raise ParameterError(f"order must be in [1, {max_order}], got {N}")
    beta = np.zeros(N + 1)
    beta[1] = 0.5 * n * alpha * (m + 1.0)
    scale = abs(beta[1]) * alpha
    for j in range(1, N):
        # products beta_a beta_b with a + b = j + 2 and both indices in 2..j
        a = np.arange(2, j + 1)
        b = j + 2 - a
        coupling = np.sum(beta[a] * beta[b] * (b * (b - 1) + a * b / n))
        lead = (j + 1) * beta[1] * (j + 1.0 / n)
        if lead == 0 or not np.isfinite(lead):
            raise DegenerateRecurrenceError(j + 1)
        beta[j + 1] = -(coupling + (0.5 * (m + 1.0) * j - m) * beta[j]) / lead
        if abs(beta[j + 1]) * alpha ** (j + 1) > GROWTH_GUARD * scale:
            raise SeriesOverflowError(j + 1)
    return FrontSeries(n=n, m=m, alpha=alpha, order=N, coeffs=tuple(float(c) for c in beta))


def eval_f(series: FrontSeries, theta):
    """Series value; exactly zero beyond the front."""
    out = series.f(theta)
    return float(out) if np.ndim(out) == 0 else out


def eval_df(series: FrontSeries, theta):
    """Series theta-derivative; exactly zero beyond the front."""
    out = series.df(theta)
    return float(out) if np.ndim(out) == 0 else out


def ode_residual(series: FrontSeries, theta):
    out = series.ode_residual(theta)
    return float(out) if np.ndim(out) == 0 else out
