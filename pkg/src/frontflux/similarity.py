"""Similarity exponents, scales and closed-form exact profiles.

The physical problem is

    u_t = kappa (u^n u_r)_r,   u^n u_r |_{r=0} = -q0 t^k,   u(r, 0) = 0.

With v = u^n = A t^m f(theta) and theta = B r / t^p the PDE reduces to

    f f'' + f'^2 / n + (m + 1)/2 theta f' - m f = 0

on 0 < theta < alpha, with f(alpha) = 0 at the thermal front.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

__all__ = [
    "FluxConvention",
    "PhysicalParams",
    "SimilarityParams",
    "ClosedFormProfile",
    "map_parameters",
    "m_from_k",
    "k_from_m",
    "reduced_ode_residual",
    "flux_target",
    "exact_profile_m1",
    "printed_alpha_m1",
    "exact_alpha_m1",
    "cauchy_quadratic_profile",
]


class FluxConvention(enum.Enum):
    """Normalisation of the reduced boundary condition at theta = 0.

    POINTWISE is ``f^(1/n) f'(0) = -1``. POWER_GRADIENT is
    ``d/dtheta f^((n+1)/n) |_0 = -1``, i.e. ``f^(1/n) f'(0) = -n/(n+1)``.
    """

    POINTWISE = "pointwise"
    POWER_GRADIENT = "power-gradient"

    @classmethod
    def parse(cls, value: "FluxConvention | str") -> "FluxConvention":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        for member in cls:
            if member.value == key:
                return member
        raise ParameterError(f"unknown flux convention {value!r}")


def flux_target(conv: FluxConvention, n: float) -> float:
    """Magnitude of ``f^(1/n) f'(0)`` demanded by ``conv``."""
    conv = FluxConvention.parse(conv)
    if conv is FluxConvention.POINTWISE:
        return 1.0
    return n / (n + 1.0)


def m_from_k(n: float, k: float) -> float:
    return n * (2.0 * k + 1.0) / (n + 2.0)


def k_from_m(n: float, m: float) -> float:
    return m * (n + 1.0) / n - (m + 1.0) / 2.0


@dataclass(frozen=True)
class PhysicalParams:
    """Problem instance: conductivity exponent n, flux exponent k, kappa, q0."""

    n: float
    k: float
    kappa: float = 1.0
    q0: float = 1.0

    def __post_init__(self):
        for name in ("n", "k", "kappa", "q0"):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(f"{name} must be finite")
        if self.n <= 0:
            raise ParameterError(f"n must be > 0, got {self.n}")
        if self.kappa <= 0:
            raise ParameterError(f"kappa must be > 0, got {self.kappa}")
        if self.q0 <= 0:
            raise ParameterError(f"q0 must be > 0, got {self.q0}")
        m = m_from_k(self.n, self.k)
        if m + 1.0 <= 0:
            raise ParameterError(
                f"m + 1 must be > 0 for an advancing front; "
                f"n={self.n}, k={self.k} give m={m}"
            )

    @property
    def m(self) -> float:
        return m_from_k(self.n, self.k)


@dataclass(frozen=True)
class SimilarityParams:
    """Exponents m, p and scales A, B of ``v = A t^m f(B r / t^p)``."""

    m: float
    p: float
    A: float
    B: float


def map_parameters(phys: PhysicalParams) -> SimilarityParams:
    """Similarity exponents and scales for a physical problem.

    Powers are taken through logarithms so that extreme n, kappa or q0
    do not overflow intermediate fractional powers.
    """
    n, k = phys.n, phys.k
    m = m_from_k(n, k)
    if m + 1.0 <= 0:
        raise ParameterError(f"m + 1 must be > 0, got m={m}")
    p = (m + 1.0) / 2.0
    log_kappa = math.log(phys.kappa)
    log_qn = math.log(phys.q0) + math.log(n)
    A = math.exp((n * log_kappa + 2.0 * n * log_qn) / (n + 2.0))
    B = math.exp(-((n + 1.0) * log_kappa + n * log_qn) / (n + 2.0))
    return SimilarityParams(m=m, p=p, A=A, B=B)


def reduced_ode_residual(n, m, theta, f, df, d2f):
    """``f f'' + f'^2/n + (m+1)/2 theta f' - m f`` for arrays or scalars."""
    return f * d2f + df * df / n + 0.5 * (m + 1.0) * theta * df - m * f


@dataclass(frozen=True)
class ClosedFormProfile:
    """Polynomial ``b1 s + b2 s^2`` in ``s = alpha - theta``, zero past the front.

    ``satisfies_flux_condition`` is False for the Cauchy branch, which
    solves the ODE but not the prescribed-flux condition at the origin.
    """

    n: float
    m: float
    alpha: float
    b1: float
    b2: float
    satisfies_flux_condition: bool

    def f(self, theta):
        theta = np.asarray(theta, dtype=float)
        s = self.alpha - theta
        return np.where(s >= 0, s * (self.b1 + self.b2 * s), 0.0)

    def df(self, theta):
        theta = np.asarray(theta, dtype=float)
        s = self.alpha - theta
        return np.where(s >= 0, -(self.b1 + 2.0 * self.b2 * s), 0.0)

    def d2f(self, theta):
        theta = np.asarray(theta, dtype=float)
        s = self.alpha - theta
        return np.where(s >= 0, 2.0 * self.b2, 0.0)

    def ode_residual(self, theta):
        return reduced_ode_residual(
            self.n, self.m, theta, self.f(theta), self.df(theta), self.d2f(theta)
        )

    def flux_residual(self, conv: FluxConvention = FluxConvention.POINTWISE) -> float:
        f0 = float(self.f(0.0))
        df0 = float(self.df(0.0))
        return f0 ** (1.0 / self.n) * df0 + flux_target(conv, self.n)


def _check_positive(**values):
    for name, value in values.items():
        if not value > 0:
            raise ParameterError(f"{name} must be > 0, got {value}")


def exact_profile_m1(n: float, alpha: float) -> ClosedFormProfile:
    """Linear exact solution ``f = alpha n (alpha - theta)`` of the m = 1 case."""
    _check_positive(n=n, alpha=alpha)
    return ClosedFormProfile(n, 1.0, alpha, alpha * n, 0.0, True)


def printed_alpha_m1(n: float) -> float:
    """Front position for m = 1 as tabulated: ``(n^(1/n) (n+1))^(n/(n+2))``."""
    _check_positive(n=n)
    return math.exp(n / (n + 2.0) * (math.log(n) / n + math.log(n + 1.0)))


def exact_alpha_m1(n: float, conv: FluxConvention = FluxConvention.POINTWISE) -> float:
    """Front position making the linear m = 1 profile satisfy ``conv`` exactly.

    Substituting ``f = alpha n (alpha - theta)`` gives
    ``n^(1/n) alpha^((n+2)/n) = target``, with target 1 (POINTWISE) or
    n/(n+1) (POWER_GRADIENT).
    """
    _check_positive(n=n)
    target = flux_target(conv, n)
    # (alpha^2 n)^(1/n) * alpha n = target
    log_alpha = (math.log(target) - (n + 1.0) / n * math.log(n)) * n / (n + 2.0)
    return math.exp(log_alpha)


def cauchy_quadratic_profile(n: float, alpha: float) -> ClosedFormProfile:
    """Quadratic exact solution on the branch ``n m + n + 2 m = 0``.

    Here m = -n/(n+2) and every coefficient past the quadratic vanishes.
    """
    _check_positive(n=n, alpha=alpha)
    m = -n / (n + 2.0)
    b1 = 0.5 * alpha * n * (m + 1.0)
    b2 = 0.25 * (m - 1.0) * n / (n + 1.0)
    return ClosedFormProfile(n, m, alpha, b1, b2, False)
