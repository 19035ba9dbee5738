"""Shooting oracle for the reduced boundary value problem.

The ODE is singular at the front (it divides by f), so integration starts
just behind the front from front-series data and runs towards the origin.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .alpha import ALPHA_RANGE, AlphaSolveReport, find_smallest_root
from .errors import (
    NonPhysicalProfileError,
    ParameterError,
    SingularIntegrationError,
    StepFailureError,
)
from .profiles import Profile, ProfileSource
from .series import build_series
from .similarity import FluxConvention, flux_target

__all__ = ["ShootConfig", "integrate_from_front", "shoot_alpha"]


@dataclass(frozen=True)
class ShootConfig:
    seed_offset_fraction: float = 0.01
    seed_order: int = 5
    step_tolerance: float = 1e-10
    alpha_tolerance: float = 1e-8
    convention: FluxConvention = FluxConvention.POINTWISE
    scan_points: int = 61
    samples: int = 401

    def __post_init__(self):
        object.__setattr__(self, "convention", FluxConvention.parse(self.convention))
        if not 0 < self.seed_offset_fraction <= 0.1:
            raise ParameterError("seed_offset_fraction must lie in (0, 0.1]")
        if self.seed_order < 1:
            raise ParameterError("seed_order must be >= 1")
        if not (self.step_tolerance > 0 and self.alpha_tolerance > 0):
            raise ParameterError("tolerances must be positive")
        if self.scan_points < 2 or self.samples < 200:
            raise ParameterError("need scan_points >= 2 and samples >= 200")


def _rhs(n, m):
    half = 0.5 * (m + 1.0)

    def rhs(theta, y):
        f, df = y
        return [df, (m * f - df * df / n - half * theta * df) / f]

    return rhs


SINGULAR_FRACTION = 1e-9


def _zero_event(floor):
    def hit_zero(theta, y):
        return y[0] - floor

    hit_zero.terminal = True
    return hit_zero


def _integrate(n, m, alpha, cfg, dense):
    seed = build_series(n, m, alpha, cfg.seed_order)
    theta0 = alpha * (1.0 - cfg.seed_offset_fraction)
    y0 = [float(seed.f(theta0)), float(seed.df(theta0))]
    scale = abs(seed.beta[1]) * alpha
    sol = solve_ivp(
        _rhs(n, m),
        (theta0, 0.0),
        y0,
        method="DOP853",
        rtol=cfg.step_tolerance,
        atol=cfg.step_tolerance * scale,
        dense_output=dense,
        events=_zero_event(SINGULAR_FRACTION * scale),
    )
    if sol.status == -1:
        raise StepFailureError(f"integrator failed at alpha={alpha:.6g}: {sol.message}")
    if sol.status == 1:
        raise SingularIntegrationError(
            f"f reached zero at theta={sol.t_events[0][0]:.6g} before the origin "
            f"(alpha={alpha:.6g})"
        )
    return seed, theta0, sol


def integrate_from_front(n: float, m: float, alpha: float, cfg: ShootConfig = ShootConfig()) -> Profile:
    """Integrate the reduced ODE from ``alpha (1 - delta)`` down to the origin.

    Points behind the seed location are filled from the seed series, so the
    returned profile covers all of ``[0, alpha]``.
    """
    seed, theta0, sol = _integrate(n, m, alpha, cfg, dense=True)
    thetas = np.linspace(0.0, alpha, cfg.samples)
    f = np.empty_like(thetas)
    df = np.empty_like(thetas)
    inner = thetas <= theta0
    y = sol.sol(thetas[inner])
    f[inner], df[inner] = y[0], y[1]
    f[~inner] = seed.f(thetas[~inner])
    df[~inner] = seed.df(thetas[~inner])
    # the ODE solution is only known to integrator precision at s -> 0
    f = np.maximum(f, 0.0)
    return Profile(thetas, f, df, ProfileSource.SHOOTING, alpha)


def _origin_residual(n, m, cfg, target):
    def residual(alpha):
        _, _, sol = _integrate(n, m, alpha, cfg, dense=False)
        f0, df0 = sol.y[0, -1], sol.y[1, -1]
        if not f0 > 0:
            raise NonPhysicalProfileError(f"f(0) = {f0:.3e} at alpha={alpha:.6g}")
        return f0 ** (1.0 / n) * df0 + target

    return residual


def shoot_alpha(n: float, m: float, cfg: ShootConfig = ShootConfig()):
    """Front position from the integrated (not series) origin values.

    Returns ``(alpha_star, profile, report)``.
    """
    target = flux_target(cfg.convention, n)
    residual = _origin_residual(n, m, cfg, target)
    root, bracket, iterations, roots = find_smallest_root(
        residual, *ALPHA_RANGE, points=cfg.scan_points, xtol=cfg.alpha_tolerance
    )
    report = AlphaSolveReport(
        alpha=root,
        residual_at_root=residual(root),
        convention=cfg.convention,
        order=cfg.seed_order,
        bracket=bracket,
        iterations=iterations,
        method="shooting",
        roots=roots,
    )
    if len(roots) > 1:
        report.warnings.append(f"{len(roots)} roots found, returning the smallest: {roots}")
    return root, integrate_from_front(n, m, root, cfg), report
