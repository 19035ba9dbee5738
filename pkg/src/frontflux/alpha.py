"""Front position alpha from the flux condition at the origin."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from .errors import (
    FrontfluxError,
    MultipleRootsWarning,
    NoSignChangeError,
    NonPhysicalProfileError,
    ParameterError,
)
from .series import build_series
from .similarity import FluxConvention, flux_target

__all__ = [
    "ALPHA_RANGE",
    "SCAN_POINTS",
    "AlphaSolveReport",
    "bc_residual",
    "find_smallest_root",
    "solve_alpha",
    "paper_condition_n1",
    "solve_paper_n1",
]

ALPHA_RANGE = (1e-3, 1e3)
SCAN_POINTS = 400
RESIDUAL_TOL = 1e-9

# Quartic factors of the condensed n = 1 condition, highest power first.
_N1_QUARTIC_A = (105147, 384822, 519188, 307082, 66161)
_N1_QUARTIC_B = (24237, 84342, 103808, 54602, 9491)
_N1_DENOMINATOR = 2985984000  # 1440**3


@dataclass
class AlphaSolveReport:
    alpha: float
    residual_at_root: float
    convention: FluxConvention
    order: Optional[int]
    bracket: tuple
    iterations: int
    method: str = "series"
    roots: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    table_match: Optional[tuple] = None

    def to_record(self) -> dict:
        record = {
            "alpha": self.alpha,
            "residual_at_root": self.residual_at_root,
            "convention": self.convention.value,
            "order": self.order,
            "bracket": [float(self.bracket[0]), float(self.bracket[1])],
            "iterations": self.iterations,
            "method": self.method,
            "roots": [float(r) for r in self.roots],
            "warnings": list(self.warnings),
        }
        if self.table_match is not None:
            table, printed, deviation = self.table_match
            record["table_match"] = {
                "table": table,
                "printed": printed,
                "deviation": deviation,
            }
        return record


def bc_residual(
    n: float,
    m: float,
    alpha: float,
    N: int,
    conv: FluxConvention = FluxConvention.POINTWISE,
) -> float:
    """``f(0)^(1/n) f'(0) + target`` for the order-N series at ``alpha``."""
    series = build_series(n, m, alpha, N)
    f0 = float(series.f(0.0))
    if not f0 > 0:
        raise NonPhysicalProfileError(
            f"series gives f(0) = {f0:.6g} <= 0 at alpha={alpha:.6g} (n={n}, m={m}, N={N})"
        )
    df0 = float(series.df(0.0))
    return f0 ** (1.0 / n) * df0 + flux_target(conv, n)


def find_smallest_root(
    fun: Callable[[float], float],
    lo: float = ALPHA_RANGE[0],
    hi: float = ALPHA_RANGE[1],
    points: int = SCAN_POINTS,
    xtol: float = 1e-10,
):
    """Geometric scan of ``[lo, hi]`` followed by bracketed refinement.

    Samples where ``fun`` raises a solver error are skipped. Returns
    ``(root, bracket, iterations, roots)`` where ``roots`` lists every
    bracketed root in increasing order.
    """
    grid = np.geomspace(lo, hi, points)
    values = np.full(points, np.nan)
    first_error = None
    for i, x in enumerate(grid):
        try:
            values[i] = fun(float(x))
        except FrontfluxError as exc:
            first_error = first_error or exc
    signs = np.sign(values)
    brackets = []
    for i in range(points - 1):
        a, b = values[i], values[i + 1]
        if np.isnan(a) or np.isnan(b):
            continue
        if a == 0:
            brackets.append((grid[i], grid[i]))
        elif a * b < 0:
            brackets.append((grid[i], grid[i + 1]))
    if not np.isnan(values[-1]) and values[-1] == 0:
        brackets.append((grid[-1], grid[-1]))
    if not brackets:
        if np.all(np.isnan(values)) and first_error is not None:
            raise first_error
        summary = "".join({1.0: "+", -1.0: "-", 0.0: "0"}.get(s, "?") for s in signs)
        raise NoSignChangeError(
            f"residual has no sign change on [{lo:g}, {hi:g}]; sampled signs {summary}",
            signs=signs,
        )
    roots = []
    iterations = 0
    for k, (a, b) in enumerate(brackets):
        if a == b:
            roots.append(float(a))
            continue
        root, info = brentq(fun, a, b, xtol=xtol, rtol=4 * np.finfo(float).eps,
                            full_output=True)
        if k == 0:
            iterations = info.iterations
        roots.append(float(root))
    return roots[0], brackets[0], iterations, roots


def solve_alpha(
    n: float,
    m: float,
    N: int = 5,
    conv: FluxConvention = FluxConvention.POINTWISE,
    tol: float = 1e-10,
    residual_tol: float = RESIDUAL_TOL,
    scan_points: int = SCAN_POINTS,
) -> AlphaSolveReport:
    """Smallest positive alpha satisfying the flux condition on the order-N series."""
    if not tol > 0:
        raise ParameterError(f"tol must be > 0, got {tol}")
    if N < 2:
        raise ParameterError(f"order must be >= 2 for an alpha solve, got {N}")
    conv = FluxConvention.parse(conv)

    def residual(alpha):
        return bc_residual(n, m, alpha, N, conv)

    root, bracket, iterations, roots = find_smallest_root(
        residual, points=scan_points, xtol=tol
    )
    report = AlphaSolveReport(
        alpha=root,
        residual_at_root=residual(root),
        convention=conv,
        order=N,
        bracket=bracket,
        iterations=iterations,
        roots=roots,
    )
    if len(roots) > 1:
        msg = f"{len(roots)} roots found, returning the smallest: {roots}"
        report.warnings.append(msg)
        warnings.warn(msg, MultipleRootsWarning, stacklevel=2)
    if abs(report.residual_at_root) > residual_tol:
        raise NoSignChangeError(
            f"refined root alpha={root:.12g} leaves residual {report.residual_at_root:.3e}"
        )
    return report


def _n1_factors(m: float):
    pa = np.polyval(_N1_QUARTIC_A, m)
    pb = np.polyval(_N1_QUARTIC_B, m)
    return pa, pb


def paper_condition_n1(m: float, alpha: float) -> float:
    """Condensed n = 1 front condition, written as ``lhs - 1``."""
    if not m > -1:
        raise ParameterError(f"m must be > -1, got {m}")
    pa, pb = _n1_factors(m)
    return alpha**3 * pa * pb / (_N1_DENOMINATOR * (m + 1.0) ** 6) - 1.0


def solve_paper_n1(m: float) -> float:
    """Positive root of :func:`paper_condition_n1`."""
    if not m > -1:
        raise ParameterError(f"m must be > -1, got {m}")
    pa, pb = _n1_factors(m)
    return math.pow(_N1_DENOMINATOR * (m + 1.0) ** 6 / (pa * pb), 1.0 / 3.0)
