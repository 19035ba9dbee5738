"""Finite-volume solver for ``u_t = kappa (u^n u_r)_r`` with prescribed origin flux.

Vertex-centred grid ``r_j = j h`` (j = 0..nr) with control volumes of width
h (h/2 at the origin). The interface flux uses the Kirchhoff variable
``w = u^(n+1)/(n+1)``, so ``kappa u^n u_r`` at ``r_{j+1/2}`` is
``kappa (w_{j+1} - w_j) / h``. The origin face carries the prescribed
``u^n u_r = -q0 t^k``; ``u = 0`` at ``r = R``. Time stepping is the theta
scheme (fully implicit by default) solved by Newton iteration.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from .errors import FrontEscapeError, FrontfluxError, NewtonDivergenceError, ParameterError
from .profiles import Profile, ProfileSource
from .similarity import PhysicalParams, map_parameters

__all__ = [
    "PdeConfig",
    "StepRecord",
    "GridSolution",
    "pde_solve",
    "front_position_numeric",
    "mass_balance_error",
    "rescaled_profile",
    "default_snapshots",
]

ESCAPE_THRESHOLD = 1e-8


def default_snapshots(t_end: float) -> tuple:
    """A decade of log-spaced times ending at ``t_end`` plus quarter and half."""
    times = set(np.round(np.geomspace(0.1, 1.0, 11), 12) * t_end)
    times.update({0.25 * t_end, 0.5 * t_end, t_end})
    return tuple(sorted(float(t) for t in times))


@dataclass(frozen=True)
class PdeConfig:
    domain_length: float
    nr: int = 400
    t_end: float = 1.0
    dt_initial: float = 1e-6
    theta_scheme: float = 1.0
    regularization_epsilon: float = 1e-10
    max_newton_iters: int = 30
    newton_tol: float = 1e-10
    growth: float = 1.2
    dt_max: float | None = None
    dt_relative_max: float = 0.005
    snapshot_times: tuple | None = None

    def __post_init__(self):
        if not self.domain_length > 0:
            raise ParameterError("domain_length must be > 0")
        if not self.t_end > 0:
            raise ParameterError("t_end must be > 0")
        if self.nr < 100:
            raise ParameterError(f"nr must be >= 100, got {self.nr}")
        if self.regularization_epsilon < 0:
            raise ParameterError("regularization_epsilon must be >= 0")
        if not (self.theta_scheme == 0.0 or 0.5 <= self.theta_scheme <= 1.0):
            raise ParameterError("theta_scheme must be 0 (explicit) or in [0.5, 1]")
        if not 0 < self.dt_initial <= self.t_end:
            raise ParameterError("dt_initial must lie in (0, t_end]")
        snaps = self.snapshot_times or default_snapshots(self.t_end)
        snaps = tuple(sorted({float(t) for t in snaps} | {float(self.t_end)}))
        if snaps[0] <= 0 or snaps[-1] > self.t_end * (1 + 1e-12):
            raise ParameterError("snapshot times must lie in (0, t_end]")
        object.__setattr__(self, "snapshot_times", snaps)

    @property
    def h(self) -> float:
        return self.domain_length / self.nr


@dataclass(frozen=True)
class StepRecord:
    t: float
    dt: float
    newton_iterations: int
    boundary_flux: float


@dataclass(frozen=True, eq=False)
class GridSolution:
    r_nodes: np.ndarray
    times: np.ndarray
    u_values: np.ndarray
    phys: PhysicalParams
    config: PdeConfig
    history: list = field(default_factory=list)

    def snapshot(self, t: float) -> np.ndarray:
        idx = int(np.argmin(np.abs(self.times - t)))
        if not math.isclose(self.times[idx], t, rel_tol=1e-9, abs_tol=1e-14):
            raise ParameterError(f"t={t} is not a stored snapshot")
        return self.u_values[idx]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["t", "r", "u"])
        for t, u in zip(self.times, self.u_values):
            for r, val in zip(self.r_nodes, u):
                writer.writerow([repr(float(t)), repr(float(r)), repr(float(val))])
        return buf.getvalue()

    def metadata(self) -> dict:
        cfg = asdict(self.config)
        cfg["snapshot_times"] = list(cfg["snapshot_times"])
        return {
            "phys": asdict(self.phys),
            "config": cfg,
            "steps": len(self.history),
            "step_history": [asdict(s) for s in self.history],
            "error_flags": [],
        }


def _kirchhoff(u, n):
    return np.sign(u) * np.abs(u) ** (n + 1.0) / (n + 1.0)


def _operator(w, kappa, h):
    """Net outflow ``J_out - J_in`` per node, excluding the origin source."""
    out = np.empty_like(w)
    wp = np.append(w, 0.0)
    out[0] = kappa / h * (wp[0] - wp[1])
    out[1:] = kappa / h * (2.0 * wp[1:-1] - wp[2:] - wp[:-2])
    return out


def _boundary_inflow(phys, t_old, t_new, theta):
    def q(t):
        return phys.q0 * t**phys.k

    new = q(t_new)
    old = q(t_old) if t_old > 0 or phys.k >= 0 else new
    return theta * new + (1.0 - theta) * old


def _newton_step(u_old, t_old, dt, phys, cfg, volumes):
    n, kappa, h, th = phys.n, phys.kappa, cfg.h, cfg.theta_scheme
    t_new = t_old + dt
    flux = _boundary_inflow(phys, t_old, t_new, th)
    source = np.zeros_like(u_old)
    source[0] = kappa * flux
    explicit = (1.0 - th) * _operator(_kirchhoff(u_old, n), kappa, h) if th < 1 else 0.0
    u = u_old.copy()
    eps = cfg.regularization_epsilon
    ab = np.zeros((3, u.size))
    for it in range(1, cfg.max_newton_iters + 1):
        w = _kirchhoff(u, n)
        resid = volumes * (u - u_old) / dt + th * _operator(w, kappa, h) + explicit - source
        wprime = np.maximum(np.abs(u), eps) ** n
        c = th * kappa / h
        ab[1] = volumes / dt + c * wprime * 2.0
        ab[1, 0] = volumes[0] / dt + c * wprime[0]
        ab[0, 1:] = -c * wprime[1:]
        ab[2, :-1] = -c * wprime[:-1]
        du = solve_banded((1, 1), ab, -resid)
        u = np.maximum(u + du, 0.0)
        scale = max(float(u.max()), 1e-300)
        if not np.all(np.isfinite(u)):
            break
        if float(np.max(np.abs(du))) <= cfg.newton_tol * scale:
            return u, it, flux
    raise NewtonDivergenceError(t_new, dt)


def pde_solve(phys: PhysicalParams, cfg: PdeConfig) -> GridSolution:
    """March from zero data to ``cfg.t_end``, storing the configured snapshots.

    Raises
    ------
    FrontEscapeError
        If the temperature next to ``r = R`` exceeds ``1e-8 max u``.
    NewtonDivergenceError
        If Newton fails even after repeated step halving.
    """
    nr, h = cfg.nr, cfg.h
    r = np.linspace(0.0, cfg.domain_length, nr + 1)
    volumes = np.full(nr, h)
    volumes[0] = 0.5 * h
    u = np.zeros(nr)
    t = 0.0
    dt = cfg.dt_initial
    dt_max = cfg.dt_max or cfg.t_end / 200.0
    snaps = list(cfg.snapshot_times)
    stored_t, stored_u, history = [], [], []
    while snaps:
        target = snaps[0]
        dt = min(dt, dt_max, max(cfg.dt_relative_max * t, cfg.dt_initial))
        if t + dt >= target * (1 - 1e-12):
            dt = target - t
        for _ in range(12):
            try:
                u_new, iters, flux = _newton_step(u, t, dt, phys, cfg, volumes)
                break
            except NewtonDivergenceError:
                dt *= 0.5
        else:
            raise NewtonDivergenceError(t + dt, dt)
        t = target if math.isclose(t + dt, target, rel_tol=1e-12) else t + dt
        u = u_new
        history.append(StepRecord(t, dt, iters, -flux))
        if u[-1] > ESCAPE_THRESHOLD * u.max():
            raise FrontEscapeError(
                f"front reached r={cfg.domain_length:g} at t={t:.6g}; enlarge the domain"
            )
        if t == target:
            stored_t.append(t)
            stored_u.append(np.append(u, 0.0))
            snaps.pop(0)
        dt *= cfg.growth
    return GridSolution(
        r_nodes=r,
        times=np.array(stored_t),
        u_values=np.array(stored_u),
        phys=phys,
        config=cfg,
        history=history,
    )


def front_position_numeric(sol: GridSolution, t: float, threshold: float) -> float:
    """Largest r with ``u > threshold``, linearly interpolated between nodes."""
    u = sol.snapshot(t)
    above = np.nonzero(u > threshold)[0]
    if above.size == 0:
        raise FrontfluxError(f"u never exceeds {threshold:g} at t={t:g}")
    j = int(above[-1])
    if j + 1 >= u.size:
        return float(sol.r_nodes[-1])
    r0, r1 = sol.r_nodes[j], sol.r_nodes[j + 1]
    u0, u1 = u[j], u[j + 1]
    return float(r0 + (u0 - threshold) / (u0 - u1) * (r1 - r0))


def mass_balance_error(sol: GridSolution, phys: PhysicalParams, t_min: float | None = None) -> float:
    """Max relative deviation of ``int u dr`` from ``kappa q0 t^(k+1)/(k+1)``.

    Snapshots earlier than ``t_min`` (default ``10 dt_initial``) are skipped.
    """
    if phys.k <= -1:
        raise ParameterError("injected energy diverges for k <= -1")
    if t_min is None:
        t_min = 10.0 * sol.config.dt_initial
    worst = 0.0
    for t, u in zip(sol.times, sol.u_values):
        if t < t_min:
            continue
        mass = np.trapezoid(u, sol.r_nodes)
        expected = phys.kappa * phys.q0 * t ** (phys.k + 1.0) / (phys.k + 1.0)
        worst = max(worst, abs(mass - expected) / expected)
    return worst


def rescaled_profile(sol: GridSolution, t: float, cutoff: float = 1e-12) -> Profile:
    """Snapshot mapped to similarity variables ``f = u^n / (A t^m)`` vs ``theta``.

    The profile is truncated at the first node where ``u <= cutoff max u``.
    """
    sim = map_parameters(sol.phys)
    u = sol.snapshot(t)
    zero = np.nonzero(u <= cutoff * u.max())[0]
    end = int(zero[0]) if zero.size else u.size - 1
    theta = sim.B * sol.r_nodes[: end + 1] / t**sim.p
    f = u[: end + 1] ** sol.phys.n / (sim.A * t**sim.m)
    f[-1] = 0.0
    df = np.gradient(f, theta)
    return Profile(theta, f, df, ProfileSource.PDE_RESCALED, float(theta[-1]))
