import json

import numpy as np
import pytest

from frontflux.errors import FrontEscapeError, ParameterError
from frontflux.pde import (
    PdeConfig,
    default_snapshots,
    front_position_numeric,
    mass_balance_error,
    pde_solve,
    rescaled_profile,
)
from frontflux.reconstruction import compare_profiles, front_position
from frontflux.similarity import PhysicalParams, map_parameters
from frontflux.validation import pde_reference_run

CASES = ["n1_k0", "n2_k05"]


@pytest.fixture(scope="module")
def small_run():
    phys = PhysicalParams(2, 0.5)
    return phys, pde_solve(phys, PdeConfig(domain_length=2.0, nr=200))


@pytest.mark.parametrize("case", CASES)
def test_mass_balance(pde_runs, case):
    _, _, _, sol = pde_runs[case]
    assert mass_balance_error(sol, sol.phys) <= 5e-3


def test_mass_exact_for_constant_flux(pde_runs):
    # the imposed flux is constant for k = 0, so the time quadrature is exact
    _, _, _, sol = pde_runs["n1_k0"]
    assert mass_balance_error(sol, sol.phys) < 1e-10


@pytest.mark.parametrize("case", CASES)
def test_positive_from_zero_data(pde_runs, case):
    _, _, _, sol = pde_runs[case]
    assert np.all(sol.u_values >= 0)
    assert np.all(sol.u_values[:, 0] > 0)


def test_boundary_flux_is_imposed(small_run):
    phys, sol = small_run
    t = np.array([s.t for s in sol.history])
    flux = np.array([s.boundary_flux for s in sol.history])
    assert np.allclose(flux, -phys.q0 * t**phys.k, rtol=1e-14, atol=0)


@pytest.mark.parametrize("case", CASES)
def test_compact_support(pde_runs, case):
    sim, alpha, _, sol = pde_runs[case]
    for t in (0.25, 0.5, 1.0):
        u = sol.snapshot(t)
        ahead = sol.r_nodes > 1.1 * front_position(alpha, sim, t)
        assert np.all(u[ahead] <= 1e-8 * u.max())


@pytest.mark.parametrize("case", CASES)
def test_self_similar_collapse(pde_runs, case):
    _, _, shot, sol = pde_runs[case]
    for t in (0.25, 0.5, 1.0):
        assert compare_profiles(shot, rescaled_profile(sol, t)).l2_error <= 2e-2


def test_mass_error_first_order_in_dt():
    phys = PhysicalParams(2, 0.5)
    errs = []
    for scale in (1.0, 0.5):
        cfg = PdeConfig(domain_length=2.0, nr=200, dt_max=scale / 200, dt_relative_max=0.005 * scale)
        errs.append(mass_balance_error(pde_solve(phys, cfg), phys))
    assert errs[0] / errs[1] >= 1.7


@pytest.mark.parametrize("case", CASES)
def test_front_threshold_sensitivity(pde_runs, case):
    _, _, _, sol = pde_runs[case]
    peak = sol.snapshot(1.0).max()
    a = front_position_numeric(sol, 1.0, 1e-3 * peak)
    b = front_position_numeric(sol, 1.0, 1e-4 * peak)
    assert abs(a - b) < 2 * sol.config.h


@pytest.mark.parametrize("case", CASES)
def test_front_exponent(pde_runs, case):
    sim, _, _, sol = pde_runs[case]
    times = [t for t in sol.times if t >= 0.1]
    fronts = [front_position_numeric(sol, t, 1e-3 * sol.snapshot(t).max()) for t in times]
    slope = np.polyfit(np.log(times), np.log(fronts), 1)[0]
    assert abs(slope - sim.p) / sim.p <= 2e-2


def test_linear_case_front_position():
    phys = PhysicalParams(1, 1)
    sim, alpha, _, sol = pde_reference_run(phys, nr=400)
    assert alpha == pytest.approx(1.0, abs=1e-7)
    rf = front_position_numeric(sol, 1.0, 1e-3 * sol.snapshot(1.0).max())
    assert rf == pytest.approx(alpha / sim.B, rel=2e-2)


def test_front_escape():
    with pytest.raises(FrontEscapeError):
        pde_solve(PhysicalParams(1, 0), PdeConfig(domain_length=0.3, nr=100, t_end=1.0))


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(domain_length=0.0),
        dict(domain_length=1.0, nr=50),
        dict(domain_length=1.0, t_end=-1.0),
        dict(domain_length=1.0, theta_scheme=0.3),
        dict(domain_length=1.0, dt_initial=2.0),
        dict(domain_length=1.0, snapshot_times=(0.5, 3.0)),
        dict(domain_length=1.0, regularization_epsilon=-1.0),
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ParameterError):
        PdeConfig(**kwargs)


def test_default_snapshots():
    snaps = default_snapshots(2.0)
    assert snaps[0] == pytest.approx(0.2) and snaps[-1] == 2.0
    assert 0.5 in snaps and 1.0 in snaps


def test_snapshot_lookup(small_run):
    _, sol = small_run
    with pytest.raises(ParameterError):
        sol.snapshot(0.333)


def test_crank_nicolson_agrees(small_run):
    phys, implicit = small_run
    cn = pde_solve(phys, PdeConfig(domain_length=2.0, nr=200, theta_scheme=0.5))
    u1, u2 = implicit.snapshot(1.0), cn.snapshot(1.0)
    # pointwise differences concentrate at the front, so compare in L2
    assert np.linalg.norm(u1 - u2) / np.linalg.norm(u1) < 1e-2


def test_export(small_run):
    _, sol = small_run
    lines = sol.to_csv().splitlines()
    assert lines[0] == "t,r,u"
    assert len(lines) == 1 + sol.times.size * sol.r_nodes.size
    meta = json.loads(json.dumps(sol.metadata()))
    assert meta["steps"] == len(sol.history)
    assert meta["config"]["nr"] == 200


def test_mass_balance_rejects_divergent_energy():
    with pytest.raises(ParameterError):
        mass_balance_error(None, PhysicalParams(5, -1.0))
