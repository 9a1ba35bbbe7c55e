"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import levyexp as lx


@pytest.fixture(scope="module")
def setup():
    return lx.assemble_problem(lx.fhn_preset())


def test_preset_rates(setup):
    assert setup.omega == pytest.approx(1.0, abs=1e-8)
    assert setup.eta == pytest.approx(0.25, abs=1e-12)
    assert setup.gap > 0.0


def test_operator_assembly_matches_block_structure():
    grid = lx.SpatialGrid(8)
    a0 = lx.assemble_diffusion_operator(grid, lambda x: 1.0)
    const = np.ones(8)
    assert np.max(np.abs(a0 @ const)) == 0.0

    a = lx.assemble_fhn_operator(grid, lambda x: 1.0, lambda x: 1.0, 2.0, 0.5)
    assert a.shape == (16, 16)
    assert np.allclose(a[8:, :8], 2.0 * np.eye(8))
    assert np.allclose(a[8:, 8:], -0.5 * np.eye(8))


def test_sampler_determinism(setup):
    seed = lx.derive_stream_seed(42, 3)
    a = lx.sample_path(setup.noise, 0.5, seed)
    b = lx.sample_path(setup.noise, 0.5, seed)
    assert a.jump_times == b.jump_times
    assert lx.derive_stream_seed(42, 3, 0) == lx.derive_stream_seed(42, 3, 9)


def test_deterministic_decay(setup):
    phi = lx.solve_deterministic(
        setup.bundle, setup.drift, setup.u0, setup.config.horizon
    )
    layout = setup.layout
    initial = layout.norm(setup.u0)
    for m in (0, 100, 250, 500):
        bound = math.exp(-setup.gap * phi.times[m]) * initial + 1e-8
        assert layout.norm(phi.states[:, m]) <= bound


def test_expansion_and_remainder(setup):
    seed = lx.derive_stream_seed(setup.config.master_seed, 1)
    path = lx.sample_path(setup.noise, setup.config.horizon, seed)
    expansion = lx.expand(
        setup.bundle, setup.drift, setup.covariance, setup.u0, path, 1
    )
    u_eps = lx.solve_sde(
        setup.bundle, setup.drift, setup.covariance, 0.0, setup.u0, path
    )
    rem = lx.remainder(u_eps, expansion, 0.0)
    assert np.max(np.abs(rem.states)) == 0.0


def test_order_fit_exact_power_law():
    eps = [0.2, 0.1, 0.05, 0.025]
    values = [0.3 * e**4 for e in eps]
    fit = lx.fit_order(eps, values)
    assert fit.slope == pytest.approx(4.0, abs=1e-10)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-10)


def test_small_order_study(setup):
    config = lx.OrderStudyConfig()
    config.epsilons = [0.2, 0.1, 0.05]
    config.order = 1
    config.moment_p = 2
    config.paths = 30
    config.horizon = setup.config.horizon
    config.master_seed = 42
    config.threads = 2
    result = lx.run_order_study(
        setup.bundle, setup.drift, setup.covariance, setup.noise, setup.u0, config
    )
    block = result.block(1)
    assert 1.5 < block.sup_fit.slope < 2.5
    assert block.shrink_violation_fraction <= 0.05


def test_validation_suite(setup):
    report = lx.run_validation(setup, 7)
    assert report.all_passed()
