import math

import pytest

import infswitch as isw


def test_double_well_energy_and_force():
    model = isw.DoubleWellD(1)
    assert model.energy([1.0]) == pytest.approx(-0.25)
    assert model.energy([0.0]) == pytest.approx(1.0)
    assert model.force([0.0])[0] == pytest.approx(0.25)


def test_dimer_bond_distance_uses_minimum_image():
    params = isw.DimerParams()
    dimer = isw.DimerInSolvent(params)
    x = dimer.initial_configuration()
    assert dimer.bond_distance(x) == pytest.approx(4.4 / 4.0)
    assert isw.min_image_displacement([0.0, 0.0], [4.3, 0.0], 4.4)[0] == pytest.approx(0.1)


def test_weights_normalise():
    ladder = isw.TemperatureLadder.with_uniform_weights([2.0, 1.0])
    w = isw.weights(ladder, 1.0)
    assert sum(w) == pytest.approx(1.0)
    assert w[1] == pytest.approx(math.e / (1.0 + math.e))


def test_acceptance_probability():
    ladder = isw.TemperatureLadder.with_uniform_weights([2.0, 1.0])
    assert isw.acceptance_probability(ladder, 1.0, 0, 1) == 1.0
    assert isw.acceptance_probability(ladder, 1.0, 1, 0) == pytest.approx(math.exp(-1.0))


def test_overdamped_trajectory_is_deterministic():
    model = isw.DoubleWellD(1)
    ladder = isw.TemperatureLadder.with_uniform_weights([25.0, 12.5])
    params = isw.IntegratorParams()
    params.dt = 0.025
    params.nu = 1.0
    params.rng_seed = 5
    r1 = isw.run_overdamped([1.0], ladder, model, params, 500)
    r2 = isw.run_overdamped([1.0], ladder, model, params, 500)
    assert len(r1) == 501
    assert list(r1.energies) == list(r2.energies)
    assert list(r1.beta_indices) == list(r2.beta_indices)


def test_langevin_trajectory_records_observables():
    model = isw.DoubleWellD(1)
    ladder = isw.TemperatureLadder.with_uniform_weights([25.0, 12.5])
    params = isw.IntegratorParams()
    params.dt = 0.01
    record = isw.run_langevin([1.0], [0.0], ladder, model, params, 100,
                              observables=["x0", "p0"])
    assert len(record.column("p0")) == 101
    assert record.column("x0")[0] == 1.0


def test_batch_asymptotic_variance_hand_value():
    entries = isw.batch_asymptotic_variance([1.0, 2.0, 3.0, 4.0], [2])
    assert entries[0].av == pytest.approx(8.0)
    assert entries[0].n_batches == 2


def test_reweighted_average_plain_mean():
    values = [1.0, 2.0, 3.0, 4.0]
    result = isw.reweighted_average(values, [1.0] * 4, n_batches=2)
    assert result.estimate == pytest.approx(2.5)


def test_quadrature_gaussian_factor():
    ladder = isw.TemperatureLadder.with_uniform_weights([1.0])
    r1 = isw.quadrature_reference(isw.DoubleWellD(1), ladder)
    r2 = isw.quadrature_reference(isw.DoubleWellD(2), ladder)
    assert r2.Z[0] / r1.Z[0] == pytest.approx(math.sqrt(2.0 * math.pi))


def test_rate_functional_vanishes_at_equilibrium():
    model = isw.DoubleWellD(1)
    ladder = isw.TemperatureLadder.with_uniform_weights([25.0, 12.5])
    mu = isw.equilibrium_density(ladder, model, -4.0, 4.0, 801)
    theta = isw.theta_from_density(mu, ladder, model)
    assert isw.rate_I(theta, mu, ladder, model, 10.0) < 1e-10


def test_errors_translate_to_python():
    with pytest.raises(ValueError):
        isw.DoubleWellD(0)
    with pytest.raises(ValueError):
        isw.TemperatureLadder([1.0, 2.0], [0.0, 0.0])
