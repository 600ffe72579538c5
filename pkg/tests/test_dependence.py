import math

import numpy as np
import pytest

from conftest import C, I, make_model
from mrfcopula.classes import BivariateClaytonParams, ErrorCode, ValidationFailure
from mrfcopula.core.dependence import (
    simdefault_analytic, simdefault_integral, simdefault_mc, spearman_archimedean,
    spearman_marshall_olkin, spearman_matrix, spearman_rho, spearman_rho_numeric
)
from mrfcopula.core.model import bivariate_params, factor_sets
from mrfcopula.core.sampler import sample_default_times, tie_frequency

MIXED_VALUE = 2.0 * math.log(2.0) - 1.0


def test_marshall_olkin_closed_form():
    params = BivariateClaytonParams.from_shares(0.5, 1.5, 0.5, 0.0)
    assert spearman_marshall_olkin(params) == pytest.approx(3.0 / 11.0, abs=1e-15)
    assert spearman_rho(params) == pytest.approx(3.0 / 11.0, abs=1e-10)


def test_clayton_closed_form():
    # exchangeable Clayton with theta = 1
    params = BivariateClaytonParams.from_shares(0.0, 0.0, 0.0, 1.0)
    expected = 4.0 * math.pi ** 2 - 39.0
    assert spearman_archimedean(params) == pytest.approx(expected, abs=1e-10)
    assert spearman_rho(params) == pytest.approx(expected, abs=1e-12)


def test_no_shared_factor_is_independent():
    params = BivariateClaytonParams.from_shares(1.5, 0.4, 0.0, 0.0)
    assert spearman_rho(params) == pytest.approx(0.0, abs=1e-14)


def test_shared_comonotone_only_is_comonotone():
    params = BivariateClaytonParams.from_shares(0.0, 0.0, 1.7, 0.0)
    assert spearman_rho(params) == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("gamma", [0.001, 0.05, 1.0])
def test_archimedean_form_for_pure_clayton(gamma):
    params = BivariateClaytonParams.from_shares(0.0, 0.0, 0.0, gamma)
    assert spearman_archimedean(params) == pytest.approx(spearman_rho(params), abs=1e-8)


def test_archimedean_form_agrees_with_series(random_params):
    rng = np.random.default_rng(13)
    for _ in range(50):
        params = random_params(rng, alpha=False)
        assert spearman_archimedean(params) == pytest.approx(spearman_rho(params), abs=1e-8)


def test_marshall_olkin_form_agrees_with_series(random_params):
    rng = np.random.default_rng(14)
    for _ in range(50):
        params = random_params(rng, gamma=False)
        assert spearman_marshall_olkin(params) == pytest.approx(spearman_rho(params), abs=1e-10)


def test_closed_form_preconditions(kink_params):
    with pytest.raises(ValidationFailure) as info:
        spearman_archimedean(kink_params)
    assert info.value.code is ErrorCode.PRECONDITION_VIOLATED
    with pytest.raises(ValidationFailure):
        spearman_marshall_olkin(kink_params)


@pytest.mark.parametrize("mix", [(1.0, 0.0), (0.7, 0.3), (0.2, 0.8)])
def test_rho_grows_with_shared_mass(mix):
    alpha, gamma = mix
    values = [
        spearman_rho(BivariateClaytonParams.from_shares(1.0 - t, 1.0 - t, alpha * t, gamma * t))
        for t in np.linspace(0.0, 1.0, 20)
    ]
    assert values[0] == pytest.approx(0.0, abs=1e-12)
    assert np.all(np.diff(values) > 0)
    if gamma == 0.0:
        assert values[-1] == pytest.approx(1.0, abs=1e-12)


def test_series_matches_quadrature(kink_params, interior_params):
    for params in (kink_params, interior_params):
        assert spearman_rho(params) == pytest.approx(spearman_rho_numeric(params), abs=1e-6)


def test_series_matches_quadrature_on_random_params(random_params):
    rng = np.random.default_rng(15)
    for _ in range(8):
        params = random_params(rng)
        assert spearman_rho(params) == pytest.approx(spearman_rho_numeric(params), abs=1e-6)


@pytest.mark.slow
def test_series_matches_quadrature_sweep(random_params):
    rng = np.random.default_rng(16)
    for _ in range(50):
        params = random_params(rng)
        assert spearman_rho(params) == pytest.approx(spearman_rho_numeric(params), abs=1e-6)


def test_quadrature_rejects_tight_tolerance(kink_params):
    with pytest.raises(ValidationFailure) as info:
        spearman_rho_numeric(kink_params, tolerance=1e-12)
    assert info.value.code is ErrorCode.INVALID_TOLERANCE


def test_spearman_matrix():
    model = make_model([(C, 0.6), (I, 0.5), (I, 3.0), (I, 0.3), (C, 1.0)],
                       [[1, 1, 1, 0, 0], [1, 1, 0, 1, 0], [0, 1, 0, 0, 1]])
    rho = spearman_matrix(model)
    assert np.allclose(np.diag(rho), 1.0)
    assert np.array_equal(rho, rho.T)
    assert rho[0, 1] == pytest.approx(spearman_rho(bivariate_params(model, 1, 2)), abs=1e-15)
    assert np.all((rho >= 0) & (rho <= 1))


def test_simultaneous_default_examples(mo_model, mixed_model):
    assert simdefault_analytic(mo_model, [1, 2]).value == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert simdefault_analytic(mixed_model, [1, 2]).value == pytest.approx(MIXED_VALUE, abs=1e-10)


def test_no_common_comonotone_factor_gives_zero():
    model = make_model([(I, 1.0), (C, 2.0), (C, 1.0)], [[1, 1, 0], [1, 0, 1]])
    assert simdefault_analytic(model, [1, 2]).value == 0.0
    assert simdefault_integral(model, [1, 2]).value == 0.0
    estimate = simdefault_mc(model, [1, 2], draws=1000, seed=4)
    assert (estimate.mean, estimate.std_error) == (0.0, 0.0)


def test_simultaneous_default_grows_with_common_shape():
    # component shapes stay at 2.5 and 2.0 while the common comonotone factor grows
    values = []
    for alpha in np.linspace(0.1, 1.4, 10):
        model = make_model([(C, alpha), (I, 0.5), (I, 2.0 - alpha), (I, 1.5 - alpha)],
                           [[1, 1, 1, 0], [1, 1, 0, 1]])
        assert model.agg_shape == pytest.approx((2.5, 2.0))
        values.append(simdefault_analytic(model, [1, 2]).value)
    assert np.all(np.diff(values) > 0)


def test_subset_too_small(mo_model):
    with pytest.raises(ValidationFailure) as info:
        simdefault_analytic(mo_model, [1])
    assert info.value.code is ErrorCode.SUBSET_TOO_SMALL


def test_restricted_cardinality_is_used():
    # the shared independent factor also hits component 3, which is outside the subset
    wide = make_model([(C, 1.0), (I, 1.0)], [[1, 1], [1, 1], [0, 1]])
    narrow = make_model([(C, 1.0), (I, 1.0)], [[1, 1], [1, 1]])
    assert factor_sets(wide, [1, 2]).restricted_cardinality[2] == 2
    assert simdefault_analytic(wide, [1, 2]).value == pytest.approx(
        simdefault_analytic(narrow, [1, 2]).value, abs=1e-14)


def test_mixing_law_matches_integral(random_model):
    rng = np.random.default_rng(17)
    checked = 0
    while checked < 40:
        model = random_model(rng, n_min=2)
        size = int(rng.integers(2, model.n + 1))
        subset = sorted(rng.choice(np.arange(1, model.n + 1), size=size, replace=False).tolist())
        analytic = simdefault_analytic(model, subset)
        integral = simdefault_integral(model, subset)
        assert analytic.value == pytest.approx(integral.value, abs=1e-9)
        assert analytic.error_bound <= 1e-11
        checked += 1


def test_monte_carlo_is_reproducible(mixed_model):
    first = simdefault_mc(mixed_model, [1, 2], draws=10_000, seed=8)
    second = simdefault_mc(mixed_model, [1, 2], draws=10_000, seed=8, threads=1)
    assert first.mean == second.mean
    assert first.std_error > 0


@pytest.mark.slow
@pytest.mark.parametrize("fixture, expected", [("mo_model", 1.0 / 3.0), ("mixed_model", MIXED_VALUE)])
def test_monte_carlo_named_cases(fixture, expected, request):
    model = request.getfixturevalue(fixture)
    estimate = simdefault_mc(model, [1, 2], draws=1_000_000, seed=101)
    assert abs(estimate.mean - expected) <= 3.0 * estimate.std_error
    ties = tie_frequency(sample_default_times(model, 1_000_000, seed=102), [1, 2])
    assert abs(ties.mean - expected) <= 3.0 * ties.std_error


@pytest.mark.slow
def test_monte_carlo_random_models(random_model):
    rng = np.random.default_rng(18)
    for case in range(20):
        model = random_model(rng, n_min=2, n_max=4, f_max=6)
        size = int(rng.integers(2, model.n + 1))
        subset = sorted(rng.choice(np.arange(1, model.n + 1), size=size, replace=False).tolist())
        analytic = simdefault_analytic(model, subset).value

        estimate = simdefault_mc(model, subset, draws=1_000_000, seed=200 + case)
        assert abs(estimate.mean - analytic) <= max(4.0 * estimate.std_error, 1e-12)

        ties = tie_frequency(sample_default_times(model, 1_000_000, seed=300 + case), subset)
        band = 4.0 * math.sqrt(analytic * (1 - analytic) / ties.draws)
        assert abs(ties.mean - analytic) <= max(band, 1e-12)
