import math

import numpy as np
import pytest

from mrfcopula.classes import BivariateClaytonParams, ErrorCode, PathKind, Regime, ValidationFailure
from mrfcopula.core.copula import bivariate_cdf, bivariate_log_cdf
from mrfcopula.core.taildep import (
    classical_indices, dependence_gap, estimate_tail_exponent, maximal_indices, maximal_path,
    maximal_path_table, singularity_path, tail_indices
)

SLOPE_GRID = np.geomspace(1e-2, 1e-6, 9)
DEEP_GRID = np.geomspace(1e-6, 1e-8, 5)


def grid_maximum(params, u, points=100_000):
    log_u = math.log(u)
    log_x = np.linspace(2.0 * log_u, 0.0, points)
    return float(np.exp(bivariate_log_cdf(params, log_x, 2.0 * log_u - log_x)).max())


def test_kink_pair_indices(kink_params):
    indices = tail_indices(kink_params)
    assert indices.lambda_lower == 0.0
    assert indices.lambda_star == 0.0
    assert indices.chi_lower == pytest.approx(1.1 / 7.1, abs=1e-12)
    assert indices.kappa_lower == pytest.approx(2.0 - 1.1 / 4.1, abs=1e-12)
    assert indices.kappa_lower == pytest.approx(1.73171, abs=1e-5)
    assert indices.chi_star == pytest.approx(0.25, abs=1e-12)
    assert indices.kappa_star == pytest.approx(1.6, abs=1e-12)


def test_marshall_olkin_indices():
    params = BivariateClaytonParams.from_shares(0.5, 1.5, 0.5, 0.0)
    _, _, kappa = classical_indices(params)
    _, _, kappa_star = maximal_indices(params)
    assert kappa == pytest.approx(1.75, abs=1e-12)
    assert kappa_star == pytest.approx(2.0 - 1.0 / 3.0, abs=1e-12)


def test_strong_tail_dependence_without_idiosyncratic_parts():
    params = BivariateClaytonParams.from_shares(0.0, 0.0, 0.3, 1.0)
    lam, chi, kappa = classical_indices(params)
    assert lam == pytest.approx(2.0 ** -1.0)
    assert chi == pytest.approx(1.0)
    assert kappa == pytest.approx(1.0)


def test_index_identities_on_random_params(random_params):
    rng = np.random.default_rng(21)
    for _ in range(200):
        params = random_params(rng)
        indices = tail_indices(params)
        assert indices.chi_lower == pytest.approx(2.0 / indices.kappa_lower - 1.0, abs=1e-12)
        assert indices.chi_star == pytest.approx(2.0 / indices.kappa_star - 1.0, abs=1e-12)
        assert indices.kappa_star <= indices.kappa_lower + 1e-12
        assert indices.chi_star >= indices.chi_lower - 1e-12


def test_exchangeable_indices_coincide():
    params = BivariateClaytonParams.from_shares(0.8, 0.8, 0.4, 0.6)
    indices = tail_indices(params)
    assert indices.kappa_star == pytest.approx(indices.kappa_lower, abs=1e-14)
    assert indices.chi_star == pytest.approx(indices.chi_lower, abs=1e-14)


def test_exchangeable_path_is_diagonal():
    params = BivariateClaytonParams.from_shares(0.8, 0.8, 0.4, 0.6)
    for u in (0.3, 0.01, 1e-5):
        point = maximal_path(params, u)
        assert point.x_star == pytest.approx(u, rel=1e-12)
        assert point.y_star == pytest.approx(u, rel=1e-12)
        assert point.regime is Regime.KINK


def test_marshall_olkin_path_is_the_kink(random_params):
    rng = np.random.default_rng(22)
    for _ in range(50):
        params = random_params(rng, gamma=False)
        total = params.xi_i + params.xi_k
        for u in (0.1, 0.01, 0.001):
            point = maximal_path(params, u)
            assert point.regime is Regime.KINK
            assert point.x_star == pytest.approx(u ** (2 * params.xi_i / total), rel=1e-12)


def test_interior_pair_has_interior_root(interior_params):
    point = maximal_path(interior_params, 0.01)
    assert point.regime is Regime.INTERIOR_ROOT
    assert point.pi_star >= grid_maximum(interior_params, 0.01) - 1e-9


def test_interior_root_sits_on_the_grid_maximum(interior_params):
    u, points = 0.01, 100_000
    log_u = math.log(u)
    log_x = np.linspace(2.0 * log_u, 0.0, points)
    values = np.exp(bivariate_log_cdf(interior_params, log_x, 2.0 * log_u - log_x))
    cell = log_x[1] - log_x[0]

    point = maximal_path(interior_params, u)
    assert point.regime is Regime.INTERIOR_ROOT
    assert abs(math.log(point.x_star) - log_x[values.argmax()]) <= cell * (1 + 1e-9)
    assert point.pi_star == pytest.approx(values.max(), rel=1e-9)


@pytest.mark.parametrize("fixture", ["kink_params", "interior_params"])
def test_maximiser_falls_with_the_level(fixture, request):
    params = request.getfixturevalue(fixture)
    levels = np.geomspace(1e-3, 1e-8, 11)
    path = maximal_path_table(params, levels)
    x_star = np.array([p.x_star for p in path])
    y_star = np.array([p.y_star for p in path])
    assert np.all(np.diff(x_star) < 0)
    assert np.all(np.diff(y_star) < 0)
    assert x_star[-1] < 1e-10
    assert y_star[-1] < 1e-2


def test_no_shared_factor_returns_diagonal():
    params = BivariateClaytonParams.from_shares(1.0, 2.0, 0.0, 0.0)
    point = maximal_path(params, 0.2)
    assert point.regime is Regime.INDEPENDENT
    assert point.pi_star == pytest.approx(0.04)


def test_path_beats_grid_search(random_params):
    rng = np.random.default_rng(23)
    for _ in range(100):
        params = random_params(rng)
        for u in (0.1, 0.01, 0.001):
            point = maximal_path(params, u)
            assert point.pi_star >= grid_maximum(params, u) - 1e-9
            assert point.x_star * point.y_star == pytest.approx(u * u, rel=1e-12)
            assert point.pi_star == pytest.approx(bivariate_cdf(params, point.x_star, point.y_star), rel=1e-10)


def test_path_respects_orientation(kink_params):
    point = maximal_path(kink_params, 0.05)
    mirrored = maximal_path(kink_params.swapped(), 0.05)
    assert point.x_star == pytest.approx(mirrored.y_star, rel=1e-12)
    assert point.pi_star == pytest.approx(mirrored.pi_star, rel=1e-12)


def test_path_table_is_monotone(kink_params):
    levels = np.linspace(0.01, 0.9, 30)
    table = maximal_path_table(kink_params, levels)
    assert [p.u for p in table] == pytest.approx(levels.tolist())
    assert np.all(np.diff([p.pi_star for p in table]) > 0)


def test_maximal_path_dominates_diagonal(kink_params, interior_params):
    for params in (kink_params, interior_params):
        for u in (0.2, 0.02, 0.002):
            point = maximal_path(params, u)
            assert dependence_gap(params, point.x_star, u) >= dependence_gap(params, u, u) - 1e-15
            assert dependence_gap(params, u, u) >= 0.0


def test_singularity_path_lies_on_the_hyperbola(kink_params):
    x, y = singularity_path(kink_params, 0.03)
    assert x * y == pytest.approx(0.03 ** 2, rel=1e-14)
    assert x < y


@pytest.mark.parametrize("u", [0.0, 1.0, -0.5])
def test_level_outside_unit_interval(u, kink_params):
    with pytest.raises(ValidationFailure) as info:
        maximal_path(kink_params, u)
    assert info.value.code is ErrorCode.DOMAIN_ERROR


def test_gap_rejects_point_off_the_hyperbola(kink_params):
    with pytest.raises(ValidationFailure):
        dependence_gap(kink_params, 0.001, 0.1)


def test_product_slope_is_two():
    params = BivariateClaytonParams.from_shares(1.3, 0.4, 0.0, 0.0)
    assert estimate_tail_exponent(params, PathKind.DIAGONAL, SLOPE_GRID) == pytest.approx(2.0, abs=1e-9)


def test_kink_pair_slopes(kink_params):
    diagonal = estimate_tail_exponent(kink_params, PathKind.DIAGONAL, SLOPE_GRID)
    maximal = estimate_tail_exponent(kink_params, PathKind.MAXIMAL, SLOPE_GRID)
    assert diagonal == pytest.approx(1.7317, abs=0.01)
    assert maximal == pytest.approx(1.6, abs=0.01)


def test_diagonal_slopes_on_random_params(random_params):
    rng = np.random.default_rng(24)
    checked = 0
    while checked < 30:
        params = random_params(rng)
        if abs(1.0 / params.xi_k - 1.0 / params.xi_i) < 0.5:
            continue
        slope = estimate_tail_exponent(params, PathKind.DIAGONAL, DEEP_GRID)
        assert slope == pytest.approx(classical_indices(params)[2], abs=0.01)
        checked += 1


def test_maximal_slopes_in_kink_regime(random_params):
    rng = np.random.default_rng(25)
    checked = 0
    while checked < 30:
        params = random_params(rng)
        if params.xi_i + params.xi_k > 4.0:
            continue
        if any(maximal_path(params, u).regime is not Regime.KINK for u in DEEP_GRID):
            continue
        slope = estimate_tail_exponent(params, PathKind.MAXIMAL, DEEP_GRID)
        assert slope == pytest.approx(maximal_indices(params)[2], abs=0.01)
        checked += 1


@pytest.mark.parametrize("grid", [
    [1e-2, 1e-3, 1e-4, 1e-5],
    [1e-6, 1e-5, 1e-4, 1e-3, 1e-2],
    [0.5, 0.1, 0.01, 0.001, 0.0001],
    [0.01, 0.008, 0.006, 0.004, 0.002],
    [1e-6, 1e-7, 1e-8, 1e-9, 1e-10],
])
def test_degenerate_grids(grid, kink_params):
    with pytest.raises(ValidationFailure) as info:
        estimate_tail_exponent(kink_params, PathKind.DIAGONAL, grid)
    assert info.value.code is ErrorCode.DEGENERATE_GRID


def test_singularity_path_slope_matches_maximal_in_kink_regime(kink_params):
    slope = estimate_tail_exponent(kink_params, PathKind.SINGULARITY, SLOPE_GRID)
    assert slope == pytest.approx(1.6, abs=0.01)
