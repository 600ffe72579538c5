import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import integrate, stats

from mrfcopula.classes import ErrorCode, GammaComponent, NumericalFailure, ValidationFailure
from mrfcopula.core.gammaconv import convolution_pmf, expected_ratio


def components(*pairs):
    return [GammaComponent(shape=shape, rate=rate) for shape, rate in pairs]


def mixture_density(pmf, x):
    k = np.arange(pmf.truncation_k + 1)
    return float(np.sum(np.asarray(pmf.probs)
                        * stats.gamma.pdf(x, a=pmf.total_shape + k, scale=1.0 / pmf.sigma_max)))


def test_two_exponentials_give_geometric_weights():
    pmf = convolution_pmf(components((1.0, 1.0), (1.0, 2.0)))

    assert pmf.c_plus == pytest.approx(0.5)
    assert pmf.sigma_max == 2.0
    assert_allclose(pmf.probs[:10], [2.0 ** -(k + 1) for k in range(10)], rtol=1e-14)
    assert pmf.mass_deficit <= 1e-12


def test_equal_rates_collapse_to_single_gamma():
    pmf = convolution_pmf(components((0.4, 3.0), (1.1, 3.0), (2.0, 3.0)))
    assert pmf.probs == (1.0,)
    assert pmf.truncation_k == 0
    assert pmf.total_shape == pytest.approx(3.5)


def test_single_component():
    pmf = convolution_pmf(components((2.5, 0.7)))
    assert pmf.probs == (1.0,)
    assert pmf.deltas == (1.0,)


def test_weights_are_a_truncated_pmf():
    pmf = convolution_pmf(components((0.3, 0.2), (1.7, 1.0), (0.9, 4.0)), mass_tolerance=1e-10)
    probs = np.asarray(pmf.probs)
    assert np.all(probs >= 0)
    assert 1.0 - 1e-10 <= probs.sum() <= 1.0 + 1e-12
    assert_allclose(np.asarray(pmf.deltas) * pmf.c_plus, probs, rtol=1e-14)


def test_mixture_matches_closed_form_density():
    pmf = convolution_pmf(components((1.0, 1.0), (1.0, 2.0)))
    for x in np.linspace(0.05, 8.0, 20):
        expected = 2.0 * (math.exp(-x) - math.exp(-2.0 * x))
        assert mixture_density(pmf, x) == pytest.approx(expected, abs=1e-8)


def test_mixture_matches_numerical_convolution():
    first, second = (2.5, 0.8), (1.5, 2.0)
    pmf = convolution_pmf(components(first, second))

    def convolved(x):
        integrand = lambda s: (stats.gamma.pdf(s, a=first[0], scale=1 / first[1])
                               * stats.gamma.pdf(x - s, a=second[0], scale=1 / second[1]))
        return integrate.quad(integrand, 0.0, x, epsabs=1e-12, epsrel=1e-12)[0]

    for x in (0.3, 1.0, 2.5, 5.0, 9.0):
        assert mixture_density(pmf, x) == pytest.approx(convolved(x), abs=1e-8)


def test_scaling_all_rates_keeps_weights():
    base = convolution_pmf(components((0.6, 1.0), (1.4, 3.0)))
    scaled = convolution_pmf(components((0.6, 5.0), (1.4, 15.0)))
    assert_allclose(scaled.probs, base.probs, rtol=1e-12)
    assert scaled.sigma_max == pytest.approx(5.0 * base.sigma_max)


def test_invalid_tolerance():
    with pytest.raises(ValidationFailure) as info:
        convolution_pmf(components((1.0, 1.0)), mass_tolerance=0.0)
    assert info.value.code is ErrorCode.INVALID_TOLERANCE


def test_underflowing_leading_weight():
    with pytest.raises(NumericalFailure) as info:
        convolution_pmf(components((10.0, 1.0), (10.0, 1e-300)))
    assert info.value.code is ErrorCode.NO_CONVERGENCE


def test_term_cap():
    with pytest.raises(NumericalFailure) as info:
        convolution_pmf(components((1.0, 1.0), (1.0, 1e-3)), max_terms=10)
    assert info.value.code is ErrorCode.NO_CONVERGENCE


def test_expected_ratio_examples():
    pmf = convolution_pmf(components((1.0, 1.0), (1.0, 2.0)))
    assert expected_ratio(pmf, 0.0) == 0.0
    assert expected_ratio(pmf, 1.0) == pytest.approx(2.0 * math.log(2.0) - 1.0, abs=1e-12)

    single = convolution_pmf(components((3.0, 1.0)))
    assert expected_ratio(single, 1.0) == pytest.approx(1.0 / 3.0, abs=1e-15)


def test_expected_ratio_matches_simulation():
    # A ~ Gamma(0.8, 3) on the top rate is one of the summands of the pmf
    rng = np.random.default_rng(5)
    a = rng.gamma(0.8, 1.0 / 3.0, 400_000)
    y = rng.gamma(1.2, 1.0, 400_000) + rng.gamma(0.5, 1.0 / 3.0, 400_000)
    share = a / (a + y)

    pmf = convolution_pmf(components((0.8, 3.0), (1.2, 1.0), (0.5, 3.0)))
    tolerance = 4.0 * share.std() / math.sqrt(share.size)
    assert expected_ratio(pmf, 0.8) == pytest.approx(share.mean(), abs=tolerance)
