"""
@fileoverview Dependence measures of the MRF-Clayton model: Spearman's rho in
              series form, by quadrature and in the Marshall-Olkin and
              Archimedean closed forms, and probabilities of simultaneous
              default in mixing-law, integral and Monte Carlo form.
@filepath mrfcopula/core/dependence.py
"""

import logging
import math
import warnings
from typing import Optional, Sequence

import numpy as np
from scipy import integrate

from ..classes.errors import ErrorCode, NumericalFailure, ValidationFailure
from ..classes.portfolio.base_models import BivariateClaytonParams, MRFModel
from ..classes.portfolio.models import (
    GammaComponent, HypergeometricSpec, MonteCarloEstimate, SimultaneousDefault
)
from .copula import bivariate_cdf
from .gammaconv import DEFAULT_MASS_TOLERANCE, convolution_pmf, expected_ratio
from .model import bivariate_params, factor_sets
from .sampler import run_chunked
from .specfun import hyp_pfq

logger = logging.getLogger(__name__)

DEFAULT_HYP_TOLERANCE = 1e-13
DEFAULT_QUAD_TOLERANCE = 1e-10
RHO_SLACK = 1e-10


def spearman_rho(params: BivariateClaytonParams,
                 tolerance: float = DEFAULT_HYP_TOLERANCE) -> float:
    """
    Spearman's rho of a bivariate MRF-Clayton margin.

    With b = 2 xi_i + 2 xi_k - xi_common and
    h(x) = 3F2(2x, 1, gamma; 2x + 1, b + 1; -1),
    rho = (6 / b) (xi_k h(xi_i) + xi_i h(xi_k)) - 3.

    Args:
        params: Bivariate parameters.
        tolerance: Relative tolerance of each series.

    Returns:
        float: rho in [0, 1].
    """
    b = 2 * params.xi_i + 2 * params.xi_k - params.xi_common

    def h(x: float) -> float:
        spec = HypergeometricSpec(
            numerator_params=(2 * x, 1.0, params.gamma_common),
            denominator_params=(2 * x + 1, b + 1),
            argument=-1.0,
            tolerance=tolerance,
        )
        return hyp_pfq(spec, accelerate=True)

    rho = 6.0 / b * (params.xi_k * h(params.xi_i) + params.xi_i * h(params.xi_k)) - 3.0
    if not -RHO_SLACK <= rho <= 1 + RHO_SLACK:
        raise NumericalFailure(ErrorCode.NO_CONVERGENCE,
                               f"series value of rho {rho} outside [0, 1]", rho=rho)
    return min(max(rho, 0.0), 1.0)


def _quad_failure(message: str, **context) -> NumericalFailure:
    return NumericalFailure(ErrorCode.QUADRATURE_FAILURE, message, **context)


def spearman_rho_numeric(params: BivariateClaytonParams,
                         tolerance: float = DEFAULT_QUAD_TOLERANCE) -> float:
    """
    12 * integral of C over the unit square - 3, by nested adaptive quadrature.

    The inner integral is split along u = v^(xi_i / xi_k), where the
    comonotone part of C has its kink.
    """
    if tolerance < DEFAULT_QUAD_TOLERANCE:
        raise ValidationFailure(ErrorCode.INVALID_TOLERANCE,
                                f"quadrature tolerance {tolerance} below {DEFAULT_QUAD_TOLERANCE}")
    exponent = params.xi_i / params.xi_k

    def integrand(u: float, v: float) -> float:
        return bivariate_cdf(params, min(max(u, 0.0), 1.0), v)

    def kink(v: float) -> float:
        return v ** exponent

    total = 0.0
    error = 0.0
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        for lower, upper in ((lambda v: 0.0, kink), (kink, lambda v: 1.0)):
            value, abserr = integrate.dblquad(integrand, 0.0, 1.0, lower, upper,
                                              epsabs=tolerance, epsrel=tolerance)
            total += value
            error += abserr
    if caught and error > 1e3 * tolerance:
        raise _quad_failure(f"quadrature error estimate {error:.3g} exceeds tolerance",
                            error=error, warnings=[str(w.message) for w in caught])
    return 12.0 * total - 3.0


def spearman_archimedean(params: BivariateClaytonParams,
                         tolerance: float = DEFAULT_HYP_TOLERANCE) -> float:
    """rho = 3 (3F2(1, 1, gamma; 2 xi_i + 1, 2 xi_k + 1; 1) - 1) when no shared comonotone factor."""
    if params.alpha_common != 0:
        raise ValidationFailure(ErrorCode.PRECONDITION_VIOLATED,
                                "closed form needs alpha_common = 0",
                                alpha_common=params.alpha_common)
    spec = HypergeometricSpec(
        numerator_params=(1.0, 1.0, params.gamma_common),
        denominator_params=(2 * params.xi_i + 1, 2 * params.xi_k + 1),
        argument=1.0,
        tolerance=tolerance,
    )
    return 3.0 * (hyp_pfq(spec, accelerate=True) - 1.0)


def spearman_marshall_olkin(params: BivariateClaytonParams) -> float:
    """rho = 3 alpha / (2 xi_i + 2 xi_k - alpha) when no shared independent factor."""
    if params.gamma_common != 0:
        raise ValidationFailure(ErrorCode.PRECONDITION_VIOLATED,
                                "closed form needs gamma_common = 0",
                                gamma_common=params.gamma_common)
    alpha = params.alpha_common
    return 3.0 * alpha / (2 * params.xi_i + 2 * params.xi_k - alpha)


def spearman_matrix(model: MRFModel, tolerance: float = DEFAULT_HYP_TOLERANCE) -> np.ndarray:
    """Pairwise Spearman's rho of all components; unit diagonal."""
    rho = np.eye(model.n)
    for i in range(1, model.n + 1):
        for k in range(i + 1, model.n + 1):
            rho[i - 1, k - 1] = rho[k - 1, i - 1] = spearman_rho(bivariate_params(model, i, k), tolerance)
    return rho


def _subset_sets(model: MRFModel, subset: Sequence[int]):
    subset = list(subset)
    if len(subset) < 2:
        raise ValidationFailure(ErrorCode.SUBSET_TOO_SMALL,
                                "simultaneous default needs at least two components",
                                subset=subset)
    return factor_sets(model, subset)


def simdefault_analytic(model: MRFModel, subset: Sequence[int],
                        mass_tolerance: float = DEFAULT_MASS_TOLERANCE) -> SimultaneousDefault:
    """
    P(all components of subset default at the same instant).

    Gamma components: (xi_j, rate 1) for each comonotone factor hitting the
    subset and (xi_j, rate 1 / r_j) for each independent one, r_j being the
    number of subset components it hits. The probability is the expected
    share of the comonotone factors common to the whole subset.
    """
    sets = _subset_sets(model, subset)
    alpha = math.fsum(model.shape(j) for j in sets.rf_common_l)
    if alpha == 0:
        return SimultaneousDefault(value=0.0, error_bound=0.0, method="analytic")

    components = [GammaComponent(shape=model.shape(j), rate=1.0) for j in sorted(sets.rf_all_l)]
    components += [
        GammaComponent(shape=model.shape(j), rate=1.0 / sets.restricted_cardinality[j])
        for j in sorted(sets.rf_all_m)
    ]
    pmf = convolution_pmf(components, mass_tolerance=mass_tolerance)
    value = expected_ratio(pmf, alpha)
    logger.debug(f"🔧 [DEPENDENCE] simultaneous default of {list(subset)}: {value:.12g} (K={pmf.truncation_k})")
    return SimultaneousDefault(value=value, error_bound=pmf.tail_bound(alpha), method="analytic")


def simdefault_integral(model: MRFModel, subset: Sequence[int],
                        tolerance: float = DEFAULT_QUAD_TOLERANCE) -> SimultaneousDefault:
    """
    Simultaneous default as a single integral over t in [0, inf):
    alpha (1 + t)^(-alpha - 1) prod_{other comonotone j} (1 + t)^(-xi_j)
    prod_{independent j} (1 + r_j t)^(-xi_j).
    """
    sets = _subset_sets(model, subset)
    alpha = math.fsum(model.shape(j) for j in sets.rf_common_l)
    if alpha == 0:
        return SimultaneousDefault(value=0.0, error_bound=0.0, method="integral")
    rest = math.fsum(model.shape(j) for j in sets.rf_rest_l)
    independent = [(model.shape(j), sets.restricted_cardinality[j]) for j in sorted(sets.rf_all_m)]

    def integrand(t: float) -> float:
        log_f = math.log(alpha) - (alpha + 1 + rest) * math.log1p(t)
        for shape, r in independent:
            log_f -= shape * math.log1p(r * t)
        return math.exp(log_f)

    value, abserr = integrate.quad(integrand, 0.0, math.inf, epsabs=tolerance, epsrel=tolerance, limit=200)
    if abserr > 1e3 * tolerance * max(1.0, value):
        raise _quad_failure(f"integral error estimate {abserr:.3g} exceeds tolerance", error=abserr)
    return SimultaneousDefault(value=value, error_bound=abserr, method="integral")


def simdefault_mc(model: MRFModel, subset: Sequence[int], draws: int, seed: int,
                  threads: Optional[int] = None) -> MonteCarloEstimate:
    """
    Monte Carlo mean of sum_{common comonotone} Lambda_j divided by
    sum_{comonotone in union} Lambda_j + sum_{independent in union} r_j Lambda_j.
    """
    sets = _subset_sets(model, subset)
    common = sorted(sets.rf_common_l)
    union_l = sorted(sets.rf_all_l)
    union_m = sorted(sets.rf_all_m)
    factors = union_l + union_m
    shapes = np.array([model.shape(j) for j in factors])
    weights = np.array([1.0] * len(union_l) + [float(sets.restricted_cardinality[j]) for j in union_m])
    numerator = np.array([j in sets.rf_common_l for j in factors], dtype=float)

    if not common:
        return MonteCarloEstimate(mean=0.0, std_error=0.0, draws=draws, seed=seed)

    def draw(rng: np.random.Generator, size: int) -> np.ndarray:
        intensity = rng.standard_gamma(shapes, size=(size, shapes.size))
        with np.errstate(invalid="ignore"):
            share = (intensity @ numerator) / (intensity @ weights)
        return np.nan_to_num(share, nan=0.0)[:, None]

    ratios = run_chunked(draws, seed, draw, threads)[:, 0]
    std_error = float(ratios.std(ddof=1) / math.sqrt(draws)) if draws > 1 else 0.0
    logger.info(f"🎲 [DEPENDENCE] simultaneous default MC over {draws} draws: {ratios.mean():.6g} ± {std_error:.2g}")
    return MonteCarloEstimate(mean=float(ratios.mean()), std_error=std_error, draws=draws, seed=seed)
