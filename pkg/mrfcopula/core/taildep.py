"""
@fileoverview Lower tail dependence of bivariate MRF-Clayton margins: the
              classical diagonal indices, the maximal indices along the path
              of maximal dependence, the path itself and a log-log slope
              estimator used to check tail exponents numerically.
@filepath mrfcopula/core/taildep.py
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache, partial
from typing import List, Sequence, Tuple

import numpy as np
from scipy import optimize

from ..classes.errors import ErrorCode, ValidationFailure
from ..classes.portfolio.base_models import BivariateClaytonParams
from ..classes.portfolio.models import MaxDependencePoint, TailIndices
from ..classes.portfolio.types.enums import PathKind, Regime
from .copula import bivariate_cdf, bivariate_log_cdf

logger = logging.getLogger(__name__)

ROOT_WIDTH = 1e-14
MAX_ROOT_ITERATIONS = 200
MAX_GRID_LEVEL = 0.05
MIN_GRID_VALUE = 1e-8
MIN_GRID_POINTS = 5


def classical_indices(params: BivariateClaytonParams) -> Tuple[float, float, float]:
    """(lambda_L, chi_L, kappa_L) along the diagonal."""
    lam = 2.0 ** (-params.gamma_common) if params.xi_i_bar == 0 and params.xi_k_bar == 0 else 0.0
    c = params.xi_common
    chi = min(c / (params.xi_i + params.xi_i_bar), c / (params.xi_k + params.xi_k_bar))
    kappa = 2.0 - min(c / params.xi_i, c / params.xi_k)
    return lam, chi, kappa


def maximal_indices(params: BivariateClaytonParams) -> Tuple[float, float, float]:
    """(lambda*, chi*, kappa*) along the path of maximal dependence."""
    lam, _, _ = classical_indices(params)
    c = params.xi_common
    chi = c / (params.xi_i_bar + c + params.xi_k_bar)
    kappa = 2.0 * (1.0 - c / (params.xi_i_bar + 2 * c + params.xi_k_bar))
    return lam, chi, kappa


def tail_indices(params: BivariateClaytonParams) -> TailIndices:
    lam, chi, kappa = classical_indices(params)
    lam_star, chi_star, kappa_star = maximal_indices(params)
    return TailIndices(lambda_lower=lam, chi_lower=chi, kappa_lower=kappa,
                       lambda_star=lam_star, chi_star=chi_star, kappa_star=kappa_star)


@dataclass(frozen=True)
class _PathGeometry:
    """Params oriented so xi_i >= xi_k, with the slope constants of the upper segment."""
    params: BivariateClaytonParams
    swapped: bool
    delta_k: float


@lru_cache(maxsize=256)
def _geometry(params: BivariateClaytonParams) -> _PathGeometry:
    swapped = params.xi_i < params.xi_k
    p = params.swapped() if swapped else params
    delta_k = p.xi_i_bar / p.xi_i - (p.xi_k_bar + p.alpha_common) / p.xi_k
    return _PathGeometry(params=p, swapped=swapped, delta_k=delta_k)


def _zeta_sign(geo: _PathGeometry, log_x: float, log_u: float) -> float:
    """
    Sign of d log C(x, u^2/x) / d log x above the kink:
    (delta_k + gamma/xi_i) x^(-1/xi_i) + (delta_k - gamma/xi_k) y^(-1/xi_k) - delta_k,
    scaled by its largest exponential.
    """
    p = geo.params
    a = -log_x / p.xi_i
    b = -(2.0 * log_u - log_x) / p.xi_k
    top = max(a, b)
    return ((geo.delta_k + p.gamma_common / p.xi_i) * math.exp(a - top)
            + (geo.delta_k - p.gamma_common / p.xi_k) * math.exp(b - top)
            - geo.delta_k * math.exp(-top))


def maximal_path(params: BivariateClaytonParams, u: float) -> MaxDependencePoint:
    """
    Maximiser x* of C(x, u^2/x) over x in [u^2, 1].

    Oriented so that xi_i >= xi_k, the objective increases up to the kink
    x = u^(2 xi_i / (xi_i + xi_k)). If it decreases right after the kink the
    kink is the maximiser; otherwise the unique root of the slope on
    (kink, 1) is bracketed in log x and found with brentq. Without a shared
    factor the objective is flat and the diagonal is returned.

    Args:
        params: Bivariate parameters.
        u: Level in (0, 1).

    Returns:
        MaxDependencePoint: in the caller's (i, k) orientation.
    """
    if not 0 < u < 1:
        raise ValidationFailure(ErrorCode.DOMAIN_ERROR, f"level {u} not in (0, 1)", u=u)
    geo = _geometry(params)
    p = geo.params
    log_u = math.log(u)

    if p.xi_common == 0:
        return MaxDependencePoint(u=u, x_star=u, y_star=u, pi_star=u * u, regime=Regime.INDEPENDENT)

    log_kink = 2.0 * p.xi_i / (p.xi_i + p.xi_k) * log_u
    eta_kink = (geo.delta_k - p.alpha_common / p.xi_i) - geo.delta_k * math.exp(2.0 * log_u / (p.xi_i + p.xi_k))
    slope = partial(_zeta_sign, geo, log_u=log_u)
    if eta_kink <= 0 or slope(log_kink) <= 0:
        log_x, regime = log_kink, Regime.KINK
    elif slope(0.0) >= 0:
        log_x, regime = 0.0, Regime.INTERIOR_ROOT
    else:
        log_x = optimize.brentq(slope, log_kink, 0.0, xtol=ROOT_WIDTH, maxiter=MAX_ROOT_ITERATIONS)
        regime = Regime.INTERIOR_ROOT

    log_y = 2.0 * log_u - log_x
    pi_star = float(np.exp(bivariate_log_cdf(p, log_x, log_y)))
    if geo.swapped:
        log_x, log_y = log_y, log_x
    return MaxDependencePoint(u=u, x_star=math.exp(log_x), y_star=math.exp(log_y),
                              pi_star=pi_star, regime=regime)


def maximal_path_table(params: BivariateClaytonParams, levels: Sequence[float]) -> List[MaxDependencePoint]:
    return [maximal_path(params, float(u)) for u in levels]


def singularity_path(params: BivariateClaytonParams, u: float) -> Tuple[float, float]:
    """Point (u^(2 xi_i/(xi_i+xi_k)), u^(2 xi_k/(xi_i+xi_k))) on the kink curve with product u^2."""
    if not 0 < u < 1:
        raise ValidationFailure(ErrorCode.DOMAIN_ERROR, f"level {u} not in (0, 1)", u=u)
    total = params.xi_i + params.xi_k
    return u ** (2 * params.xi_i / total), u ** (2 * params.xi_k / total)


def dependence_gap(params: BivariateClaytonParams, x: float, u: float) -> float:
    """C(x, u^2/x) - u^2: excess over independence along the hyperbola through (u, u)."""
    if not u * u <= x <= 1:
        raise ValidationFailure(ErrorCode.DOMAIN_ERROR, f"x = {x} not in [u^2, 1]", x=x, u=u)
    return bivariate_cdf(params, x, u * u / x) - u * u


def _path_value(params: BivariateClaytonParams, path: PathKind, u: float) -> float:
    if path is PathKind.DIAGONAL:
        return bivariate_cdf(params, u, u)
    if path is PathKind.MAXIMAL:
        return maximal_path(params, u).pi_star
    return bivariate_cdf(params, *singularity_path(params, u))


def estimate_tail_exponent(params: BivariateClaytonParams, path: PathKind,
                           u_grid: Sequence[float]) -> float:
    """
    Least-squares slope of log Pi(u) against log u on a grid approaching 0.

    The grid must be strictly decreasing, lie in [1e-8, 0.05], hold at least
    five points and span two decades.
    """
    grid = np.asarray(u_grid, dtype=float)
    problems = []
    if grid.ndim != 1 or grid.size < MIN_GRID_POINTS:
        problems.append(f"need at least {MIN_GRID_POINTS} levels")
    elif np.any(np.diff(grid) >= 0):
        problems.append("levels must decrease strictly")
    elif grid.max() > MAX_GRID_LEVEL or grid.min() < MIN_GRID_VALUE:
        problems.append(f"levels must lie in [{MIN_GRID_VALUE}, {MAX_GRID_LEVEL}]")
    elif grid.max() / grid.min() < 100:
        problems.append("levels must span at least two decades")
    if problems:
        raise ValidationFailure(ErrorCode.DEGENERATE_GRID, "; ".join(problems), grid=grid.tolist())

    values = np.array([_path_value(params, PathKind(path), u) for u in grid])
    if np.any(values <= 0):
        raise ValidationFailure(ErrorCode.DEGENERATE_GRID, "path values underflow on the grid")
    slope = float(np.polyfit(np.log(grid), np.log(values), 1)[0])
    logger.debug(f"📈 [TAILDEP] {PathKind(path).value} slope {slope:.6f} over {grid.size} levels")
    return slope
