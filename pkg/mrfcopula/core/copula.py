"""
@fileoverview Evaluation of the MRF-Clayton copula: marginal and joint
              survival functions, the n-variate and bivariate copula cdf,
              special-case classification and the general Laplace-transform
              form of the copula.
@filepath mrfcopula/core/copula.py
"""

import logging
import math
from typing import Callable, Protocol, Sequence, Tuple

import numpy as np

from ..classes.errors import ErrorCode, ValidationFailure
from ..classes.portfolio.base_models import BivariateClaytonParams, MRFModel
from ..classes.portfolio.types.enums import FactorKind, SpecialCase

logger = logging.getLogger(__name__)


class LaplaceTransform(Protocol):
    """A Laplace transform psi of a positive random variable and its inverse."""

    def __call__(self, x: float) -> float: ...

    def inverse(self, y: float) -> float: ...


class GammaLaplace:
    """Laplace transform (1 + x)^(-shape) of a unit-rate gamma variable."""

    def __init__(self, shape: float) -> None:
        self.shape = shape

    def __call__(self, x: float) -> float:
        if math.isinf(x):
            return 0.0
        return math.exp(-self.shape * math.log1p(x))

    def inverse(self, y: float) -> float:
        if y == 0.0:
            return math.inf
        return math.expm1(-math.log(y) / self.shape)


def _check_component(model: MRFModel, i: int) -> None:
    if not 1 <= i <= model.n:
        raise ValidationFailure(ErrorCode.INDEX_OUT_OF_RANGE,
                                f"component index {i} not in 1..{model.n}", index=i)


def _check_point(model: MRFModel, point: Sequence[float]) -> np.ndarray:
    u = np.asarray(point, dtype=float)
    if u.ndim != 1 or u.size != model.n:
        raise ValidationFailure(ErrorCode.DIMENSION_MISMATCH,
                                f"point has {u.size} coordinates, model has {model.n}")
    if np.any(~np.isfinite(u)) or np.any(u < 0) or np.any(u > 1):
        raise ValidationFailure(ErrorCode.COORDINATE_OUT_OF_RANGE,
                                "copula coordinates must lie in [0, 1]", point=u.tolist())
    return u


def marginal_survival(model: MRFModel, i: int, t: float) -> float:
    """S_i(t) = (1 + t)^(-xi_{c,i})."""
    _check_component(model, i)
    if t < 0:
        raise ValidationFailure(ErrorCode.NEGATIVE_TIME, f"time {t} is negative", time=t)
    return GammaLaplace(model.agg_shape[i - 1])(t)


def marginal_survival_inverse(model: MRFModel, i: int, u: float) -> float:
    """Inverse of S_i; +inf at u = 0."""
    _check_component(model, i)
    if not 0 <= u <= 1:
        raise ValidationFailure(ErrorCode.DOMAIN_ERROR, f"{u} is not a probability", value=u)
    return GammaLaplace(model.agg_shape[i - 1]).inverse(u)


def _factor_columns(model: MRFModel):
    """(factor shape, kind, zero-based component indices) for every non-inert factor."""
    for factor, rc in zip(model.factors, model.rc_sets):
        if rc:
            yield factor.shape, factor.kind, np.array(sorted(rc)) - 1


def copula_cdf_many(model: MRFModel, points: np.ndarray) -> np.ndarray:
    """
    Copula cdf at every row of a (count x n) array, evaluated in log space.

    Rows with a zero coordinate evaluate to exactly 0.
    """
    u = np.atleast_2d(np.asarray(points, dtype=float))
    xi_c = np.asarray(model.agg_shape)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        log_u = np.log(u)
        scaled = log_u / xi_c  # log of u_i^(1/xi_{c,i})
        log_c = np.zeros(u.shape[0])
        for shape, kind, columns in _factor_columns(model):
            if kind is FactorKind.COMONOTONE:
                log_c += shape * scaled[:, columns].min(axis=1)
            else:
                excess = np.expm1(-scaled[:, columns]).sum(axis=1)
                log_c -= shape * np.log1p(excess)
        values = np.exp(log_c)
    values[np.any(u == 0.0, axis=1)] = 0.0
    return values


def copula_cdf(model: MRFModel, point: Sequence[float]) -> float:
    """
    C(u) = prod_{l} min_i u_i^(xi_j / xi_{c,i})
           * prod_{m} (1 + sum_i (u_i^(-1/xi_{c,i}) - 1))^(-xi_j).

    Args:
        model: The MRF model.
        point: Coordinates in [0, 1]^n.

    Returns:
        float: The copula value.
    """
    u = _check_point(model, point)
    if np.any(u == 0.0):
        return 0.0
    return float(copula_cdf_many(model, u[None, :])[0])


def joint_survival(model: MRFModel, times: Sequence[float]) -> float:
    """P(tau_1 > t_1, ..., tau_n > t_n) under the linear-intensity model."""
    t = np.asarray(times, dtype=float)
    if t.ndim != 1 or t.size != model.n:
        raise ValidationFailure(ErrorCode.DIMENSION_MISMATCH,
                                f"{t.size} times given, model has {model.n} components")
    if np.any(t < 0):
        raise ValidationFailure(ErrorCode.NEGATIVE_TIME, "times must be non-negative",
                                times=t.tolist())
    log_s = 0.0
    for shape, kind, columns in _factor_columns(model):
        exposure = t[columns].max() if kind is FactorKind.COMONOTONE else t[columns].sum()
        log_s -= shape * math.log1p(exposure)
    return math.exp(log_s)


def bivariate_log_cdf(params: BivariateClaytonParams, log_u, log_v):
    """
    log C(u, v) of the bivariate MRF-Clayton copula for log-coordinates.

    Vectorized over numpy arrays; stable for coordinates down to the
    smallest positive double.
    """
    log_u = np.asarray(log_u, dtype=float)
    log_v = np.asarray(log_v, dtype=float)
    a = -log_u / params.xi_i
    b = -log_v / params.xi_k
    top = np.maximum(a, b)
    # log(u^(-1/xi_i) + v^(-1/xi_k) - 1)
    log_bracket = top + np.log(np.exp(a - top) + np.exp(b - top) - np.exp(-top))
    return (
        params.xi_i_bar / params.xi_i * log_u
        + params.xi_k_bar / params.xi_k * log_v
        - params.alpha_common * top
        - params.gamma_common * log_bracket
    )


def bivariate_cdf(params: BivariateClaytonParams, u: float, v: float) -> float:
    """
    Closed form of the bivariate margin:
    u^(xi_i_bar/xi_i) v^(xi_k_bar/xi_k) min(u^(alpha/xi_i), v^(alpha/xi_k))
    (u^(-1/xi_i) + v^(-1/xi_k) - 1)^(-gamma).
    """
    for value in (u, v):
        if not 0 <= value <= 1:
            raise ValidationFailure(ErrorCode.COORDINATE_OUT_OF_RANGE,
                                    f"coordinate {value} not in [0, 1]", value=value)
    if u == 0.0 or v == 0.0:
        return 0.0
    log_u, log_v = math.log(u), math.log(v)
    a = -log_u / params.xi_i
    b = -log_v / params.xi_k
    top = max(a, b)
    log_bracket = top + math.log(math.exp(a - top) + math.exp(b - top) - math.exp(-top))
    return math.exp(
        params.xi_i_bar / params.xi_i * log_u
        + params.xi_k_bar / params.xi_k * log_v
        - params.alpha_common * top
        - params.gamma_common * log_bracket
    )


def classify_special_case(model: MRFModel) -> SpecialCase:
    """
    Recognise the named members of the family from the exposure pattern.

    Product: every factor hits at most one component. FrechetUpper: the only
    active factor is comonotone and hits all components. ClaytonArchimedean:
    the only active factor is independent and hits all components.
    MarshallOlkin: every active factor is comonotone.
    """
    active = [(f.kind, len(rc)) for f, rc in zip(model.factors, model.rc_sets) if rc]
    n = model.n
    if all(size <= 1 for _, size in active):
        case = SpecialCase.PRODUCT
    elif len(active) == 1 and active[0] == (FactorKind.COMONOTONE, n):
        case = SpecialCase.FRECHET_UPPER
    elif len(active) == 1 and active[0] == (FactorKind.INDEPENDENT, n):
        case = SpecialCase.CLAYTON_ARCHIMEDEAN
    elif all(kind is FactorKind.COMONOTONE for kind, _ in active):
        case = SpecialCase.MARSHALL_OLKIN
    else:
        case = SpecialCase.GENERAL_MRF
    logger.debug(f"🔍 [COPULA] special case: {case.value}")
    return case


def gamma_transforms(model: MRFModel) -> Tuple[Callable[[int], LaplaceTransform],
                                                Callable[[int], LaplaceTransform]]:
    """Per-factor and per-component aggregated transforms of the gamma model."""
    def factor_lt(factor_id: int) -> LaplaceTransform:
        return GammaLaplace(model.shape(factor_id))

    def aggregate_lt(component: int) -> LaplaceTransform:
        return GammaLaplace(model.agg_shape[component - 1])

    return factor_lt, aggregate_lt


def lt_copula_cdf(model: MRFModel, point: Sequence[float],
                  factor_lt: Callable[[int], LaplaceTransform],
                  aggregate_lt: Callable[[int], LaplaceTransform]) -> float:
    """
    Copula of the linear-intensity model for arbitrary frailty laws.

    C(u) = prod_{comonotone j} psi_j(max_{i in RC_j} psi_{c,i}^{-1}(u_i))
         * prod_{independent j} psi_j(sum_{i in RC_j} psi_{c,i}^{-1}(u_i)),
    where psi_{c,i} is the transform of the aggregated intensity of i.

    Args:
        model: Exposure structure; its shapes are not used.
        point: Coordinates in [0, 1]^n.
        factor_lt: Factor id -> transform of that factor's intensity.
        aggregate_lt: Component index -> transform of its aggregated intensity.
    """
    u = _check_point(model, point)
    t = [aggregate_lt(i).inverse(float(u[i - 1])) for i in range(1, model.n + 1)]
    value = 1.0
    for factor, rc in zip(model.factors, model.rc_sets):
        if not rc:
            continue
        exposures = [t[i - 1] for i in rc]
        x = max(exposures) if factor.kind is FactorKind.COMONOTONE else math.fsum(exposures)
        value *= factor_lt(factor.id)(x)
    return value
