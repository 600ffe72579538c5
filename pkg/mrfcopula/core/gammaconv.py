"""
@fileoverview Sums of independent gamma variables with distinct rates written
              as a mixture of Gamma(total_shape + k, sigma_max), and the
              expectation of a gamma share of such a sum.
@filepath mrfcopula/core/gammaconv.py
"""

import logging
import math
from typing import Sequence

import numpy as np

from ..classes.errors import ErrorCode, NumericalFailure, ValidationFailure
from ..classes.portfolio.models import ConvolutionPMF, GammaComponent

logger = logging.getLogger(__name__)

DEFAULT_MASS_TOLERANCE = 1e-12
DEFAULT_MAX_TERMS = 100_000


def convolution_pmf(components: Sequence[GammaComponent],
                    mass_tolerance: float = DEFAULT_MASS_TOLERANCE,
                    max_terms: int = DEFAULT_MAX_TERMS) -> ConvolutionPMF:
    """
    Mixing pmf of a sum of independent Gamma(shape_i, rate_i).

    The sum has density sum_k p_k Gamma(total_shape + k, sigma_max) with
    p_0 = c_plus = prod (rate_i / sigma_max)^shape_i and
    p_k = (1/k) sum_{l=1..k} g_l p_{k-l}, g_l = sum_i shape_i (1 - rate_i/sigma_max)^l.
    Terms are accumulated until the retained mass reaches 1 - mass_tolerance.

    Args:
        components: The gamma summands; at least one.
        mass_tolerance: Allowed missing mass, in (0, 1).
        max_terms: Truncation cap.

    Returns:
        ConvolutionPMF: The truncated pmf and its mass deficit.
    """
    if not 0 < mass_tolerance < 1:
        raise ValidationFailure(ErrorCode.INVALID_TOLERANCE,
                                f"mass tolerance {mass_tolerance} not in (0, 1)")
    if not components:
        raise ValidationFailure(ErrorCode.DIMENSION_MISMATCH, "no gamma components")

    shapes = np.array([c.shape for c in components], dtype=float)
    rates = np.array([c.rate for c in components], dtype=float)
    sigma_max = float(rates.max())
    ratios = rates / sigma_max
    c_plus = math.exp(math.fsum(shapes * np.log(ratios)))
    if c_plus == 0.0:
        raise NumericalFailure(ErrorCode.NO_CONVERGENCE,
                               "leading weight underflows; rates too spread for the pmf",
                               rates=rates.tolist())

    decay = 1.0 - ratios
    g = np.zeros(max_terms + 1)
    probs = np.zeros(max_terms + 1)
    probs[0] = c_plus
    mass = c_plus
    k = 0
    powers = np.ones_like(decay)
    while mass < 1.0 - mass_tolerance:
        k += 1
        if k > max_terms:
            raise NumericalFailure(ErrorCode.NO_CONVERGENCE,
                                   f"pmf mass {mass} short of 1 after {max_terms} terms",
                                   mass=mass)
        powers = powers * decay
        g[k] = float(np.dot(shapes, powers))
        probs[k] = float(np.dot(g[1:k + 1], probs[k - 1::-1])) / k
        mass += probs[k]

    probs = probs[:k + 1]
    logger.debug(f"🔧 [GAMMACONV] {len(components)} components truncated at K={k}, c+={c_plus:.6g}")
    return ConvolutionPMF(
        c_plus=c_plus,
        deltas=tuple((probs / c_plus).tolist()),
        probs=tuple(probs.tolist()),
        sigma_max=sigma_max,
        total_shape=float(shapes.sum()),
        truncation_k=k,
        mass_deficit=max(0.0, 1.0 - math.fsum(probs)),
    )


def expected_ratio(pmf: ConvolutionPMF, numerator_shape: float) -> float:
    """
    E[A / S] for S the sum described by pmf and A one of its summands,
    of shape numerator_shape and rate sigma_max.

    Equals numerator_shape * sum_k p_k / (total_shape + k); the truncated
    tail contributes at most pmf.tail_bound(numerator_shape).
    """
    if numerator_shape == 0:
        return 0.0
    k = np.arange(pmf.truncation_k + 1)
    return numerator_shape * math.fsum(np.asarray(pmf.probs) / (pmf.total_shape + k))
