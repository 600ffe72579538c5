"""
@fileoverview Generalized hypergeometric series pFq(a; b; z) for real
              parameters and |z| <= 1, summed term by term with compensated
              summation, with repeated averaging at z = -1 and a Levin
              transform at z = 1 for slowly convergent cases, falling back
              to mpmath when the transform stalls.
@filepath mrfcopula/core/specfun.py
"""

import logging
import math
from typing import Iterator, Tuple

import mpmath as mp
import numpy as np

from ..classes.errors import ErrorCode, NumericalFailure, ValidationFailure
from ..classes.portfolio.models import HypergeometricSpec

logger = logging.getLogger(__name__)

# Partial sums averaged by the z = -1 accelerator.
ACCELERATION_DEPTH = 32
# Levin orders tried at z = 1; past ~40 cancellation dominates in double precision.
LEVIN_MAX_ORDER = 40
LEVIN_SLACK = 10.0
# Round-off floor of the transform in double precision (relative change).
LEVIN_FLOOR = 1e-11
MPMATH_DIGITS = 30


def convergence_margin(spec: HypergeometricSpec) -> float:
    """sum(b) - sum(a); governs convergence on the unit circle."""
    return math.fsum(spec.denominator_params) - math.fsum(spec.numerator_params)


def _is_non_positive_integer(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


def _check(spec: HypergeometricSpec) -> None:
    for b in spec.denominator_params:
        if _is_non_positive_integer(b):
            raise ValidationFailure(ErrorCode.INVALID_PARAMETER,
                                    f"denominator parameter {b} is zero or a negative integer",
                                    parameter=b)
    z = spec.argument
    d = convergence_margin(spec)
    terminates = any(_is_non_positive_integer(a) for a in spec.numerator_params)
    if terminates:
        return
    if abs(z) > 1 or (z == 1 and d <= 0) or (z == -1 and d <= -1):
        raise NumericalFailure(ErrorCode.DIVERGENT_SERIES,
                               f"series diverges at z={z} with margin {d}",
                               argument=z, margin=d)


def _terms(spec: HypergeometricSpec) -> Iterator[float]:
    """Yield t_0, t_1, ... with t_{k+1} = t_k prod(a+k) / prod(b+k) * z / (k+1)."""
    a, b, z = spec.numerator_params, spec.denominator_params, spec.argument
    term = 1.0
    k = 0
    while True:
        yield term
        ratio = z / (k + 1)
        for ai in a:
            ratio *= ai + k
        for bi in b:
            ratio /= bi + k
        term *= ratio
        k += 1


class _CompensatedSum:
    """Neumaier running sum."""

    def __init__(self) -> None:
        self.total = 0.0
        self.compensation = 0.0

    def add(self, x: float) -> None:
        t = self.total + x
        if abs(self.total) >= abs(x):
            self.compensation += (self.total - t) + x
        else:
            self.compensation += (x - t) + self.total
        self.total = t

    @property
    def value(self) -> float:
        return self.total + self.compensation


def _repeated_average(partial_sums: np.ndarray) -> float:
    values = partial_sums
    while values.size > 1:
        values = 0.5 * (values[1:] + values[:-1])
    return float(values[0])


def _levin_estimate(spec: HypergeometricSpec) -> Tuple[float, float]:
    """
    Levin u-transform of the partial sums, for logarithmic convergence at z = 1.

    Returns the estimate with the smallest change between consecutive orders
    and that relative change; (value, 0) when the series terminates.
    """
    tol = spec.tolerance
    terms = _terms(spec)
    a = []
    partial = []
    total = _CompensatedSum()
    previous = None
    best = (math.inf, math.nan)
    for order in range(min(spec.max_terms, LEVIN_MAX_ORDER)):
        term = next(terms)
        if term == 0.0:
            return total.value, 0.0
        total.add(term)
        a.append(term)
        partial.append(total.value)
        if order < 2:
            continue
        j = np.arange(order + 1)
        omega = (j + 1.0) * np.asarray(a)
        weights = np.array([(-1.0) ** i * math.comb(order, i) for i in j])
        weights *= ((j + 1.0) / (order + 1.0)) ** (order - 1)
        estimate = float(np.sum(weights * np.asarray(partial) / omega) / np.sum(weights / omega))
        if previous is not None and estimate != 0.0:
            change = abs(estimate - previous) / abs(estimate)
            if change <= tol:
                return estimate, change
            if change < best[0]:
                best = (change, estimate)
        previous = estimate
    estimate, change = best[1], best[0]
    return estimate, change


def _mpmath_sum(spec: HypergeometricSpec) -> float:
    """Extended-precision summation, used when the Levin transform stalls above its floor."""
    try:
        with mp.workdps(MPMATH_DIGITS):
            value = mp.hyper(list(spec.numerator_params), list(spec.denominator_params),
                             spec.argument, maxterms=10 * spec.max_terms)
    except (mp.libmp.NoConvergence, ZeroDivisionError) as e:
        raise NumericalFailure(ErrorCode.NO_CONVERGENCE,
                               f"series at z={spec.argument} did not converge: {e}",
                               numerator=list(spec.numerator_params),
                               denominator=list(spec.denominator_params)) from e
    return float(value)


def _levin_sum(spec: HypergeometricSpec) -> float:
    estimate, change = _levin_estimate(spec)
    if change <= max(LEVIN_SLACK * spec.tolerance, LEVIN_FLOOR):
        logger.debug(f"🔧 [SPECFUN] Levin transform settled at relative change {change:.3g}")
        return estimate
    logger.debug(f"🔧 [SPECFUN] Levin transform stalled at {change:.3g}; summing with mpmath")
    return _mpmath_sum(spec)


def hyp_pfq(spec: HypergeometricSpec, accelerate: bool = False) -> float:
    """
    Evaluate pFq(a; b; z).

    Args:
        spec: Parameters, argument and stopping rules.
        accelerate: At z = -1, extrapolate the partial sums by repeated
            averaging; at z = 1, apply the Levin u-transform. Other
            arguments ignore the flag.

    Returns:
        float: The series value to relative tolerance spec.tolerance.

    Raises:
        ValidationFailure: InvalidParameter for a zero or negative-integer
            denominator parameter.
        NumericalFailure: DivergentSeries outside the convergence domain,
            NoConvergence when max_terms is reached.
    """
    _check(spec)
    z, tol = spec.argument, spec.tolerance
    d = convergence_margin(spec)
    if accelerate and z == 1:
        return _levin_sum(spec)
    use_acceleration = accelerate and z == -1
    total = _CompensatedSum()
    history = []
    previous_estimate = None
    terms = _terms(spec)
    term = next(terms)

    for k in range(spec.max_terms):
        total.add(term)
        s = total.value
        next_term = next(terms)
        if next_term == 0.0:
            return s

        if z == -1:
            # Alternating tail: the limit lies between S_k and S_{k+1}.
            if abs(next_term) <= abs(term) and abs(next_term) <= tol * abs(s):
                return s + 0.5 * next_term
        elif z == 1:
            if abs(next_term) * (k + 1) / d <= tol * abs(s) and abs(next_term) <= abs(term):
                return s
        else:
            ratio = abs(next_term / term) if term != 0.0 else 0.0
            if ratio < 1 and abs(next_term) / (1 - ratio) <= tol * abs(s):
                return s

        if use_acceleration:
            history.append(s)
            if len(history) > ACCELERATION_DEPTH:
                history.pop(0)
                estimate = _repeated_average(np.asarray(history))
                if previous_estimate is not None and abs(estimate - previous_estimate) <= tol * abs(estimate):
                    logger.debug(f"🔧 [SPECFUN] accelerated series converged after {k + 1} terms")
                    return estimate
                previous_estimate = estimate
        term = next_term

    raise NumericalFailure(ErrorCode.NO_CONVERGENCE,
                           f"series did not reach tolerance {tol} within {spec.max_terms} terms",
                           numerator=list(spec.numerator_params),
                           denominator=list(spec.denominator_params),
                           argument=z)
