"""
@fileoverview This module defines the result and input records produced by the
              numerical kernels: hypergeometric series specs, gamma
              convolution pmfs, sample batches, simultaneous-default
              estimates, tail-dependence indices and maximal-path points.
@filepath mrfcopula/classes/portfolio/models.py
"""

from typing import Optional, Tuple
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator
from .types.enums import Regime, SampleKind


class HypergeometricSpec(BaseModel):
    """
    A generalized hypergeometric series pFq(a; b; z) and its stopping rules.
    """
    model_config = ConfigDict(frozen=True)

    numerator_params: Tuple[float, ...] = Field(..., description="a_1..a_p")
    denominator_params: Tuple[float, ...] = Field(..., description="b_1..b_q")
    argument: float = Field(..., description="Series argument z")
    tolerance: float = Field(1e-13, gt=0, lt=1, description="Relative stopping tolerance")
    max_terms: int = Field(100_000, ge=1, description="Hard cap on the number of terms")


class GammaComponent(BaseModel):
    """
    One independent Gamma(shape, rate) summand of a convolution.
    """
    model_config = ConfigDict(frozen=True)

    shape: float = Field(..., gt=0)
    rate: float = Field(..., gt=0)


class ConvolutionPMF(BaseModel):
    """
    Mixing weights of a sum of independent gammas written as a mixture of
    Gamma(total_shape + k, sigma_max), truncated at truncation_k.
    """
    model_config = ConfigDict(frozen=True)

    c_plus: float = Field(..., description="prod (sigma_i / sigma_max)^shape_i")
    deltas: Tuple[float, ...] = Field(..., description="Unnormalized weights, probs / c_plus")
    probs: Tuple[float, ...] = Field(..., description="Mixing pmf p_k, k = 0..K")
    sigma_max: float = Field(..., gt=0)
    total_shape: float = Field(..., gt=0)
    truncation_k: int = Field(..., ge=0)
    mass_deficit: float = Field(..., ge=0, description="1 - sum of probs")

    def tail_bound(self, numerator_shape: float) -> float:
        """Upper bound on the truncated part of E[numerator / total]."""
        return numerator_shape * self.mass_deficit / self.total_shape


class SampleBatch(BaseModel):
    """
    A batch of draws, one row per draw and one column per component.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: np.ndarray = Field(..., description="count x n float array")
    kind: SampleKind
    seed: int
    model_hash: str

    @field_validator("values")
    @classmethod
    def check_matrix(cls, value: np.ndarray) -> np.ndarray:
        if value.ndim != 2:
            raise ValueError("sample values must be a 2-d array")
        value.setflags(write=False)
        return value

    @property
    def count(self) -> int:
        return int(self.values.shape[0])

    @property
    def n(self) -> int:
        return int(self.values.shape[1])


class SimultaneousDefault(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float
    error_bound: float = Field(0.0, ge=0)
    method: str = "analytic"


class MonteCarloEstimate(BaseModel):
    """
    Sample mean of an estimator with its standard error.
    """
    model_config = ConfigDict(frozen=True)

    mean: float
    std_error: float = Field(..., ge=0)
    draws: int = Field(..., ge=1)
    seed: Optional[int] = None


class TailIndices(BaseModel):
    """
    Classical (diagonal) and maximal lower tail-dependence indices of a pair.
    """
    model_config = ConfigDict(frozen=True)

    lambda_lower: float
    chi_lower: float
    kappa_lower: float
    lambda_star: float
    chi_star: float
    kappa_star: float


class MaxDependencePoint(BaseModel):
    """
    Maximiser of C(x, u^2/x) over x in [u^2, 1] for a fixed level u.
    """
    model_config = ConfigDict(frozen=True)

    u: float
    x_star: float
    y_star: float
    pi_star: float
    regime: Regime
