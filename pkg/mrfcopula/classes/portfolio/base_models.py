"""
File: mrfcopula/classes/portfolio/base_models.py

This module defines the data models describing an MRF portfolio: the risk
factors, the exposure matrix, the derived model with its exposure sets, the
per-subset factor sets and the bivariate Clayton parameter record. All models
are immutable pydantic models; the derived fields of MRFModel are filled in by
mrfcopula.core.model.build_model.
"""

from typing import Dict, FrozenSet, List, Tuple
from pydantic import BaseModel, ConfigDict, Field, model_validator
from .types.enums import FactorKind

ADDITIVITY_TOLERANCE = 1e-12


class RiskFactorSpec(BaseModel):
    """
    A single risk factor with its kind and gamma shape parameter.
    """
    model_config = ConfigDict(frozen=True)

    id: int = Field(..., description="Factor id, equal to its column position (1-based)")
    kind: FactorKind = Field(..., description="comonotone or independent action")
    shape: float = Field(..., description="Gamma shape of the factor intensity")


class ExposureMatrix(BaseModel):
    """
    Binary n x (l+m) matrix; entry (i, j) is 1 when factor j hits component i.
    """
    model_config = ConfigDict(frozen=True)

    entries: Tuple[Tuple[int, ...], ...] = Field(
        ..., description="Row per component, column per factor, entries in {0,1}"
    )

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def width(self) -> int:
        return len(self.entries[0]) if self.entries else 0


class MRFModel(BaseModel):
    """
    A validated MRF model together with its derived exposure sets.

    Component indices and factor ids are 1-based everywhere.
    """
    model_config = ConfigDict(frozen=True)

    factors: Tuple[RiskFactorSpec, ...] = Field(..., description="Factors in column order")
    exposure: ExposureMatrix = Field(..., description="Component/factor exposure")
    rf_sets_l: Tuple[FrozenSet[int], ...] = Field(
        ..., description="Comonotone factor ids hitting each component"
    )
    rf_sets_m: Tuple[FrozenSet[int], ...] = Field(
        ..., description="Independent factor ids hitting each component"
    )
    rc_sets: Tuple[FrozenSet[int], ...] = Field(
        ..., description="Components hit by each factor"
    )
    agg_shape: Tuple[float, ...] = Field(
        ..., description="Aggregated shape xi_{c,i} of each component"
    )

    @property
    def n(self) -> int:
        return self.exposure.n

    @property
    def l(self) -> int:  # noqa: E743
        return sum(1 for f in self.factors if f.kind is FactorKind.COMONOTONE)

    @property
    def m(self) -> int:
        return sum(1 for f in self.factors if f.kind is FactorKind.INDEPENDENT)

    @property
    def inert_factors(self) -> List[int]:
        return [f.id for f, rc in zip(self.factors, self.rc_sets) if not rc]

    def factor(self, factor_id: int) -> RiskFactorSpec:
        return self.factors[factor_id - 1]

    def shape(self, factor_id: int) -> float:
        return self.factors[factor_id - 1].shape

    def rf_set(self, component: int) -> FrozenSet[int]:
        return self.rf_sets_l[component - 1] | self.rf_sets_m[component - 1]

    def summary(self) -> str:
        return (
            f"MRF model: n={self.n}, l={self.l}, m={self.m}, "
            f"aggregated shapes={list(self.agg_shape)}"
        )


class SubsetSets(BaseModel):
    """
    Factor sets of a subset of components and the restricted cardinalities
    |RC_j ∩ subset| of every factor hitting the subset.
    """
    model_config = ConfigDict(frozen=True)

    subset: Tuple[int, ...]
    rf_all: FrozenSet[int]
    rf_common: FrozenSet[int]
    rf_rest: FrozenSet[int]
    rf_all_l: FrozenSet[int]
    rf_all_m: FrozenSet[int]
    rf_common_l: FrozenSet[int]
    rf_common_m: FrozenSet[int]
    rf_rest_l: FrozenSet[int]
    rf_rest_m: FrozenSet[int]
    restricted_cardinality: Dict[int, int]


class BivariateClaytonParams(BaseModel):
    """
    Parameters of a bivariate MRF-Clayton margin of the pair (i, k).

    xi_i = xi_i_bar + alpha_common + gamma_common and likewise for k; the
    shared part xi_common = alpha_common + gamma_common.
    """
    model_config = ConfigDict(frozen=True)

    xi_i: float = Field(..., gt=0, description="Aggregated shape of component i")
    xi_k: float = Field(..., gt=0, description="Aggregated shape of component k")
    alpha_common: float = Field(..., ge=0, description="Shared comonotone shape")
    gamma_common: float = Field(..., ge=0, description="Shared independent shape")
    xi_i_bar: float = Field(..., ge=0, description="Shape of factors hitting only i")
    xi_k_bar: float = Field(..., ge=0, description="Shape of factors hitting only k")

    @model_validator(mode="after")
    def check_additivity(self):
        shared = self.alpha_common + self.gamma_common
        for total, own in ((self.xi_i, self.xi_i_bar), (self.xi_k, self.xi_k_bar)):
            if abs(total - (own + shared)) > ADDITIVITY_TOLERANCE * max(1.0, total):
                raise ValueError(
                    f"aggregated shape {total} differs from {own} + {shared}"
                )
        return self

    @classmethod
    def from_shares(cls, xi_i_bar: float, xi_k_bar: float,
                    alpha_common: float, gamma_common: float) -> "BivariateClaytonParams":
        """Build params from the four share parameters, so additivity is exact."""
        shared = alpha_common + gamma_common
        return cls(
            xi_i=xi_i_bar + shared,
            xi_k=xi_k_bar + shared,
            alpha_common=alpha_common,
            gamma_common=gamma_common,
            xi_i_bar=xi_i_bar,
            xi_k_bar=xi_k_bar,
        )

    @property
    def xi_common(self) -> float:
        return self.alpha_common + self.gamma_common

    def swapped(self) -> "BivariateClaytonParams":
        """Params of the pair (k, i)."""
        return BivariateClaytonParams(
            xi_i=self.xi_k,
            xi_k=self.xi_i,
            alpha_common=self.alpha_common,
            gamma_common=self.gamma_common,
            xi_i_bar=self.xi_k_bar,
            xi_k_bar=self.xi_i_bar,
        )
