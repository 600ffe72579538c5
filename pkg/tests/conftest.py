"""
Shared fixtures: the two-name configurations used throughout the docs, the
Marshall-Olkin and mixed shock models and random model / parameter factories.
"""

from pathlib import Path

import numpy as np
import pytest

from mrfcopula.classes import BivariateClaytonParams, FactorKind, RiskFactorSpec
from mrfcopula.core.model import build_model

PORTFOLIOS = Path(__file__).resolve().parent.parent / "portfolios"


def make_model(factors, exposure):
    """factors: list of (kind, shape) in column order."""
    specs = [RiskFactorSpec(id=j, kind=kind, shape=shape) for j, (kind, shape) in enumerate(factors, start=1)]
    return build_model(specs, exposure)


C, I = FactorKind.COMONOTONE, FactorKind.INDEPENDENT


@pytest.fixture
def portfolios() -> Path:
    return PORTFOLIOS


@pytest.fixture
def kink_params():
    return BivariateClaytonParams.from_shares(xi_i_bar=3.0, xi_k_bar=0.3, alpha_common=0.6, gamma_common=0.5)


@pytest.fixture
def interior_params():
    return BivariateClaytonParams.from_shares(xi_i_bar=10.0, xi_k_bar=0.3, alpha_common=0.6, gamma_common=0.5)


@pytest.fixture
def kink_model():
    return make_model([(C, 0.6), (I, 0.5), (I, 3.0), (I, 0.3)], [[1, 1, 1, 0], [1, 1, 0, 1]])


@pytest.fixture
def mo_model():
    """Shared comonotone shock of shape 1 plus unit idiosyncratic shocks."""
    return make_model([(C, 1.0), (C, 1.0), (C, 1.0)], [[1, 1, 0], [1, 0, 1]])


@pytest.fixture
def mixed_model():
    """Shared comonotone and shared independent factor, both of shape 1."""
    return make_model([(C, 1.0), (I, 1.0)], [[1, 1], [1, 1]])


@pytest.fixture
def random_model():
    """Factory drawing a valid model with n <= n_max components and <= f_max factors."""
    def factory(rng: np.random.Generator, n_max: int = 5, f_max: int = 8, n_min: int = 1):
        n = int(rng.integers(n_min, n_max + 1))
        width = int(rng.integers(1, f_max + 1))
        kinds = [C if flag else I for flag in rng.integers(0, 2, width)]
        shapes = rng.uniform(0.1, 3.0, width)
        exposure = rng.integers(0, 2, (n, width))
        for row in exposure:
            if not row.any():
                row[rng.integers(0, width)] = 1
        return make_model(list(zip(kinds, shapes)), exposure.tolist())
    return factory


@pytest.fixture
def random_params():
    """Factory drawing bivariate parameters with a positive shared part."""
    def factory(rng: np.random.Generator, alpha: bool = True, gamma: bool = True):
        bars = rng.uniform(0.0, 3.0, 2) * (rng.random(2) > 0.15)
        a = rng.uniform(0.05, 2.0) if alpha else 0.0
        g = rng.uniform(0.05, 2.0) if gamma else 0.0
        return BivariateClaytonParams.from_shares(float(bars[0]), float(bars[1]), a, g)
    return factory
