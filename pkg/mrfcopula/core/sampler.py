"""
@fileoverview Exact simulation of the MRF-Clayton model: copula uniforms via
              the common-shock representation and default times via
              exponential barriers, plus empirical summaries of the batches.
@filepath mrfcopula/core/sampler.py
"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence

import numpy as np
from scipy import stats

from ..classes.errors import ErrorCode, ValidationFailure
from ..classes.portfolio.base_models import MRFModel
from ..classes.portfolio.models import MonteCarloEstimate, SampleBatch
from ..classes.portfolio.types.enums import FactorKind, SampleKind
from .model import model_digest

logger = logging.getLogger(__name__)

# Draws per random stream. Fixed so output does not depend on the thread count.
CHUNK_SIZE = 65_536
_TINY = np.finfo(float).tiny
_BELOW_ONE = np.nextafter(1.0, 0.0)


def chunk_generator(seed: int, chunk: int) -> np.random.Generator:
    """Independent Philox stream for one chunk of a seeded run."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def run_chunked(count: int, seed: int, draw: Callable[[np.random.Generator, int], np.ndarray],
                threads: Optional[int] = None) -> np.ndarray:
    """
    Call draw(rng, size) once per chunk and stack the results in chunk order.

    Args:
        count: Total number of draws.
        seed: Non-negative run seed.
        draw: Produces `size` rows from the given generator.
        threads: Worker threads; defaults to the CPU count.
    """
    if count < 1:
        raise ValidationFailure(ErrorCode.ZERO_COUNT, "at least one draw is required", count=count)
    if seed < 0:
        raise ValidationFailure(ErrorCode.DOMAIN_ERROR, f"seed {seed} is negative", seed=seed)
    sizes = [CHUNK_SIZE] * (count // CHUNK_SIZE)
    if count % CHUNK_SIZE:
        sizes.append(count % CHUNK_SIZE)

    def work(chunk: int) -> np.ndarray:
        return draw(chunk_generator(seed, chunk), sizes[chunk])

    workers = max(1, min(threads or os.cpu_count() or 1, len(sizes)))
    logger.debug(f"🎲 [SAMPLER] {count} draws in {len(sizes)} chunks on {workers} threads")
    if workers == 1:
        parts = [work(c) for c in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(work, range(len(sizes))))
    return np.concatenate(parts, axis=0)


def _layout(model: MRFModel):
    shapes = np.array([f.shape for f in model.factors])
    comonotone = [f.id - 1 for f in model.factors if f.kind is FactorKind.COMONOTONE]
    independent = [f.id - 1 for f in model.factors if f.kind is FactorKind.INDEPENDENT]
    return shapes, comonotone, independent


def sample_copula(model: MRFModel, count: int, seed: int,
                  threads: Optional[int] = None) -> SampleBatch:
    """
    Draw copula uniforms through the common-shock representation.

    Per draw: Lambda_j ~ Gamma(xi_j) for every factor; one Exp(1) barrier per
    comonotone factor, shared by the components it hits; one Exp(1) barrier
    per (component, independent factor) pair. T_i is the smallest barrier
    time E / Lambda_j among the factors hitting i and U_i = (1 + T_i)^(-xi_{c,i}).
    """
    shapes, comonotone, independent = _layout(model)
    xi_c = np.asarray(model.agg_shape)
    pairs = [(i, j) for j in independent for i in sorted(model.rc_sets[j])]
    pair_factors = np.array([j for _, j in pairs], dtype=int)
    pair_columns = [np.array([p for p, (c, _) in enumerate(pairs) if c == i], dtype=int)
                    for i in range(1, model.n + 1)]
    member = np.zeros((model.n, len(comonotone)), dtype=bool)
    for col, j in enumerate(comonotone):
        for i in model.rc_sets[j]:
            member[i - 1, col] = True

    def draw(rng: np.random.Generator, size: int) -> np.ndarray:
        intensity = rng.standard_gamma(shapes, size=(size, shapes.size))
        shock = rng.standard_exponential((size, len(comonotone)))
        barrier = rng.standard_exponential((size, len(pairs)))
        times = np.full((size, model.n), np.inf)
        with np.errstate(divide="ignore"):
            shock_times = shock / intensity[:, comonotone]
            pair_times = barrier / intensity[:, pair_factors]
        for i in range(model.n):
            if member[i].any():
                times[:, i] = shock_times[:, member[i]].min(axis=1)
            if pair_columns[i].size:
                times[:, i] = np.minimum(times[:, i], pair_times[:, pair_columns[i]].min(axis=1))
        with np.errstate(over="ignore", under="ignore"):
            u = np.exp(-xi_c * np.log1p(times))
        return np.clip(u, _TINY, _BELOW_ONE)

    values = run_chunked(count, seed, draw, threads)
    logger.info(f"🎲 [SAMPLER] drew {count} copula vectors with seed {seed}")
    return SampleBatch(values=values, kind=SampleKind.UNIFORMS, seed=seed,
                       model_hash=model_digest(model))


def sample_default_times(model: MRFModel, count: int, seed: int,
                         threads: Optional[int] = None) -> SampleBatch:
    """
    Draw default times with linear intensities and exponential barriers.

    tau_i = min( min_{comonotone j hitting i} e_j / Lambda_j,
                 E_i / sum_{independent j hitting i} Lambda_j ).

    Giving every (component, independent factor) pair its own barrier is the
    same law as the single barrier per component used here, since a minimum
    of independent exponentials is exponential with the summed rate.
    """
    shapes, comonotone, independent = _layout(model)
    exposure = np.asarray(model.exposure.entries, dtype=float)
    independent_exposure = exposure[:, independent]
    member = exposure[:, comonotone].astype(bool)

    def draw(rng: np.random.Generator, size: int) -> np.ndarray:
        intensity = rng.standard_gamma(shapes, size=(size, shapes.size))
        shock = rng.standard_exponential((size, len(comonotone)))
        barrier = rng.standard_exponential((size, model.n))
        with np.errstate(divide="ignore"):
            rate = intensity[:, independent] @ independent_exposure.T
            times = barrier / rate
            if comonotone:
                shock_times = shock / intensity[:, comonotone]
                for i in range(model.n):
                    if member[i].any():
                        times[:, i] = np.minimum(times[:, i], shock_times[:, member[i]].min(axis=1))
        return times

    values = run_chunked(count, seed, draw, threads)
    logger.info(f"⏱️ [SAMPLER] drew {count} default-time vectors with seed {seed}")
    return SampleBatch(values=values, kind=SampleKind.DEFAULT_TIMES, seed=seed,
                       model_hash=model_digest(model))


def _check_batch(batch: SampleBatch) -> None:
    if batch.count == 0:
        raise ValidationFailure(ErrorCode.EMPTY_BATCH, "sample batch is empty")


def _columns(batch: SampleBatch, indices: Sequence[int]) -> List[int]:
    """Zero-based columns of 1-based component indices."""
    for i in indices:
        if not 1 <= i <= batch.n:
            raise ValidationFailure(ErrorCode.INDEX_OUT_OF_RANGE,
                                    f"component index {i} not in 1..{batch.n}", index=i)
    return [i - 1 for i in indices]


def empirical_copula(batch: SampleBatch, point: Sequence[float]) -> float:
    """Fraction of draws with U <= point componentwise."""
    _check_batch(batch)
    u = np.asarray(point, dtype=float)
    if u.shape != (batch.n,):
        raise ValidationFailure(ErrorCode.DIMENSION_MISMATCH,
                                f"point has {u.size} coordinates, batch has {batch.n}")
    return float(np.mean(np.all(batch.values <= u, axis=1)))


def to_uniforms(model: MRFModel, batch: SampleBatch) -> SampleBatch:
    """Map a default-time batch to copula uniforms through S_i."""
    if batch.kind is not SampleKind.DEFAULT_TIMES:
        raise ValidationFailure(ErrorCode.DOMAIN_ERROR, "batch does not hold default times")
    xi_c = np.asarray(model.agg_shape)
    with np.errstate(over="ignore", under="ignore"):
        u = np.exp(-xi_c * np.log1p(batch.values))
    return SampleBatch(values=u, kind=SampleKind.UNIFORMS, seed=batch.seed,
                       model_hash=batch.model_hash)


def tie_frequency(batch: SampleBatch, subset: Sequence[int]) -> MonteCarloEstimate:
    """Share of draws in which every component of subset has the same value."""
    _check_batch(batch)
    columns = batch.values[:, _columns(batch, subset)]
    hits = np.all(columns == columns[:, :1], axis=1).astype(float)
    p = float(hits.mean())
    return MonteCarloEstimate(mean=p, std_error=float(np.sqrt(p * (1 - p) / batch.count)),
                              draws=batch.count, seed=batch.seed)


def empirical_spearman(batch: SampleBatch, i: int, k: int) -> float:
    """Sample Spearman rank correlation of components i and k."""
    _check_batch(batch)
    a, b = _columns(batch, (i, k))
    rho, _ = stats.spearmanr(batch.values[:, a], batch.values[:, b])
    return float(rho)


def margin_ks_statistics(batch: SampleBatch) -> List[float]:
    """Kolmogorov-Smirnov distance of each uniform column to U(0, 1)."""
    _check_batch(batch)
    return [float(stats.kstest(batch.values[:, c], "uniform").statistic) for c in range(batch.n)]
