"""
@fileoverview This module defines the SampleNode class, which draws copula
              uniforms or default times and records the run metadata.
@filepath mrfcopula/nodes/sample.py
"""

import logging

from ..classes.portfolio.types.enums import Command, SampleKind
from ..classes.run_state import CommandResult, RunState
from ..core.sampler import sample_copula, sample_default_times

logger = logging.getLogger(__name__)


class SampleNode:
    def run(self, state: RunState) -> RunState:
        config = state["config"]
        model = state["model"]
        sampler = sample_copula if config.sample_kind is SampleKind.UNIFORMS else sample_default_times
        batch = sampler(model, config.draws, config.seed, threads=config.threads)
        result = CommandResult(
            command=Command.SAMPLE,
            columns=[f"comp_{i}" for i in range(1, model.n + 1)],
            rows=batch.values.tolist(),
            metadata={
                "seed": batch.seed,
                "draws": batch.count,
                "kind": batch.kind.value,
                "model_hash": batch.model_hash,
            },
        )
        logger.info(f"🎲 [SAMPLE] {batch.count} {batch.kind.value} draws ready")
        return {**state, "result": result}
