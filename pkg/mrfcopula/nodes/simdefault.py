"""
@fileoverview This module defines the SimDefaultNode class, which computes the
              probability that a subset of components defaults at the same
              instant, analytically and optionally by Monte Carlo.
@filepath mrfcopula/nodes/simdefault.py
"""

import logging

from ..classes.portfolio.types.enums import Command
from ..classes.run_state import CommandResult, RunState
from ..core.dependence import simdefault_analytic, simdefault_mc

logger = logging.getLogger(__name__)


class SimDefaultNode:
    def run(self, state: RunState) -> RunState:
        config = state["config"]
        model = state["model"]
        subset = list(config.subset)
        analytic = simdefault_analytic(model, subset, mass_tolerance=config.mass_tolerance)
        columns = ["subset", "probability", "error_bound"]
        row = [" ".join(map(str, subset)), analytic.value, analytic.error_bound]
        metadata = {}
        if config.monte_carlo:
            estimate = simdefault_mc(model, subset, config.draws, config.seed, threads=config.threads)
            columns += ["mc_mean", "mc_std_error"]
            row += [estimate.mean, estimate.std_error]
            metadata = {"seed": estimate.seed, "draws": estimate.draws}
        logger.info(f"💥 [SIMDEFAULT] subset {subset}: {analytic.value:.12g}")
        result = CommandResult(command=Command.SIMDEFAULT, columns=columns, rows=[row],
                               metadata=metadata)
        return {**state, "result": result}
