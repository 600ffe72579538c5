"""
@fileoverview This module defines the SpearmanNode class, which computes
              Spearman's rho of a component pair by series and, on request,
              by quadrature.
@filepath mrfcopula/nodes/spearman.py
"""

import logging

from ..classes.portfolio.types.enums import Command
from ..classes.run_state import CommandResult, RunState
from ..core.dependence import spearman_rho, spearman_rho_numeric
from ..core.model import bivariate_params

logger = logging.getLogger(__name__)


class SpearmanNode:
    def run(self, state: RunState) -> RunState:
        config = state["config"]
        i, k = config.pair
        params = bivariate_params(state["model"], i, k)
        columns = ["i", "k", "spearman_rho"]
        row = [i, k, spearman_rho(params, config.hyp_tolerance)]
        if config.numeric:
            columns.append("spearman_rho_numeric")
            row.append(spearman_rho_numeric(params, config.quad_tolerance))
        logger.info(f"📐 [SPEARMAN] pair ({i}, {k}): {row[2:]}")
        result = CommandResult(command=Command.SPEARMAN, columns=columns, rows=[row])
        return {**state, "result": result}
