"""
@fileoverview This module defines the TailDepNode class, which reports the
              classical and maximal lower tail-dependence indices of a pair.
@filepath mrfcopula/nodes/taildep.py
"""

import logging

from ..classes.portfolio.types.enums import Command
from ..classes.run_state import CommandResult, RunState
from ..core.model import bivariate_params
from ..core.taildep import tail_indices

logger = logging.getLogger(__name__)

COLUMNS = ["i", "k", "lambda_lower", "chi_lower", "kappa_lower",
           "lambda_star", "chi_star", "kappa_star"]


class TailDepNode:
    def run(self, state: RunState) -> RunState:
        i, k = state["config"].pair
        indices = tail_indices(bivariate_params(state["model"], i, k))
        row = [i, k, indices.lambda_lower, indices.chi_lower, indices.kappa_lower,
               indices.lambda_star, indices.chi_star, indices.kappa_star]
        logger.info(f"📉 [TAILDEP] pair ({i}, {k}): kappa_L={indices.kappa_lower:.6g}, "
                    f"kappa*={indices.kappa_star:.6g}")
        result = CommandResult(command=Command.TAILDEP, columns=COLUMNS, rows=[row])
        return {**state, "result": result}
