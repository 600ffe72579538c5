"""
@fileoverview This module defines the MdpPathNode class, which tabulates the
              path of maximal dependence of a pair over a grid of levels.
@filepath mrfcopula/nodes/mdp_path.py
"""

import logging

from ..classes.portfolio.types.enums import Command
from ..classes.run_state import CommandResult, RunState
from ..core.copula import bivariate_cdf
from ..core.model import bivariate_params
from ..core.taildep import maximal_path_table

logger = logging.getLogger(__name__)


class MdpPathNode:
    def run(self, state: RunState) -> RunState:
        config = state["config"]
        i, k = config.pair
        params = bivariate_params(state["model"], i, k)
        points = maximal_path_table(params, config.levels())
        rows = [
            [p.u, p.x_star, p.y_star, p.pi_star, bivariate_cdf(params, p.u, p.u), p.regime.value]
            for p in points
        ]
        logger.info(f"🛤️ [MDP] {len(rows)} levels for pair ({i}, {k})")
        result = CommandResult(
            command=Command.MDP_PATH,
            columns=["u", "x_star", "y_star", "pi_star", "diagonal", "regime"],
            rows=rows,
            metadata={"pair": [i, k]},
        )
        return {**state, "result": result}
