"""
@fileoverview This module defines the EvaluateNode class, which evaluates the
              copula cdf at the configured point.
@filepath mrfcopula/nodes/evaluate.py
"""

import logging

from ..classes.portfolio.types.enums import Command
from ..classes.run_state import CommandResult, RunState
from ..core.copula import copula_cdf

logger = logging.getLogger(__name__)


class EvaluateNode:
    def run(self, state: RunState) -> RunState:
        point = list(state["config"].point)
        value = copula_cdf(state["model"], point)
        logger.info(f"🧮 [EVAL] C({point}) = {value:.17g}")
        result = CommandResult(
            command=Command.EVAL,
            columns=[f"u_{i}" for i in range(1, len(point) + 1)] + ["copula"],
            rows=[point + [value]],
        )
        return {**state, "result": result}
