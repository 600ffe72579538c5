"""
@fileoverview This module defines the ValidateNode class, which reports the
              derived structure of a validated model: per-component factor
              sets and aggregated shapes, factor dimensions and special case.
@filepath mrfcopula/nodes/validate.py
"""

import logging

from ..classes.portfolio.types.enums import Command
from ..classes.run_state import CommandResult, RunState
from ..core.copula import classify_special_case
from ..core.model import model_digest

logger = logging.getLogger(__name__)


class ValidateNode:
    def run(self, state: RunState) -> RunState:
        model = state["model"]
        case = classify_special_case(model)
        rows = [
            [i, model.agg_shape[i - 1],
             " ".join(str(j) for j in sorted(model.rf_sets_l[i - 1])),
             " ".join(str(j) for j in sorted(model.rf_sets_m[i - 1]))]
            for i in range(1, model.n + 1)
        ]
        result = CommandResult(
            command=Command.VALIDATE,
            columns=["component", "agg_shape", "comonotone_factors", "independent_factors"],
            rows=rows,
            metadata={
                "n": model.n,
                "l": model.l,
                "m": model.m,
                "special_case": case.value,
                "inert_factors": model.inert_factors,
                "model_hash": model_digest(model),
            },
        )
        logger.info(f"🧾 [VALIDATE] {case.value} model with {model.n} components")
        return {**state, "result": result}
