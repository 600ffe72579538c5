"""
@fileoverview This module defines the LoadModelNode class, which reads and
              validates the model file named in the run configuration.
@filepath mrfcopula/nodes/load_model.py
"""

import logging

from ..classes.run_state import RunState
from ..core.model import load_model

logger = logging.getLogger(__name__)


class LoadModelNode:
    def run(self, state: RunState) -> RunState:
        config = state["config"]
        model = load_model(config.model_path)
        logger.info(f"✅ [LOAD] {model.summary()}")
        return {**state, "model": model}
