"""
@fileoverview This module provides routing logic for command runs: after the
              model is loaded, the configured subcommand selects the node
              that computes the result.
@filepath mrfcopula/utils/routing_helper.py
"""

import logging
from typing import Literal, get_args

from ..classes.portfolio.types.enums import Command
from ..classes.run_state import RunState

logger = logging.getLogger(__name__)

NodeName = Literal["validate", "evaluate", "sample", "spearman", "simdefault", "taildep", "mdp_path"]

COMMAND_NODES = get_args(NodeName)

_ROUTES = {
    Command.VALIDATE: "validate",
    Command.EVAL: "evaluate",
    Command.SAMPLE: "sample",
    Command.SPEARMAN: "spearman",
    Command.SIMDEFAULT: "simdefault",
    Command.TAILDEP: "taildep",
    Command.MDP_PATH: "mdp_path",
}


def route_command(state: RunState) -> NodeName:
    """
    Determines the computing node for the configured command.

    Args:
        state (RunState): The current run state.

    Returns:
        Literal: Name of the node that handles the command.
    """
    command = Command(state["config"].command)
    route = _ROUTES[command]
    logger.debug(f"🔀 [ROUTE] {command.value} -> {route}")
    return route
