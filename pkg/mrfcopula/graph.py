"""
@fileoverview This module defines the Graph class for running one command:
              node initialization, the load -> route -> compute -> publish
              workflow and its execution.
@filepath mrfcopula/graph.py
"""

import logging

from langgraph.graph import END, StateGraph

from .classes.run_state import RunConfig, RunState
from .nodes import (
    LoadModelNode, ValidateNode, EvaluateNode, SampleNode, SpearmanNode,
    SimDefaultNode, TailDepNode, MdpPathNode, PublishNode
)
from .utils.routing_helper import COMMAND_NODES, route_command

logger = logging.getLogger(__name__)


class Graph:
    """
    Manages the workflow of a command run, including node initialization and
    workflow execution.
    """
    def __init__(self, config: RunConfig, publish: bool = True):
        """
        Initialize the Graph with the run configuration.

        Args:
            config (RunConfig): Validated command-line configuration.
            publish (bool): Render and write the artifact after computing.
        """
        self.config = config
        self.publish = publish
        self.state: RunState = {"config": config}

        logger.debug(f"🔧 [INIT] Graph initialized for command: {config.command.value}")

        self._initialize_nodes()
        self._setup_workflow()

    def _initialize_nodes(self):
        """Initialize all the graph nodes."""
        self.load_model_node = LoadModelNode()
        self.validate_node = ValidateNode()
        self.evaluate_node = EvaluateNode()
        self.sample_node = SampleNode()
        self.spearman_node = SpearmanNode()
        self.simdefault_node = SimDefaultNode()
        self.taildep_node = TailDepNode()
        self.mdp_path_node = MdpPathNode()
        self.publish_node = PublishNode()

        logger.debug("🔄 [NODES] All graph nodes initialized.")

    def _setup_workflow(self):
        """Setup the workflow graph."""
        self.workflow = StateGraph(RunState)

        self.workflow.add_node("load_model", self.load_model_node.run)
        self.workflow.add_node("validate", self.validate_node.run)
        self.workflow.add_node("evaluate", self.evaluate_node.run)
        self.workflow.add_node("sample", self.sample_node.run)
        self.workflow.add_node("spearman", self.spearman_node.run)
        self.workflow.add_node("simdefault", self.simdefault_node.run)
        self.workflow.add_node("taildep", self.taildep_node.run)
        self.workflow.add_node("mdp_path", self.mdp_path_node.run)
        if self.publish:
            self.workflow.add_node("publish", self.publish_node.run)

        self.workflow.set_entry_point("load_model")
        self.workflow.add_conditional_edges(
            "load_model", route_command, {name: name for name in COMMAND_NODES}
        )
        finish = "publish" if self.publish else END
        for name in COMMAND_NODES:
            self.workflow.add_edge(name, finish)
        if self.publish:
            self.workflow.set_finish_point("publish")

        logger.debug("🔗 [WORKFLOW] Workflow setup complete with entry and exit points defined.")

    def compile(self):
        """Compile the workflow graph."""
        return self.workflow.compile()

    def run(self) -> RunState:
        """
        Run the workflow.

        Returns:
            RunState: Final state holding the model, the command result and,
            when publishing, the rendered artifact.
        """
        logger.info("🏃 [RUN] Starting workflow execution.")
        graph = self.compile()
        state = graph.invoke(self.state)
        self.state = state
        logger.info("✅ [RUN] Workflow execution completed.")
        return state
