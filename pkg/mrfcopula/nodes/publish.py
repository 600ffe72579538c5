"""
This module defines the PublishNode class, which renders the command result in
the configured format and writes it to the output path or to stdout. Sample
runs written to a file also get a metadata sidecar next to the artifact.
"""
import logging

from ..classes.portfolio.types.enums import Command
from ..classes.run_state import RunState
from ..utils.utils import render, write_sidecar, write_text

logger = logging.getLogger(__name__)


class PublishNode:
    def format_output(self, state: RunState) -> str:
        result = state["result"]
        output_format = state["config"].output_format
        logger.debug(f"📝 [PUBLISH] rendering {len(result.rows)} rows as {output_format.value}")
        return render(result, output_format)

    def run(self, state: RunState) -> RunState:
        config = state["config"]
        artifact = self.format_output(state)
        write_text(artifact, config.output_path)
        if config.output_path is not None and state["result"].command is Command.SAMPLE:
            sidecar = write_sidecar(state["result"].metadata, config.output_path)
            logger.info(f"📎 [PUBLISH] metadata sidecar: {sidecar}")
        logger.info("🏁 [PUBLISH] artifact published")
        return {**state, "artifact": artifact, "artifact_path": config.output_path}
