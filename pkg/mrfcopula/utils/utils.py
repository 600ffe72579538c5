"""
@fileoverview This module provides utilities for logging setup and for
              rendering command results as CSV or JSON artifacts with
              round-trip precision, plus the error document written on
              failure.
@filepath mrfcopula/utils/utils.py
"""

import io
import json
import logging
import math
import sys
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

from ..classes.errors import ArtifactIOError, ErrorCode, MRFError
from ..classes.portfolio.types.enums import OutputFormat
from ..classes.run_state import CommandResult

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def configure_logging(level: str = "WARNING") -> None:
    """Send log records to stderr; stdout is reserved for artifacts."""
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(asctime)s - %(levelname)s - %(message)s"))
    root = logging.getLogger()
    root.handlers[:] = [handler]
    root.setLevel(level.upper())


def _plain(value: Any) -> Any:
    """Convert numpy scalars and enums into JSON-native values."""
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, Enum):
        value = value.value
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def render_csv(result: CommandResult) -> str:
    """Header plus one line per row; floats written with 17 significant digits."""
    frame = pd.DataFrame([_plain(row) for row in result.rows], columns=result.columns)
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return buffer.getvalue()


def render_json(result: CommandResult) -> str:
    """JSON document; Python float repr round-trips every double exactly."""
    document = {
        "command": result.command.value,
        "metadata": _plain(result.metadata),
        "records": [_plain(record) for record in result.records()],
    }
    return json.dumps(document, indent=2) + "\n"


def render(result: CommandResult, output_format: OutputFormat) -> str:
    if OutputFormat(output_format) is OutputFormat.JSON:
        return render_json(result)
    return render_csv(result)


def write_text(text: str, path: Optional[Path]) -> None:
    """Write an artifact to path, or to stdout when path is None."""
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise ArtifactIOError(ErrorCode.OUTPUT_ERROR, f"cannot write {path}: {e}",
                              path=str(path)) from e
    logger.info(f"💾 [OUTPUT] artifact written to {path}")


def sidecar_path(path: Path) -> Path:
    return Path(f"{path}.meta.json")


def write_sidecar(metadata: Dict[str, Any], path: Path) -> Path:
    target = sidecar_path(path)
    write_text(json.dumps(_plain(metadata), indent=2, sort_keys=True) + "\n", target)
    return target


def error_document(error: MRFError) -> str:
    return json.dumps(_plain(error.to_dict()), sort_keys=True)
