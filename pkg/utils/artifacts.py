"""
Artifact writers. Every artifact carries the effective configuration of the run:
JSON files under a "config" key, CSV files as a leading "# config: {...}" line
(read back with ``pandas.read_csv(path, comment="#")``).
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

from utils.logger import get_logger

logger = get_logger(__name__)


def _default(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, complex):
        return [value.real, value.imag]
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def to_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, default=_default, indent=2, sort_keys=False)


def write_json(path: Path, payload: Dict[str, Any], config: Optional[Dict[str, Any]] = None) -> Path:
    """Write ``{"config": config, **payload}``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    document = {"config": config or {}, **payload}
    path.write_text(to_json(document) + "\n")
    logger.info(f"Wrote {path}")
    return path


def write_csv(path: Path, frame: pd.DataFrame, config: Optional[Dict[str, Any]] = None) -> Path:
    """Write a data frame preceded by the configuration comment line."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as handle:
        handle.write("# config: " + json.dumps(config or {}, default=_default) + "\n")
        frame.to_csv(handle, index=False)
    logger.info(f"Wrote {path} ({len(frame)} rows)")
    return path


def read_csv_config(path: Path) -> Dict[str, Any]:
    """The configuration embedded in a CSV artifact."""
    with open(path) as handle:
        first = handle.readline()
    if not first.startswith("# config: "):
        return {}
    return json.loads(first[len("# config: "):])
