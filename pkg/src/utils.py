"""
Utility Functions Module

File helpers shared by the CLI and the pipeline: JSON and line-delimited
record files, and key=value experiment manifests.
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, TypeVar

from dotenv import dotenv_values
from pydantic import ValidationError

from src.errors import RecordFormatError
from src.models.scenario import SyntheticScenario
from src.models.schemas import ExtractionEvent, GroundTruthRecord, PlateReading

logger = logging.getLogger(__name__)

T = TypeVar("T")

# Manifest keys accepted under their short names
CONFIG_ALIASES = {
    "lambda": "line_row",
    "t": "segment_length",
}


def ensure_directory(directory: str) -> None:
    """
    Create directory if it doesn't exist.

    Args:
        directory: Directory path to create
    """
    Path(directory).mkdir(parents=True, exist_ok=True)


def _ensure_parent(path: str) -> None:
    parent = os.path.dirname(path)
    if parent:
        ensure_directory(parent)


def write_json_output(data: Dict, path: str) -> None:
    """
    Write data to a JSON file with proper formatting.

    Raises:
        ValueError: If data is not JSON-serializable
        IOError: If file cannot be written
    """
    try:
        text = json.dumps(data, indent=2, ensure_ascii=False)
    except (TypeError, ValueError) as e:
        raise ValueError(f"Data is not JSON-serializable: {e}")

    try:
        _ensure_parent(path)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    except IOError as e:
        raise IOError(f"Failed to write file {path}: {e}")


def load_json(filepath: str) -> Dict[str, Any]:
    """
    Load JSON data from a file.

    Raises:
        FileNotFoundError: If file doesn't exist
    """
    if not Path(filepath).exists():
        raise FileNotFoundError(f"File not found: {filepath}")
    with open(filepath, "r", encoding="utf-8") as f:
        return json.load(f)


def load_scenario(path: str) -> SyntheticScenario:
    """
    Load and validate a scenario file.

    Raises:
        FileNotFoundError: If file doesn't exist
        ValueError: If the JSON or the scenario is invalid
    """
    try:
        return SyntheticScenario.model_validate(load_json(path))
    except json.JSONDecodeError as e:
        raise ValueError(f"{path}: not valid JSON: {e}")
    except ValidationError as e:
        raise ValueError(f"{path}: invalid scenario: {e}")


def write_records(path: str, records: Iterable[Dict[str, Any]]) -> int:
    """Write one compact JSON object per line; returns the record count."""
    _ensure_parent(path)
    count = 0
    with open(path, "w", encoding="utf-8") as f:
        for record in records:
            f.write(json.dumps(record, separators=(",", ":")) + "\n")
            count += 1
    return count


def load_records(path: str, parse: Callable[[Dict[str, Any]], T]) -> List[T]:
    """
    Read a line-delimited record file. Blank lines are skipped.

    Raises:
        FileNotFoundError: If file doesn't exist
        RecordFormatError: On the first line that is not a valid record
    """
    if not Path(path).exists():
        raise FileNotFoundError(f"File not found: {path}")
    items: List[T] = []
    with open(path, "r", encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                if not isinstance(record, dict):
                    raise ValueError("expected a JSON object")
                items.append(parse(record))
            except (ValueError, KeyError, TypeError, ValidationError) as e:
                raise RecordFormatError(path, line_number, str(e).splitlines()[0])
    return items


def load_events(path: str) -> List[ExtractionEvent]:
    return load_records(path, ExtractionEvent.model_validate)


def load_ground_truth(path: str) -> List[GroundTruthRecord]:
    return load_records(path, GroundTruthRecord.model_validate)


def load_readings(path: str) -> List[PlateReading]:
    return load_records(path, PlateReading.from_record)


def load_key_value_config(path: str) -> Dict[str, Any]:
    """
    Parse a key=value manifest into RunConfig-shaped keyword arguments.

    Keys are case-insensitive, dashes become underscores, `lambda` and `T`
    are aliases, and dotted keys nest (`bgsub.kind=diff` ->
    {"bgsub": {"kind": "diff"}}). Empty values are ignored.

    Raises:
        FileNotFoundError: If file doesn't exist
    """
    if not Path(path).exists():
        raise FileNotFoundError(f"Config file not found: {path}")
    config: Dict[str, Any] = {}
    for raw_key, value in dotenv_values(path).items():
        if value is None or value == "":
            continue
        key = raw_key.strip().lower().replace("-", "_")
        key = CONFIG_ALIASES.get(key, key)
        if "." in key:
            section, sub_key = key.split(".", 1)
            config.setdefault(section, {})[sub_key] = value
        else:
            config[key] = value
    logger.debug("Loaded %d settings from %s", len(config), path)
    return config
