"""Deterministic writers for result tables and documents."""

import csv
import hashlib
import json
import os
from typing import Any, Dict, Mapping, Sequence

import numpy as np

from ..configs import OUTPUT_FORMATS, SIGNIFICANT_DIGITS


def _cell(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), f".{SIGNIFICANT_DIGITS}g")
    if value is None:
        return ""
    return str(value)


def to_builtin(value: Any) -> Any:
    """Recursively converts numpy scalars and arrays into JSON-ready builtins."""
    if isinstance(value, Mapping):
        return {str(key): to_builtin(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_builtin(item) for item in value]
    if isinstance(value, np.ndarray):
        return to_builtin(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(np.real(value)), float(np.imag(value))]
    return value


def write_json(path: str, document: Any) -> str:
    """Writes sorted-key JSON with round-trip floats and returns the path."""
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(to_builtin(document), handle, indent=2, sort_keys=True)
        handle.write("\n")
    return path


def write_table(path: str, columns: Mapping[str, Sequence], fmt: str = "csv") -> str:
    """Writes equally long columns as CSV (17 significant digits) or as a JSON object of lists.

    Args:
        path (str): Target path without extension.
        columns (Mapping[str, Sequence]): Column name to values, in output order.
        fmt (str, optional): "csv" or "json". Defaults to "csv".

    Raises:
        ValueError: Unknown format or columns of different lengths.

    Returns:
        str: Path written, with the extension of the format.
    """
    if fmt not in OUTPUT_FORMATS:
        raise ValueError(f"Invalid option for fmt. Options: {OUTPUT_FORMATS}")
    names = list(columns)
    lengths = {len(columns[name]) for name in names}
    if len(lengths) > 1:
        raise ValueError(f"columns have different lengths: {sorted(lengths)}")

    target = f"{path}.{fmt}"
    if fmt == "json":
        return write_json(target, {"columns": names, "data": {name: list(columns[name]) for name in names}})

    with open(target, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(names)
        for row in zip(*(columns[name] for name in names)):
            writer.writerow([_cell(value) for value in row])
    return target


def records_to_columns(records: Sequence[Mapping[str, Any]]) -> Dict[str, list]:
    """[{a: 1, b: 2}, ...] into {a: [1, ...], b: [2, ...]}, keeping the key order of the first record."""
    if not records:
        return {}
    return {name: [record.get(name) for record in records] for name in records[0]}


def sha256_file(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 16), b""):
            digest.update(block)
    return digest.hexdigest()


def ensure_directory(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path
