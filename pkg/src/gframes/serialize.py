"""JSON persistence for block systems, plus canonical report serialization.

The on-disk schema is ``{"d": int, "k": [int, ...], "blocks": [...]}`` with
each block stored row-major and every complex entry as a ``[re, im]`` pair.
Floats are written with 17 significant digits, so any finite double survives
a save/load round trip bit for bit; reports additionally sort their keys so
byte-identical inputs give byte-identical output.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .core import ReconstructionSystem
from .errors import StructuralError

__all__ = [
    "dumps_canonical",
    "load_system",
    "matrix_to_pairs",
    "pairs_to_matrix",
    "save_system",
    "system_from_dict",
    "system_to_dict",
    "vector_to_pairs",
]


def matrix_to_pairs(a: np.ndarray) -> list:
    """Row-major nested lists with each complex entry as ``[re, im]``."""
    arr = np.asarray(a, dtype=np.complex128)
    return np.stack([arr.real, arr.imag], axis=-1).tolist()


def vector_to_pairs(v: np.ndarray) -> list:
    arr = np.asarray(v, dtype=np.complex128)
    return [[float(z.real), float(z.imag)] for z in arr]


def _entry(value, where: str) -> complex:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise StructuralError(f"{where}: each entry must be an [re, im] pair")
    if any(isinstance(part, bool) or not isinstance(part, (int, float))
           for part in value):
        raise StructuralError(f"{where}: entry parts must be numbers")
    re, im = float(value[0]), float(value[1])
    if not (math.isfinite(re) and math.isfinite(im)):
        raise StructuralError(f"{where}: entries must be finite")
    return complex(re, im)


def pairs_to_matrix(rows, expected_rows: int, expected_cols: int, where: str) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != expected_rows:
        raise StructuralError(f"{where}: expected {expected_rows} rows")
    out = np.zeros((expected_rows, expected_cols), dtype=np.complex128)
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != expected_cols:
            raise StructuralError(f"{where}, row {r}: expected {expected_cols} entries")
        for c, value in enumerate(row):
            out[r, c] = _entry(value, f"{where}, row {r}, column {c}")
    return out


def system_to_dict(system: ReconstructionSystem) -> dict:
    return {
        "d": system.d,
        "k": list(system.k),
        "blocks": [matrix_to_pairs(b) for b in system.blocks],
    }


def system_from_dict(payload) -> ReconstructionSystem:
    if not isinstance(payload, dict):
        raise StructuralError("system payload must be a JSON object")
    for key in ("d", "k", "blocks"):
        if key not in payload:
            raise StructuralError(f"system payload is missing key {key!r}")
    d = payload["d"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise StructuralError("'d' must be a positive integer")
    k = payload["k"]
    if (not isinstance(k, list) or not k
            or any(not isinstance(ki, int) or isinstance(ki, bool) or ki < 1 for ki in k)):
        raise StructuralError("'k' must be a non-empty list of positive integers")
    blocks = payload["blocks"]
    if not isinstance(blocks, list) or len(blocks) != len(k):
        raise StructuralError(f"'blocks' must list exactly {len(k)} blocks")
    matrices = [pairs_to_matrix(block, ki, d, f"block {i}")
                for i, (block, ki) in enumerate(zip(blocks, k))]
    return ReconstructionSystem(tuple(matrices))


def save_system(system: ReconstructionSystem, path) -> None:
    Path(path).write_text(dumps_canonical(system_to_dict(system)) + "\n", encoding="utf-8")


def load_system(path) -> ReconstructionSystem:
    """Load a system; malformed JSON raises ``json.JSONDecodeError`` with location."""
    text = Path(path).read_text(encoding="utf-8")
    return system_from_dict(json.loads(text))


def _write(value, out: list) -> None:
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, (int, np.integer)):
        out.append(str(int(value)))
    elif isinstance(value, (float, np.floating)):
        number = float(value)
        if not math.isfinite(number):
            raise StructuralError("cannot serialize non-finite float")
        out.append(format(number, ".17g"))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, item in enumerate(value):
            if i:
                out.append(",")
            _write(item, out)
        out.append("]")
    elif isinstance(value, dict):
        out.append("{")
        for i, key in enumerate(sorted(value)):
            if not isinstance(key, str):
                raise StructuralError("report keys must be strings")
            if i:
                out.append(",")
            out.append(json.dumps(key))
            out.append(":")
            _write(value[key], out)
        out.append("}")
    else:
        raise StructuralError(f"cannot serialize value of type {type(value).__name__}")


def dumps_canonical(value) -> str:
    """Deterministic JSON: sorted keys, floats at 17 significant digits."""
    out: list = []
    _write(value, out)
    return "".join(out)
