"""JSON and CSV serialization for matrices, vectors, Kraus lists, profiles.

Matrices travel as {"rows", "cols", "re", "im"} with row-major nested-list
parts; bipartite vectors are column matrices carrying their factor shape in
extra "n"/"m" keys.  Schema violations raise SchemaError (not ValueError,
so callers can tell malformed input apart from domain errors).
"""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from .linalg import BipartiteDims
from .thresholds import ThresholdProfile


class SchemaError(RuntimeError):
    """Structurally invalid payload: wrong keys, shapes, or non-finite data."""


def _as_float_grid(part: Any, rows: int, cols: int, label: str) -> np.ndarray:
    if not isinstance(part, list) or len(part) != rows:
        raise SchemaError(f"'{label}' must be a list of {rows} rows")
    grid = np.empty((rows, cols))
    for i, row in enumerate(part):
        if not isinstance(row, list) or len(row) != cols:
            raise SchemaError(f"'{label}' row {i} must be a list of {cols} numbers")
        for j, entry in enumerate(row):
            if isinstance(entry, bool) or not isinstance(entry, (int, float)):
                raise SchemaError(f"'{label}'[{i}][{j}] is not a number")
            if not math.isfinite(entry):
                raise SchemaError(f"'{label}'[{i}][{j}] is not finite")
            grid[i, j] = float(entry)
    return grid


def matrix_from_obj(obj: Any) -> np.ndarray:
    """Decode one matrix object; complex128 result of shape (rows, cols)."""
    if not isinstance(obj, dict):
        raise SchemaError("matrix payload must be a JSON object")
    missing = {"rows", "cols", "re", "im"} - set(obj)
    if missing:
        raise SchemaError(f"matrix payload missing keys: {sorted(missing)}")
    rows, cols = obj["rows"], obj["cols"]
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 1 or cols < 1:
        raise SchemaError("'rows' and 'cols' must be positive integers")
    re = _as_float_grid(obj["re"], rows, cols, "re")
    im = _as_float_grid(obj["im"], rows, cols, "im")
    return re + 1j * im


def matrix_to_obj(mat: np.ndarray) -> dict:
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2:
        raise ValueError("expected a 2-d array")
    if not np.all(np.isfinite(mat.real)) or not np.all(np.isfinite(mat.imag)):
        raise ValueError("refusing to serialize non-finite entries")
    return {
        "rows": int(mat.shape[0]),
        "cols": int(mat.shape[1]),
        "re": mat.real.tolist(),
        "im": mat.imag.tolist(),
    }


def load_matrix(path: str) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        return matrix_from_obj(json.load(fh))


def dump_matrix(mat: np.ndarray, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(matrix_to_obj(mat), fh)
        fh.write("\n")


def vector_from_obj(obj: Any) -> tuple[np.ndarray, BipartiteDims]:
    """Decode a bipartite vector: a column matrix plus factor dims n, m."""
    mat = matrix_from_obj(obj)
    if mat.shape[1] != 1:
        raise SchemaError("vector payload must have cols == 1")
    for key in ("n", "m"):
        if key not in obj:
            raise SchemaError(f"vector payload missing key: '{key}'")
        if not isinstance(obj[key], int) or obj[key] < 1:
            raise SchemaError(f"'{key}' must be a positive integer")
    dims = BipartiteDims(obj["n"], obj["m"])
    if dims.total != mat.shape[0]:
        raise SchemaError(
            f"rows={mat.shape[0]} does not match n*m={dims.total}"
        )
    return mat[:, 0].copy(), dims


def vector_to_obj(vec: np.ndarray, dims: BipartiteDims) -> dict:
    vec = np.asarray(vec, dtype=complex).reshape(-1)
    if vec.size != dims.total:
        raise ValueError(f"vector length {vec.size} does not match dims {dims}")
    obj = matrix_to_obj(vec.reshape(-1, 1))
    obj["n"] = dims.n
    obj["m"] = dims.m
    return obj


def load_vector(path: str) -> tuple[np.ndarray, BipartiteDims]:
    with open(path, encoding="utf-8") as fh:
        return vector_from_obj(json.load(fh))


def kraus_from_obj(obj: Any) -> list[np.ndarray]:
    """Decode a Kraus list: a JSON array of equally-shaped matrix objects."""
    if not isinstance(obj, list) or not obj:
        raise SchemaError("Kraus payload must be a nonempty JSON array")
    ops = [matrix_from_obj(entry) for entry in obj]
    shape = ops[0].shape
    for i, op in enumerate(ops):
        if op.shape != shape:
            raise SchemaError(
                f"Kraus operator {i} has shape {op.shape}, expected {shape}"
            )
    return ops


def load_kraus(path: str) -> list[np.ndarray]:
    with open(path, encoding="utf-8") as fh:
        return kraus_from_obj(json.load(fh))


def profile_to_csv(profile: ThresholdProfile) -> str:
    """Render a threshold profile as CSV with full-precision floats."""
    lines = ["alpha,t_star,f_d"]
    for alpha, t_star, fid in profile.rows():
        lines.append(f"{alpha!r},{t_star!r},{fid!r}")
    return "\n".join(lines) + "\n"
