"""JSON file format for 4x4 density matrices.

::

    {"basis": "product" | "collective",
     "matrix": [[{"re": float, "im": float}, ...4], ...4]}

Plain numbers are accepted in place of ``{"re", "im"}`` objects.
"""
from __future__ import annotations

import json
import math

import numpy as np

from .dicke import BasisKind


class MatrixFileError(ValueError):
    pass


def _entry(value, i: int, j: int) -> complex:
    if isinstance(value, bool):
        raise MatrixFileError(f"entry [{i}][{j}] is a boolean")
    if isinstance(value, (int, float)):
        z = complex(value)
    elif isinstance(value, dict):
        extra = set(value) - {"re", "im"}
        if extra:
            raise MatrixFileError(f"entry [{i}][{j}] has unknown keys {sorted(extra)}")
        try:
            z = complex(float(value.get("re", 0.0)), float(value.get("im", 0.0)))
        except (TypeError, ValueError):
            raise MatrixFileError(f"entry [{i}][{j}] has non-numeric re/im") from None
    else:
        raise MatrixFileError(f"entry [{i}][{j}] must be a number or {{re, im}} object")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise MatrixFileError(f"entry [{i}][{j}] is not finite")
    return z


def parse_density_matrix(doc) -> tuple[np.ndarray, BasisKind | None]:
    """Validate a decoded JSON document; the basis is ``None`` if absent."""
    if not isinstance(doc, dict):
        raise MatrixFileError("top level must be a JSON object")
    basis = doc.get("basis")
    if basis is not None:
        try:
            basis = BasisKind(basis)
        except ValueError:
            raise MatrixFileError(f"unknown basis {basis!r}") from None
    rows = doc.get("matrix")
    if not isinstance(rows, list) or len(rows) != 4:
        raise MatrixFileError("'matrix' must be a list of 4 rows")
    m = np.zeros((4, 4), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != 4:
            raise MatrixFileError(f"row {i} must have 4 entries")
        for j, value in enumerate(row):
            m[i, j] = _entry(value, i, j)
    return m, basis


def read_density_matrix(path) -> tuple[np.ndarray, BasisKind | None]:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise MatrixFileError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"{path} is not valid JSON: {exc}") from None
    return parse_density_matrix(doc)


def dump_density_matrix(m, basis: BasisKind = BasisKind.PRODUCT) -> str:
    a = np.asarray(m, dtype=np.complex128)
    doc = {
        "basis": basis.value,
        "matrix": [[{"re": float(z.real), "im": float(z.imag)} for z in row] for row in a],
    }
    return json.dumps(doc, indent=2) + "\n"


def write_density_matrix(path, m, basis: BasisKind = BasisKind.PRODUCT) -> None:
    with open(path, "w") as fh:
        fh.write(dump_density_matrix(m, basis))
