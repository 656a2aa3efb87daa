"""Matrix files.

JSON (primary)::

    {"n": 2, "entries": [[[1.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [-1.0, 0.0]]]}

Plain text: n lines of n whitespace-separated complex tokens such as
``1``, ``-0.5+0.866i`` or ``2.0-1e-3i``.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from .hadamard import DEFAULT_TOL, HadamardMatrix, verify_hadamard


class MatrixFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


def dumps_matrix(mat) -> str:
    arr = np.asarray(mat, dtype=complex)
    entries = [[[float(z.real), float(z.imag)] for z in row] for row in arr]
    return json.dumps({"n": arr.shape[0], "entries": entries}) + "\n"


def write_matrix(path, mat) -> None:
    Path(path).write_text(dumps_matrix(mat))


def _loads_json(text: str) -> np.ndarray:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise MatrixFormatError(err.msg, err.lineno, err.colno) from None
    if not isinstance(obj, dict) or "entries" not in obj:
        raise MatrixFormatError('expected an object with "n" and "entries"')
    rows = obj["entries"]
    n = obj.get("n", len(rows))
    if len(rows) != n:
        raise MatrixFormatError(f'"n" is {n} but {len(rows)} rows are given')
    out = np.empty((n, n), dtype=complex)
    for r, row in enumerate(rows):
        if len(row) != n:
            raise MatrixFormatError(f"row {r + 1} has {len(row)} entries, expected {n}")
        for c, z in enumerate(row):
            try:
                real, imag = z
                out[r, c] = complex(float(real), float(imag))
            except (TypeError, ValueError):
                raise MatrixFormatError(f"entry ({r + 1},{c + 1}) is not a [re, im] pair") from None
    return out


def _loads_text(text: str) -> np.ndarray:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        row = []
        for match in re.finditer(r"\S+", line):
            tok = match.group()
            try:
                row.append(complex(tok.replace("i", "j")))
            except ValueError:
                raise MatrixFormatError(
                    f"cannot parse {tok!r} as a complex number", lineno, match.start() + 1) from None
        rows.append((lineno, row))
    n = len(rows)
    for lineno, row in rows:
        if len(row) != n:
            raise MatrixFormatError(f"expected {n} entries, found {len(row)}", lineno)
    return np.array([row for _, row in rows], dtype=complex).reshape(n, n)


def loads_matrix(text: str) -> np.ndarray:
    if text.lstrip().startswith("{"):
        return _loads_json(text)
    return _loads_text(text)


def read_matrix(path) -> np.ndarray:
    return loads_matrix(Path(path).read_text())


def parse_matrix_file(path, tol: float = DEFAULT_TOL) -> HadamardMatrix:
    """Read a matrix file and certify it as Hadamard.

    Raises :class:`MatrixFormatError` for malformed files and
    :class:`~hadsub.hadamard.NotHadamardError` if verification fails.
    """
    return verify_hadamard(read_matrix(path), tol)
