"""Matrix files.

JSON documents look like ``{"rows": 2, "cols": 2, "data": [[re, im], ...]}``
with the entries in row-major order.  CSV files (one matrix row per line)
are accepted on input; entries are real numbers or complex numbers written
``x+yi``.
"""

from __future__ import annotations

import csv
import io
import json
import re
from pathlib import Path

import numpy as np

from ..errors import ShapeError

_IMAG_ONLY = re.compile(r"^([+-]?)(\d*\.?\d*(?:[eE][+-]?\d+)?)i$")


def parse_entry(text: str) -> complex:
    """Parse ``"1.5"``, ``"-2i"``, ``"i"``, ``"3-4.5i"`` or ``"1e-3+2e-1i"``."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty matrix entry")
    m = _IMAG_ONLY.match(s)
    if m:
        sign, mag = m.groups()
        return complex(0.0, float(sign + (mag or "1")))
    if s.endswith("i"):
        s = s[:-1] + "j"
        # "1+i" -> "1+1j"
        if s[-2] in "+-":
            s = s[:-1] + "1j"
    return complex(s)


def matrix_to_dict(m) -> dict:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got shape {m.shape}")
    flat = m.reshape(-1)
    return {"rows": m.shape[0], "cols": m.shape[1], "data": [[float(z.real), float(z.imag)] for z in flat]}


def matrix_from_dict(doc: dict) -> np.ndarray:
    try:
        rows, cols, data = int(doc["rows"]), int(doc["cols"]), doc["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"matrix document needs rows, cols and data: {exc}") from None
    if len(data) != rows * cols:
        raise ShapeError(f"data holds {len(data)} entries, expected {rows}x{cols}")
    vals = []
    for entry in data:
        if isinstance(entry, (int, float)):
            vals.append(complex(entry))
        elif len(entry) == 2:
            vals.append(complex(float(entry[0]), float(entry[1])))
        else:
            raise ValueError(f"entry {entry!r} is not a [re, im] pair")
    return np.array(vals, dtype=complex).reshape(rows, cols)


def parse_csv(text: str) -> np.ndarray:
    rows = [[parse_entry(x) for x in row] for row in csv.reader(io.StringIO(text)) if any(c.strip() for c in row)]
    if not rows:
        raise ShapeError("CSV matrix is empty")
    width = {len(r) for r in rows}
    if len(width) != 1:
        raise ShapeError(f"CSV rows have differing lengths {sorted(width)}")
    return np.array(rows, dtype=complex)


def read_matrix(path: str | Path) -> np.ndarray:
    """Read a JSON or CSV matrix file; the format is sniffed from the content."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return matrix_from_dict(json.loads(text))
    return parse_csv(text)


def write_matrix(path: str | Path, m) -> None:
    Path(path).write_text(json.dumps(matrix_to_dict(m)) + "\n")
