"""CSV/JSON serialization with lossless floats.

CSV files use a comma separator, a header row and LF line endings.  Floats
are written with 17 significant digits so every double reads back
bit-identically.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import IO, Iterable, Mapping, Optional, Sequence, Union

import numpy as np

PathLike = Union[str, Path]


def format_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v) or math.isinf(v):
            return repr(v)
        text = format(v, ".17g")
        # keep floats recognisable as floats (and -0.0 signed) on the way back
        return text if any(ch in text for ch in ".en") else text + ".0"
    return str(v)


def parse_value(text: str):
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def write_csv(rows: Iterable[Mapping], out: Union[PathLike, IO[str], None] = None, columns: Optional[Sequence[str]] = None) -> str:
    """Write ``rows`` as CSV to a path, an open stream or (``None``) a string."""
    rows = list(rows)
    if columns is None:
        columns = list(rows[0].keys()) if rows else []
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row[c]) for c in columns])
    text = buf.getvalue()
    _emit(text, out)
    return text


def read_csv(source: Union[PathLike, IO[str]]) -> list[dict]:
    if isinstance(source, (str, Path)):
        with open(source, newline="") as fh:
            return read_csv(fh)
    reader = csv.reader(source)
    header = next(reader)
    return [dict(zip(header, (parse_value(x) for x in line))) for line in reader]


def _jsonable(obj):
    if isinstance(obj, Mapping):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    return obj


def write_json(record, out: Union[PathLike, IO[str], None] = None) -> str:
    # json emits floats via repr, which already round-trips exactly
    text = json.dumps(_jsonable(record), indent=2, sort_keys=False) + "\n"
    _emit(text, out)
    return text


def read_json(source: Union[PathLike, IO[str]]):
    if isinstance(source, (str, Path)):
        with open(source) as fh:
            return json.load(fh)
    return json.load(source)


def _emit(text: str, out):
    if out is None:
        return
    if out == "-":
        sys.stdout.write(text)
    elif isinstance(out, (str, Path)):
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)
