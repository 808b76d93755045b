"""
@file core/artifacts.py
@brief CSV and JSON writers for run artifacts.

@details
CSV files use '.' decimals, '\\n' line endings and UTF-8 with a mandatory
header row. JSON documents are written with sorted keys so reruns with the
same inputs are byte-identical; non-finite floats become null.
"""

import csv
import io
import json
import math
from pathlib import Path

import numpy as np
from django.core.serializers.json import DjangoJSONEncoder


class LabJSONEncoder(DjangoJSONEncoder):
    """
    @brief DjangoJSONEncoder that also understands numpy scalars and arrays.
    """

    def default(self, o):
        if isinstance(o, np.ndarray):
            return jsonable(o.tolist())
        if isinstance(o, np.generic):
            return jsonable(o.item())
        if isinstance(o, Path):
            return str(o)
        return super().default(o)


def jsonable(value):
    """
    @brief Recursively replaces inf/nan by None and numpy containers by lists.
    """
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def dumps(document, **kwargs):
    kwargs.setdefault("indent", 2)
    return json.dumps(jsonable(document), cls=LabJSONEncoder, sort_keys=True, allow_nan=False, **kwargs)


def write_json(path, document):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(document) + "\n", encoding="utf-8")
    return path


def csv_text(header, rows):
    """
    @brief Renders header and rows as CSV text.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if v is None else repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buffer.getvalue()


def write_csv(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        handle.write(csv_text(header, rows))
    return path
