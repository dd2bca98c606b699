"""Matrix and opinion-vector files: CSV, or JSON when the suffix is ``.json``."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .core import InfluenceMatrix, ValidationError, as_opinions, validate_influence_matrix


def _is_json(path) -> bool:
    return Path(path).suffix.lower() == ".json"


def _read_rows(path) -> list[list[float]]:
    path = Path(path)
    if _is_json(path):
        data = json.loads(path.read_text())
        if data and not isinstance(data[0], list):
            data = [data]
        return [[float(v) for v in row] for row in data]
    rows = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not c.strip() for c in row):
                continue
            try:
                rows.append([float(c) for c in row])
            except ValueError as exc:
                raise ValidationError(f"{path}: line {lineno}: {exc}") from None
    return rows


def read_matrix(path) -> InfluenceMatrix:
    rows = _read_rows(path)
    if len({len(r) for r in rows}) > 1:
        raise ValidationError(f"{path}: rows have unequal lengths")
    return validate_influence_matrix(np.array(rows, dtype=np.float64))


def read_opinions(path) -> np.ndarray:
    rows = _read_rows(path)
    if len(rows) != 1:
        raise ValidationError(f"{path}: expected a single row of opinions, got {len(rows)} rows")
    return as_opinions(rows[0])


def write_matrix(weights, path) -> None:
    w = np.asarray(weights)
    if _is_json(path):
        Path(path).write_text(json.dumps(w.tolist()))
        return
    with open(path, "w", newline="") as fh:
        csv.writer(fh).writerows([[repr(float(v)) for v in row] for row in w])


def write_vector(values, path) -> None:
    v = [float(a) for a in values]
    if _is_json(path):
        Path(path).write_text(json.dumps(v))
        return
    with open(path, "w", newline="") as fh:
        csv.writer(fh).writerow([repr(a) for a in v])
