"""CSV ingestion and serialization of results."""

import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .exceptions import EmptyResultError, InvalidInputError, MissingColumnError, ParseError

MISSING_POLICIES = ("error", "drop_row")


@dataclass(frozen=True)
class DataMatrix:
    """Selected CSV columns, one float array per column."""

    column_names: tuple
    columns: tuple
    source: str
    dropped_rows: int = 0

    def __getitem__(self, name):
        return self.columns[self.column_names.index(name)]

    def select(self, names):
        return [self[name] for name in names]


def _parse_cell(text):
    text = text.strip()
    if not text:
        return None
    try:
        value = float(text)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def load_csv(path, columns=None, missing_policy="error"):
    """Read numeric columns from a headed UTF-8 CSV file (``"-"`` reads stdin).

    Parameters
    ----------
    columns : sequence of str, optional
        Columns to keep, in this order; all columns by default.
    missing_policy : {"error", "drop_row"}
        Blank, non-numeric or non-finite cells in a selected column either
        raise :class:`ParseError` or drop their row.
    """
    if missing_policy not in MISSING_POLICIES:
        raise InvalidInputError(f"missing_policy must be one of {MISSING_POLICIES}")
    if path == "-":
        return _read(sys.stdin, "stdin", columns, missing_policy)
    with open(path, newline="", encoding="utf-8") as fh:
        return _read(fh, str(path), columns, missing_policy)


def _read(fh, source, columns, missing_policy):
    reader = csv.reader(fh)
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise EmptyResultError(f"{source} is empty") from None
    if len(set(header)) != len(header):
        raise InvalidInputError(f"{source} has duplicate column names")
    names = list(header) if columns is None else list(columns)
    missing = [c for c in names if c not in header]
    if missing:
        raise MissingColumnError(f"columns not found in {source}: {', '.join(missing)}")
    if len(set(names)) != len(names):
        raise InvalidInputError("selected columns must be unique")
    idx = [header.index(c) for c in names]

    rows, dropped = [], 0
    for lineno, record in enumerate(reader, start=2):
        if not record or all(not cell.strip() for cell in record):
            continue
        values = []
        for name, i in zip(names, idx):
            value = _parse_cell(record[i]) if i < len(record) else None
            if value is None:
                if missing_policy == "error":
                    cell = record[i] if i < len(record) else ""
                    raise ParseError(f"{source}: row {lineno}, column {name!r}: cannot parse {cell!r}",
                                     row=lineno, column=name)
                break
            values.append(value)
        else:
            rows.append(values)
            continue
        dropped += 1
    if len(rows) < 2:
        raise EmptyResultError(f"{source}: fewer than 2 usable rows")
    data = np.asarray(rows, dtype=float)
    return DataMatrix(column_names=tuple(names), columns=tuple(data.T.copy()), source=source,
                      dropped_rows=dropped)


def format_value(value):
    """Shortest round-trip text for numbers; booleans as true/false."""
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def write_csv(fh, header, rows):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) for v in row])


def to_json(obj):
    return json.dumps(_plain(obj), indent=2, sort_keys=False)


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def grid_rows(grid):
    """Rows ``(beta, gamma, mcc, feasible)`` of a surface grid, beta-major."""
    for i, beta in enumerate(grid.angles):
        for j, gamma in enumerate(grid.angles):
            yield beta, gamma, grid.mcc[i, j], grid.feasible[i, j]


GRID_HEADER = ("beta", "gamma", "mcc", "feasible")


def write_grid(fh, grid):
    write_csv(fh, GRID_HEADER, grid_rows(grid))


def read_grid(fh):
    """Parse a grid CSV written by :func:`write_grid` into column arrays."""
    reader = csv.DictReader(fh)
    beta, gamma, mcc, feasible = [], [], [], []
    for rec in reader:
        beta.append(float(rec["beta"]))
        gamma.append(float(rec["gamma"]))
        mcc.append(float(rec["mcc"]))
        feasible.append(rec["feasible"] == "true")
    return np.array(beta), np.array(gamma), np.array(mcc), np.array(feasible)


def grid_to_text(grid):
    buf = io.StringIO()
    write_grid(buf, grid)
    return buf.getvalue()
