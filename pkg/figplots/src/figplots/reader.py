"""CSV reading with row/column diagnostics.

Accepts the harness table format: optional leading ``# key=value`` comment
lines, a header row whose first column names the x axis, then numeric rows.
The reader knows nothing about how the tables were produced.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field


class CsvFormatError(Exception):
    """Malformed table; message carries the offending row/column."""


@dataclass
class Table:
    x_name: str
    labels: list
    x_values: list
    columns: list  # one list of floats per label
    metadata: dict = field(default_factory=dict)


def read_table(path) -> Table:
    try:
        with open(path, newline="") as fh:
            raw_lines = fh.read().splitlines()
    except OSError as exc:
        raise CsvFormatError(f"cannot read {path}: {exc}") from exc

    metadata = {}
    body = []
    body_numbers = []
    for lineno, line in enumerate(raw_lines, start=1):
        if line.startswith("#"):
            text = line.lstrip("#").strip()
            if "=" in text:
                key, _, value = text.partition("=")
                metadata[key.strip()] = value.strip()
            continue
        if line.strip():
            body.append(line)
            body_numbers.append(lineno)

    if not body:
        raise CsvFormatError(f"{path}: no header row found")
    rows = list(csv.reader(body))
    header = [h.strip() for h in rows[0]]
    if len(header) < 2:
        raise CsvFormatError(
            f"{path}: line {body_numbers[0]}: header needs an x column plus at least one "
            f"data column, got {len(header)} field(s)"
        )
    if len(rows) < 2:
        raise CsvFormatError(f"{path}: no data rows after the header")

    x_values = []
    columns = [[] for _ in header[1:]]
    for row, lineno in zip(rows[1:], body_numbers[1:]):
        if len(row) != len(header):
            raise CsvFormatError(
                f"{path}: line {lineno}: expected {len(header)} fields, got {len(row)}"
            )
        values = []
        for j, cell in enumerate(row):
            try:
                values.append(float(cell))
            except ValueError:
                raise CsvFormatError(
                    f"{path}: line {lineno}, column {j + 1} ({header[j]}): "
                    f"cannot parse {cell.strip()!r} as a number"
                ) from None
        x_values.append(values[0])
        for j, v in enumerate(values[1:]):
            columns[j].append(v)

    return Table(
        x_name=header[0],
        labels=header[1:],
        x_values=x_values,
        columns=columns,
        metadata=metadata,
    )
