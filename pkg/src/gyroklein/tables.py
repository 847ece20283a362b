"""Reading and writing Cayley tables.

Text format: the first line is ``n``, followed by ``n`` lines of ``n``
whitespace-separated indices; row ``a`` lists ``a+0, ..., a+(n-1)``.
Lines starting with ``#`` are ignored. The JSON alternative is
``{"n": n, "table": [[...], ...]}``.
"""

from __future__ import annotations

import json
import pathlib
from typing import Sequence

from .errors import TableFormatError

Table = tuple[tuple[int, ...], ...]


def check_table(rows: Sequence[Sequence[int]], n: int | None = None) -> Table:
    """Return ``rows`` as a tuple table after checking shape and index range."""
    if n is None:
        n = len(rows)
    if n < 1:
        raise TableFormatError("table must have at least one element")
    if len(rows) != n:
        raise TableFormatError(f"expected {n} rows, got {len(rows)}")
    out = []
    for a, row in enumerate(rows):
        if len(row) != n:
            raise TableFormatError(f"row {a} has {len(row)} entries, expected {n}")
        try:
            vals = tuple(int(x) for x in row)
        except (TypeError, ValueError) as exc:
            raise TableFormatError(f"row {a}: non-integer entry") from exc
        if any(x != y for x, y in zip(vals, row)) or any(not 0 <= x < n for x in vals):
            raise TableFormatError(f"row {a}: entries must be integers in 0..{n - 1}")
        out.append(vals)
    return tuple(out)


def parse_table_text(text: str) -> Table:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise TableFormatError("empty table file")
    try:
        n = int(lines[0])
        rows = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise TableFormatError(f"non-integer token: {exc}") from exc
    return check_table(rows, n)


def parse_table_json(text: str) -> Table:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or "table" not in data:
        raise TableFormatError('JSON table must be an object with a "table" key')
    rows = data["table"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise TableFormatError('"table" must be a list of lists')
    n = data.get("n", len(rows))
    if not isinstance(n, int):
        raise TableFormatError('"n" must be an integer')
    return check_table(rows, n)


def read_table(path: str | pathlib.Path) -> Table:
    path = pathlib.Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise TableFormatError(f"cannot read {path}: {exc}") from exc
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        return parse_table_json(text)
    return parse_table_text(text)


def format_table(table: Sequence[Sequence[int]]) -> str:
    width = len(str(len(table) - 1))
    lines = [str(len(table))]
    lines += [" ".join(str(x).rjust(width) for x in row) for row in table]
    return "\n".join(lines) + "\n"


def write_table(path: str | pathlib.Path, table: Sequence[Sequence[int]], header: str = "") -> None:
    text = format_table(table)
    if header:
        text = "".join(f"# {ln}\n" for ln in header.splitlines()) + text
    pathlib.Path(path).write_text(text)


def cyclic_table(n: int) -> Table:
    """Cayley table of the cyclic group Z_n."""
    return tuple(tuple((a + b) % n for b in range(n)) for a in range(n))


def direct_product_table(t1: Table, t2: Table) -> Table:
    """Table of the direct product; element ``(x, y)`` has index ``x * len(t2) + y``."""
    n1, n2 = len(t1), len(t2)
    rows = []
    for a in range(n1 * n2):
        a1, a2 = divmod(a, n2)
        rows.append(tuple(t1[a1][b // n2] * n2 + t2[a2][b % n2] for b in range(n1 * n2)))
    return tuple(rows)
