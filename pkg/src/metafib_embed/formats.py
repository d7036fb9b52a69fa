"""Text formats for sequences and JSON loaders for recurrences."""
from __future__ import annotations

import json
from typing import Sequence

from .metafib import InitialCondition, InvalidMetaRecurrence, MetaFibRecurrence

FORMATS = ("bfile", "csv", "json")


def to_bfile(values: Sequence[int], start: int = 0) -> str:
    return "".join(f"{start + t} {v}\n" for t, v in enumerate(values))


def to_csv(values: Sequence[int], start: int = 0) -> str:
    return "n,value\n" + "".join(f"{start + t},{v}\n" for t, v in enumerate(values))


def to_json(values: Sequence[int], start: int = 0) -> str:
    return json.dumps({"n0": start, "values": list(values)}) + "\n"


def format_sequence(values: Sequence[int], start: int = 0, fmt: str = "bfile") -> str:
    if fmt == "bfile":
        return to_bfile(values, start)
    if fmt == "csv":
        return to_csv(values, start)
    if fmt == "json":
        return to_json(values, start)
    raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


def _parse_pairs(rows, sep) -> tuple[int, list[int]]:
    indices, values = [], []
    for lineno, row in rows:
        parts = row.split(sep) if sep else row.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'index value', got {row!r}")
        try:
            n, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer entry in {row!r}") from None
        if indices and n != indices[-1] + 1:
            raise ValueError(f"line {lineno}: index {n} does not follow {indices[-1]}")
        indices.append(n)
        values.append(v)
    return (indices[0] if indices else 0), values


def read_sequence(text: str) -> tuple[int, list[int]]:
    """Parse a b-file, CSV or JSON sequence dump into ``(start, values)``."""
    stripped = text.lstrip()
    if stripped.startswith(("{", "[")):
        obj = json.loads(text)
        if isinstance(obj, list):
            return 0, [int(v) for v in obj]
        if "values" not in obj:
            raise ValueError("JSON sequence needs a 'values' array")
        return int(obj.get("n0", 0)), [int(v) for v in obj["values"]]
    rows = [
        (i, line.strip())
        for i, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if rows and rows[0][1].replace(" ", "").lower() == "n,value":
        return _parse_pairs(rows[1:], ",")
    return _parse_pairs(rows, None)


def meta_from_json(obj) -> tuple[MetaFibRecurrence, InitialCondition]:
    """Load ``{"n0", "coeffs", "initial"}``; a construction bundle's ``meta`` also works."""
    if isinstance(obj, dict) and "meta" in obj:
        obj = obj["meta"]
    if not isinstance(obj, dict):
        raise InvalidMetaRecurrence("recurrence must be a JSON object")
    missing = {"coeffs", "initial"} - obj.keys()
    if missing:
        raise InvalidMetaRecurrence(f"missing field(s): {', '.join(sorted(missing))}")
    if not isinstance(obj["coeffs"], list) or not isinstance(obj["initial"], list):
        raise InvalidMetaRecurrence("coeffs and initial must be arrays")
    rec = MetaFibRecurrence(tuple(obj["coeffs"]), obj.get("n0", 0))
    init = InitialCondition(rec.n0, tuple(obj["initial"]))
    if len(init.values) < rec.K:
        raise InvalidMetaRecurrence(
            f"initial condition has {len(init.values)} values, needs at least K={rec.K}"
        )
    return rec, init
