"""Deterministic artifact emission: JSON lines and CSV with a metadata line.

Every artifact opens with a metadata line carrying version, seed, and the
resolved run configuration, so each output file is enough to reproduce
itself. Nothing time- or host-dependent is ever written: a rerun with the
same seed and configuration is byte-identical.

Formats: JSONL puts the metadata as a first-line object under a "meta" key
and one compact JSON object (or array) per record after it; CSV puts the
metadata as a "# "-prefixed comment line above the header row; single-
document JSON carries a "meta" key next to the payload.
"""

from __future__ import annotations

import csv
import json
from typing import IO, Iterable, Sequence


def build_metadata(seed: int | None, config: dict) -> dict:
    from . import __version__

    return {"version": __version__, "seed": seed, "config": config}


def _compact(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def format_cell(value) -> str:
    """Deterministic CSV cell rendering: shortest round-trip repr for
    floats, plain str otherwise."""
    if isinstance(value, bool):
        raise TypeError("boolean cells are ambiguous; render explicitly")
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_jsonl(stream: IO[str], meta: dict, records: Iterable) -> None:
    stream.write(_compact({"meta": meta}) + "\n")
    for record in records:
        stream.write(_compact(record) + "\n")


def write_csv(stream: IO[str], meta: dict, columns: Sequence[str], rows: Iterable[Sequence]) -> None:
    stream.write("# " + _compact(meta) + "\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_cell(cell) for cell in row])


def write_json_doc(stream: IO[str], meta: dict, payload: dict) -> None:
    stream.write(json.dumps({"meta": meta, **payload}, indent=2) + "\n")
