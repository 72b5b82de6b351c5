"""Canonical on-disk form of a decomposition plus schedule.

One JSON document::

    {"cycles": [[0, 1], ...], "kind": "near-hamiltonian", "n": 3, "roots": [0, ...]}

Vertex values are always canonical residues 0..n-1 (signed labels are a
display convention and never serialized).  Serialization is bit-canonical --
sorted keys, no insignificant whitespace, newline-terminated -- so re-encoding
a parsed document reproduces it byte for byte.

Parsing validates structure only (types, vertex ranges, root ranges, loop
edges); whether the cycles actually decompose K*_n is the verifier's job, so
files describing broken candidates load fine and fail verification instead.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .core import (
    CycleKind,
    Decomposition,
    DirectedCycle,
    LoopEdgeError,
    NomadicError,
    NomadSchedule,
    MIN_ORDER,
)


class FileFormatError(NomadicError):
    """A decomposition document is malformed; the message names the spot."""


def to_document(decomposition: Decomposition, schedule: NomadSchedule) -> dict[str, Any]:
    return {
        "n": decomposition.n,
        "kind": decomposition.kind.value,
        "cycles": [list(cycle.values) for cycle in decomposition.cycles],
        "roots": list(schedule.roots),
    }


def serialize(decomposition: Decomposition, schedule: NomadSchedule) -> str:
    """Canonical JSON text for the pair (stable under round-trips)."""
    document = to_document(decomposition, schedule)
    return json.dumps(document, sort_keys=True, separators=(",", ":")) + "\n"


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise FileFormatError(message)


def from_document(document: Any) -> tuple[Decomposition, NomadSchedule]:
    _require(isinstance(document, dict), "top level must be a JSON object")
    for key in ("n", "kind", "cycles", "roots"):
        _require(key in document, f"missing field {key!r}")
    n = document["n"]
    _require(isinstance(n, int) and not isinstance(n, bool), "field 'n': must be an integer")
    _require(n >= MIN_ORDER, f"field 'n': must be >= {MIN_ORDER}, got {n}")
    kind_value = document["kind"]
    try:
        kind = CycleKind(kind_value)
    except ValueError:
        expected = ", ".join(repr(k.value) for k in CycleKind)
        raise FileFormatError(f"field 'kind': expected one of {expected}, got {kind_value!r}")
    raw_cycles = document["cycles"]
    _require(isinstance(raw_cycles, list) and raw_cycles, "field 'cycles': must be a non-empty array")
    cycles = []
    for i, raw in enumerate(raw_cycles):
        _require(isinstance(raw, list), f"cycles[{i}]: must be an array of vertex values")
        _require(len(raw) >= 2, f"cycles[{i}]: a cycle visits at least two vertices")
        for pos, v in enumerate(raw):
            _require(
                isinstance(v, int) and not isinstance(v, bool),
                f"cycles[{i}][{pos}]: vertex must be an integer",
            )
            _require(
                0 <= v < n,
                f"cycles[{i}][{pos}]: vertex {v} out of range for n={n}",
            )
        try:
            cycles.append(DirectedCycle(tuple(raw), n))
        except LoopEdgeError as exc:
            raise FileFormatError(f"cycles[{i}]: {exc}") from exc
    raw_roots = document["roots"]
    _require(isinstance(raw_roots, list), "field 'roots': must be an array")
    _require(
        len(raw_roots) == len(cycles),
        f"field 'roots': {len(raw_roots)} roots for {len(cycles)} cycles",
    )
    for i, root in enumerate(raw_roots):
        _require(
            isinstance(root, int) and not isinstance(root, bool),
            f"roots[{i}]: root must be an integer",
        )
        _require(
            0 <= root < cycles[i].length,
            f"roots[{i}]: root {root} out of range for cycle of length {cycles[i].length}",
        )
    return Decomposition(n, kind, tuple(cycles)), NomadSchedule(tuple(raw_roots))


def deserialize(text: str) -> tuple[Decomposition, NomadSchedule]:
    """Parse canonical (or any) JSON text into a decomposition and schedule."""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return from_document(document)


def save(path: str | Path, decomposition: Decomposition, schedule: NomadSchedule) -> None:
    Path(path).write_text(serialize(decomposition, schedule), encoding="utf-8")


def load(path: str | Path) -> tuple[Decomposition, NomadSchedule]:
    try:
        return deserialize(Path(path).read_text(encoding="utf-8"))
    except FileFormatError as exc:
        raise FileFormatError(f"{path}: {exc}") from exc
