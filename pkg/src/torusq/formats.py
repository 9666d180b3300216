"""JSON embedding files.

Layout::

    {"components": [
        {"voxels": [[x, y, z], ...],
         "marking": {"m": [[x, y, z], ...], "l": [[x, y, z], ...]},
         "box_margin": 2,              # optional
         "core": [[x, y, z], ...]}     # optional, tube fixtures only
    ]}

Marking loops list lattice vertices; voxels and cores list voxel indices.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any

from .cubical import EdgeCycle, VoxelSolid
from .embedding import DEFAULT_BOX_MARGIN, MarkedTorusEmbedding, SystemEmbedding
from .errors import InputError, InvalidPath
from .fixtures import LatticePath


_TRIPLE = re.compile(r"\[\s*(-?\d+),\s*(-?\d+),\s*(-?\d+)\s*\]")


@dataclass(frozen=True)
class EmbeddingDocument:
    system: SystemEmbedding
    cores: tuple[LatticePath | None, ...]


def _points(value: Any, where: str) -> list[tuple[int, int, int]]:
    if not isinstance(value, list):
        raise InputError(f"{where}: expected a list of [x, y, z] triples")
    out = []
    for i, p in enumerate(value):
        if not (isinstance(p, list) and len(p) == 3 and all(isinstance(c, int) and not isinstance(c, bool) for c in p)):
            raise InputError(f"{where}[{i}]: expected [x, y, z] with integer coordinates, got {p!r}")
        out.append((p[0], p[1], p[2]))
    return out


def _cycle(value: Any, where: str) -> EdgeCycle:
    try:
        return EdgeCycle(tuple(_points(value, where)))
    except InvalidPath as exc:
        raise InputError(f"{where}: {exc}") from exc


def parse_embedding(text: str, box_margin: int | None = None) -> EmbeddingDocument:
    """Parse an embedding file; a given ``box_margin`` overrides every component's value."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("components"), list):
        raise InputError("top level: expected an object with a 'components' list")
    comps = []
    cores: list[LatticePath | None] = []
    for i, raw in enumerate(doc["components"]):
        where = f"components[{i}]"
        if not isinstance(raw, dict):
            raise InputError(f"{where}: expected an object")
        unknown = set(raw) - {"voxels", "marking", "box_margin", "core"}
        if unknown:
            raise InputError(f"{where}: unknown field(s) {sorted(unknown)}")
        if "voxels" not in raw or "marking" not in raw:
            raise InputError(f"{where}: 'voxels' and 'marking' are required")
        voxels = _points(raw["voxels"], f"{where}.voxels")
        if not voxels:
            raise InputError(f"{where}.voxels: empty solid")
        marking = raw["marking"]
        if not isinstance(marking, dict) or set(marking) != {"m", "l"}:
            raise InputError(f"{where}.marking: expected exactly the keys 'm' and 'l'")
        m = _cycle(marking["m"], f"{where}.marking.m")
        l = _cycle(marking["l"], f"{where}.marking.l")
        margin = box_margin if box_margin is not None else raw.get("box_margin", DEFAULT_BOX_MARGIN)
        if not isinstance(margin, int) or isinstance(margin, bool):
            raise InputError(f"{where}.box_margin: expected an integer")
        core = None
        if "core" in raw:
            try:
                core = LatticePath(tuple(_points(raw["core"], f"{where}.core")))
            except InvalidPath as exc:
                raise InputError(f"{where}.core: {exc}") from exc
        comps.append(MarkedTorusEmbedding(VoxelSolid(frozenset(voxels)), m, l, margin))
        cores.append(core)
    return EmbeddingDocument(SystemEmbedding(tuple(comps)), tuple(cores))


def _triples(points) -> list[list[int]]:
    return [list(p) for p in points]


def dump_embedding(system: SystemEmbedding, cores: tuple[LatticePath | None, ...] | None = None) -> str:
    comps = []
    for i, e in enumerate(system.components):
        entry: dict[str, Any] = {
            "voxels": _triples(sorted(e.solid.voxels)),
            "marking": {"m": _triples(e.m_cycle.vertices), "l": _triples(e.l_cycle.vertices)},
            "box_margin": e.box_margin,
        }
        if cores and cores[i] is not None:
            entry["core"] = _triples(cores[i].points)
        comps.append(entry)
    text = json.dumps({"components": comps}, indent=2)
    return _TRIPLE.sub(r"[\1, \2, \3]", text) + "\n"
