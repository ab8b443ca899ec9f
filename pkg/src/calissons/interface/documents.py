"""Puzzle document parsing and result serialisation.

A puzzle document is a JSON object:

    {"region": {"type": "hexagon", "n": 2}
             | {"type": "boundary", "start": [u, v], "steps": ["+x", ...]}
             | {"type": "infinite"},
     "edges": [{"v": [u, v], "axis": "x"}, ...],
     "title": "...", "author": "..."}

Tiling files are JSON arrays of {"cube": [x, y, z], "normal": "x"}.
Every parse failure carries a machine-readable code and location.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from ..grid import (
    Axis,
    GridEdge,
    GridVertex,
    Region,
    RegionError,
    hexagon_region,
    parse_step,
    region_from_boundary,
)
from ..tiling import Tiling, tiling_from_json


class DocumentError(ValueError):
    def __init__(self, code: str, message: str, location: Optional[str] = None):
        super().__init__(message)
        self.code = code
        self.location = location

    def to_json(self) -> dict:
        return {
            "error": {
                "code": self.code,
                "message": str(self),
                "location": self.location,
            }
        }


@dataclass
class PuzzleDocument:
    region_spec: dict
    x_edges: list[GridEdge]
    title: Optional[str] = None
    author: Optional[str] = None
    _region: Optional[Region] = field(default=None, repr=False, compare=False)

    @property
    def is_infinite(self) -> bool:
        return self.region_spec["type"] == "infinite"

    def region(self) -> Region:
        if self.is_infinite:
            raise DocumentError("infinite_region", "this operation needs a finite region", "region")
        if self._region is None:
            spec = self.region_spec
            try:
                if spec["type"] == "hexagon":
                    self._region = hexagon_region(spec["n"])
                else:
                    start = tuple(spec["start"])
                    steps = [parse_step(s) for s in spec["steps"]]
                    self._region = region_from_boundary(start, steps)
            except RegionError as exc:
                raise DocumentError(exc.code, str(exc), "region") from exc
        return self._region

    def validate(self) -> None:
        """Resolve the region and every constrained edge, surfacing rule
        violations (edges on the boundary or outside) eagerly."""
        if self.is_infinite:
            return
        region = self.region()
        for i, edge in enumerate(self.x_edges):
            try:
                region.resolve_edge(edge)
            except RegionError as exc:
                raise DocumentError(exc.code, str(exc), f"edges[{i}]") from exc

    def to_json(self) -> dict:
        doc = {
            "region": self.region_spec,
            "edges": [
                {"v": [e.origin.u, e.origin.v], "axis": e.axis.letter}
                for e in sorted(self.x_edges)
            ],
        }
        if self.title is not None:
            doc["title"] = self.title
        if self.author is not None:
            doc["author"] = self.author
        return doc


def parse_document(data) -> PuzzleDocument:
    if not isinstance(data, dict):
        raise DocumentError("bad_document", "document must be a JSON object", "$")
    region = data.get("region")
    if not isinstance(region, dict) or "type" not in region:
        raise DocumentError("bad_region", "missing or malformed region", "region")
    rtype = region["type"]
    if rtype == "hexagon":
        n = region.get("n")
        if not isinstance(n, int) or n < 1:
            raise DocumentError("bad_region", "hexagon needs a positive integer n", "region.n")
        spec = {"type": "hexagon", "n": n}
    elif rtype == "boundary":
        start = region.get("start")
        steps = region.get("steps")
        if (
            not isinstance(start, list)
            or len(start) != 2
            or not all(isinstance(c, int) for c in start)
        ):
            raise DocumentError("bad_region", "boundary start must be [u, v]", "region.start")
        if not isinstance(steps, list) or not steps:
            raise DocumentError("bad_region", "boundary needs a step list", "region.steps")
        for i, s in enumerate(steps):
            try:
                parse_step(s)
            except (ValueError, TypeError) as exc:
                raise DocumentError("bad_step", str(exc), f"region.steps[{i}]") from exc
        spec = {"type": "boundary", "start": list(start), "steps": list(steps)}
    elif rtype == "infinite":
        spec = {"type": "infinite"}
    else:
        raise DocumentError("bad_region", f"unknown region type {rtype!r}", "region.type")

    edges = []
    raw_edges = data.get("edges", [])
    if not isinstance(raw_edges, list):
        raise DocumentError("bad_edges", "edges must be a list", "edges")
    for i, item in enumerate(raw_edges):
        loc = f"edges[{i}]"
        if not isinstance(item, dict):
            raise DocumentError("bad_edge", "edge must be an object", loc)
        v = item.get("v")
        axis = item.get("axis")
        if not isinstance(v, list) or len(v) != 2 or not all(isinstance(c, int) for c in v):
            raise DocumentError("bad_edge", "edge vertex must be [u, v]", loc)
        if axis not in ("x", "y", "z"):
            raise DocumentError("bad_edge", "edge axis must be x, y or z", loc)
        edges.append(GridEdge(GridVertex(v[0], v[1]), Axis("xyz".index(axis))))

    return PuzzleDocument(
        spec, sorted(set(edges)), data.get("title"), data.get("author")
    )


def load_document(text: str) -> PuzzleDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("bad_json", f"not valid JSON: {exc}", "$") from exc
    doc = parse_document(data)
    doc.validate()
    return doc


def load_tiling(text: str, region: Region) -> Tiling:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("bad_json", f"not valid JSON: {exc}", "$") from exc
    if not isinstance(data, list):
        raise DocumentError("bad_tiling", "tiling must be a JSON array", "$")
    for i, item in enumerate(data):
        if (
            not isinstance(item, dict)
            or not isinstance(item.get("cube"), list)
            or len(item["cube"]) != 3
            or not all(isinstance(c, int) for c in item["cube"])
            or item.get("normal") not in ("x", "y", "z")
        ):
            raise DocumentError("bad_tiling", "expected {cube: [x,y,z], normal: axis}", f"[{i}]")
    return tiling_from_json(region, data)


def dump_json(data) -> str:
    """Canonical JSON bytes shared by the CLI and the HTTP service."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"
