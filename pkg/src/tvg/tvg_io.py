"""JSON (de)serialization of TVGs.

Document shape:

    { "vertices": ["a","b","c"],
      "process_latency": 0,
      "edges": [ { "u":"a", "v":"b", "latency":1,
                   "transient":[[0,2]], "base":2, "period":3, "pattern":[[0,1]] } ] }

Intervals serialize as [start, end] meaning the half-open [start, end).
Unknown fields are rejected; "transient", "base", "period" and "pattern" may
be omitted (defaults: none, end of the transient, 1, none).
"""

from __future__ import annotations

import json
from pathlib import Path

from tvg.core import Edge, Tvg
from tvg.errors import FormatError, TvgError
from tvg.schedule import PresenceSchedule

_EDGE_FIELDS = {"u", "v", "latency", "transient", "base", "period", "pattern"}
_TOP_FIELDS = {"vertices", "process_latency", "edges"}


def _intervals(raw, where: str) -> list[tuple[int, int]]:
    if not isinstance(raw, list):
        raise FormatError(f"{where}: expected a list of [start, end] pairs")
    out = []
    for item in raw:
        if not (isinstance(item, list) and len(item) == 2):
            raise FormatError(f"{where}: expected [start, end], got {item!r}")
        s, e = item
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (s, e)):
            raise FormatError(f"{where}: interval bounds must be integers, got {item!r}")
        if not 0 <= s < e:
            raise FormatError(f"{where}: bad interval [{s}, {e})")
        out.append((s, e))
    return out


def parse_tvg(doc: dict | str) -> Tvg:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("top-level value must be an object")
    unknown = set(doc) - _TOP_FIELDS
    if unknown:
        raise FormatError(f"unknown top-level fields: {sorted(unknown)}")
    vertices = doc.get("vertices")
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise FormatError('"vertices" must be a list of strings')
    if len(set(vertices)) != len(vertices):
        raise FormatError("duplicate vertex ids")
    process_latency = doc.get("process_latency", 0)
    if not isinstance(process_latency, int) or isinstance(process_latency, bool) or process_latency < 0:
        raise FormatError('"process_latency" must be a non-negative integer')
    raw_edges = doc.get("edges", [])
    if not isinstance(raw_edges, list):
        raise FormatError('"edges" must be a list')
    edges = []
    for i, raw in enumerate(raw_edges):
        where = f"edges[{i}]"
        if not isinstance(raw, dict):
            raise FormatError(f"{where}: expected an object")
        unknown = set(raw) - _EDGE_FIELDS
        if unknown:
            raise FormatError(f"{where}: unknown fields {sorted(unknown)}")
        for req in ("u", "v", "latency"):
            if req not in raw:
                raise FormatError(f"{where}: missing required field {req!r}")
        u, v = raw["u"], raw["v"]
        if not (isinstance(u, str) and isinstance(v, str)):
            raise FormatError(f"{where}: endpoints must be strings")
        latency = raw["latency"]
        if not isinstance(latency, int) or isinstance(latency, bool):
            raise FormatError(f"{where}: latency must be an integer")
        transient = _intervals(raw.get("transient", []), f"{where}.transient")
        pattern = _intervals(raw.get("pattern", []), f"{where}.pattern")
        base = raw.get("base", max((e for _, e in transient), default=0))
        period = raw.get("period", 1)
        try:
            sched = PresenceSchedule.make(transient, base, period, pattern)
            edges.append(Edge.make(u, v, latency, sched))
        except TvgError as exc:
            raise FormatError(f"{where}: {exc}") from None
    try:
        return Tvg.make(vertices, edges, process_latency)
    except TvgError as exc:
        raise FormatError(str(exc)) from None


def tvg_to_json(g: Tvg) -> dict:
    return {
        "vertices": sorted(g.vertices),
        "process_latency": g.process_latency,
        "edges": [
            {
                "u": e.u,
                "v": e.v,
                "latency": e.latency,
                "transient": e.schedule.transient.pairs(),
                "base": e.schedule.base,
                "period": e.schedule.period,
                "pattern": e.schedule.pattern.pairs(),
            }
            for e in g.edges
        ],
    }


def serialize_tvg(g: Tvg) -> str:
    return json.dumps(tvg_to_json(g), indent=2, sort_keys=True) + "\n"


def load_tvg(path: str | Path) -> Tvg:
    return parse_tvg(Path(path).read_text())


def save_tvg(g: Tvg, path: str | Path) -> None:
    Path(path).write_text(serialize_tvg(g))
