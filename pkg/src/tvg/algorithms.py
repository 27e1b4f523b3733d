"""Built-in eventual-footprint candidate algorithms for the simulator.

Both are deterministic flooding protocols over Send_retry. `echo-footprint`
never forgets, so its outputs converge to the full underlying graph and it
can never shed an edge that died. `local-flood-window(W)` ages knowledge out
after W ticks, which makes it shed dead edges but also makes it re-adopt any
edge the adversary briefly revives.
"""

from __future__ import annotations

import json
from typing import Any

from tvg.core import EdgeKey, StaticGraph, edge_key
from tvg.errors import DomainError
from tvg.sim import (
    AlgorithmSpec,
    Command,
    Deliver,
    EdgeDown,
    EdgeUp,
    EventIn,
    Init,
    SendRetry,
    SetOutput,
    SetTimer,
    Timer,
)


def _graph_of(edges: set[EdgeKey] | frozenset[EdgeKey], pid: str) -> StaticGraph:
    vertices = {pid}
    for u, v in edges:
        vertices.add(u)
        vertices.add(v)
    return StaticGraph(frozenset(vertices), frozenset(edges))


# ---------- echo-footprint ----------

def _echo_payload(known: frozenset[EdgeKey]) -> bytes:
    return json.dumps({"edges": sorted(list(k) for k in known)},
                      sort_keys=True, separators=(",", ":")).encode()


def _echo_decode(payload: bytes) -> frozenset[EdgeKey]:
    data = json.loads(payload.decode())
    return frozenset((u, v) for u, v in data["edges"])


def _echo_init(pid: str, neighbors: frozenset[str]) -> dict:
    return {
        "pid": pid,
        "neighbors": tuple(sorted(neighbors)),
        "known": frozenset(edge_key(pid, n) for n in neighbors),
    }


def _echo_flood(state: dict) -> list[Command]:
    payload = _echo_payload(state["known"])
    return [SendRetry(n, payload) for n in state["neighbors"]]


def _echo_on_event(state: dict, ev: EventIn) -> tuple[dict, list[Command]]:
    if isinstance(ev, Init):
        return state, [SetOutput(_graph_of(state["known"], state["pid"]))] + _echo_flood(state)
    if isinstance(ev, Deliver):
        merged = state["known"] | _echo_decode(ev.payload)
        if merged != state["known"]:
            state = dict(state, known=merged)
            return state, [SetOutput(_graph_of(merged, state["pid"]))] + _echo_flood(state)
        return state, []
    return state, []


# ---------- local-flood-window ----------

def _lfw_payload(table: dict[EdgeKey, int]) -> bytes:
    return json.dumps({"seen": sorted([u, v, t] for (u, v), t in table.items())},
                      sort_keys=True, separators=(",", ":")).encode()


def _lfw_decode(payload: bytes) -> dict[EdgeKey, int]:
    data = json.loads(payload.decode())
    return {(u, v): t for u, v, t in data["seen"]}


def _lfw_init(window: int):
    def init(pid: str, neighbors: frozenset[str]) -> dict:
        return {
            "pid": pid,
            "neighbors": tuple(sorted(neighbors)),
            "window": window,
            "up": frozenset(),
            "table": {},      # edge key -> last tick the edge was known present
            "snapshot": {},   # table as of the end of the previous tick
            "flooded": None,  # table content at the last flood
            "now": 0,
        }
    return init


def _lfw_flood(state: dict) -> tuple[dict, list[Command]]:
    state = dict(state, flooded=dict(state["table"]))
    payload = _lfw_payload(state["table"])
    return state, [SendRetry(n, payload) for n in state["neighbors"]]


def _lfw_on_event(state: dict, ev: EventIn) -> tuple[dict, list[Command]]:
    if isinstance(ev, Init):
        return state, [SetTimer(1, "tick")]
    if isinstance(ev, EdgeUp):
        # the per-tick timer has fired for every past tick, so the current
        # tick is now + 1 (at tick 0 this overshoots by one, harmlessly)
        cur = state["now"] + 1
        key = edge_key(state["pid"], ev.neighbor)
        table = dict(state["table"])
        table[key] = max(table.get(key, 0), cur)
        state = dict(state, up=state["up"] | {ev.neighbor}, table=table)
        state, sends = _lfw_flood(state)
        return state, sends
    if isinstance(ev, EdgeDown):
        return dict(state, up=state["up"] - {ev.neighbor}), []
    if isinstance(ev, Deliver):
        remote = _lfw_decode(ev.payload)
        table = dict(state["table"])
        for key, stamp in remote.items():
            if stamp > table.get(key, -1):
                table[key] = stamp
        return dict(state, table=table), []
    if isinstance(ev, Timer):
        now = state["now"] + 1
        # publish from the previous tick's snapshot, then fold in this tick
        w = state["window"]
        visible = {k for k, stamp in state["snapshot"].items() if now - stamp <= w}
        table = dict(state["table"])
        for n in sorted(state["up"]):
            key = edge_key(state["pid"], n)
            table[key] = max(table.get(key, 0), now)
        state = dict(state, now=now, table=table, snapshot=dict(table))
        commands: list[Command] = [SetOutput(_graph_of(visible, state["pid"]))]
        if state["table"] != state["flooded"]:
            state, sends = _lfw_flood(state)
            commands += sends
        commands.append(SetTimer(1, "tick"))
        return state, commands
    return state, []


# ---------- catalog ----------

def builtin_algorithms() -> dict[str, dict]:
    """Catalog of built-in algorithms and their parameters."""
    return {
        "echo-footprint": {"params": {}},
        "local-flood-window": {"params": {"W": "positive int, knowledge age-out window"}},
    }


def get_algorithm(name: str, params: dict[str, Any] | None = None) -> AlgorithmSpec:
    params = dict(params or {})
    if name == "echo-footprint":
        if params:
            raise DomainError(f"echo-footprint takes no parameters, got {params}")
        return AlgorithmSpec("echo-footprint", _echo_init, _echo_on_event)
    if name == "local-flood-window":
        window = params.pop("W", 8)
        if params:
            raise DomainError(f"unknown parameters {params} for local-flood-window")
        if not isinstance(window, int) or window < 1:
            raise DomainError(f"W must be a positive integer, got {window!r}")
        return AlgorithmSpec(
            "local-flood-window",
            _lfw_init(window),
            _lfw_on_event,
            params=(("W", window),),
        )
    raise DomainError(f"unknown algorithm {name!r}")
