"""Deterministic tick-based simulator for per-process algorithms over a TVG.

Each tick runs fixed phases: (0) init at tick 0, (1) topology transitions,
(2) retry scan, (3) deliveries, (4) timers, (5) handlers. All same-tick work
is ordered by (phase, process id, neighbor/tag, invocation sequence), so a run
is a pure function of the TVG and the algorithm.

Send_retry semantics: a message crosses its edge during the earliest window
[d, d+latency) that is fully present with d at or after the invocation; until
such a window opens it waits in a per-edge retry queue. A disappearance mid
crossing would drop the message (messages carried by a vanishing edge are
lost), though with window-checked scheduling that path never triggers for the
built-in algorithms.
"""

from __future__ import annotations

import base64
import json
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Any, Callable

from tvg.core import StaticGraph, Tvg, VertexId, edge_key, underlying_graph
from tvg.errors import DomainError, SimulationError
from tvg.intervals import check_tick

MAX_PAYLOAD = 1 << 16


# ---------- events delivered to algorithms ----------

@dataclass(frozen=True)
class Init:
    pass


@dataclass(frozen=True)
class EdgeUp:
    neighbor: str


@dataclass(frozen=True)
class EdgeDown:
    neighbor: str


@dataclass(frozen=True)
class Deliver:
    sender: str
    payload: bytes


@dataclass(frozen=True)
class Timer:
    tag: str


EventIn = Init | EdgeUp | EdgeDown | Deliver | Timer


# ---------- commands issued by algorithms ----------

@dataclass(frozen=True)
class SendRetry:
    to: str
    payload: bytes


@dataclass(frozen=True)
class SetTimer:
    delay: int
    tag: str


@dataclass(frozen=True)
class SetOutput:
    graph: StaticGraph


Command = SendRetry | SetTimer | SetOutput


@dataclass(frozen=True)
class AlgorithmSpec:
    """Deterministic per-process algorithm.

    `init(pid, neighbors)` builds the initial state; `on_event(state, event)`
    must be pure and total over all event kinds, returning the new state and
    the commands to apply.
    """

    name: str
    init: Callable[[str, frozenset[str]], Any]
    on_event: Callable[[Any, EventIn], tuple[Any, list[Command]]]
    params: tuple[tuple[str, Any], ...] = ()


# ---------- traces ----------

@dataclass(frozen=True)
class OutputTrace:
    """Per-process output variable as a step function of time.

    Change lists are strictly increasing in tick; the value before the first
    change is the empty graph.
    """

    horizon: int
    changes: dict[str, tuple[tuple[int, StaticGraph], ...]]

    def output_at(self, p: VertexId, t: int) -> StaticGraph:
        if p not in self.changes:
            raise DomainError(f"unknown process {p!r}")
        check_tick(t)
        if t > self.horizon:
            raise DomainError(f"tick {t} beyond trace horizon {self.horizon}")
        seq = self.changes[p]
        i = bisect_right([c[0] for c in seq], t) - 1
        if i < 0:
            return StaticGraph(frozenset(), frozenset())
        return seq[i][1]

    def to_json(self) -> dict:
        return {
            "horizon": self.horizon,
            "outputs": {
                p: [[t, g.to_json()] for t, g in seq]
                for p, seq in sorted(self.changes.items())
            },
        }


def output_at(tr: OutputTrace, p: VertexId, t: int) -> StaticGraph:
    return tr.output_at(p, t)


@dataclass
class ExecutionTrace:
    """One JSON-able record per tick. Records contain only prefix-stable
    data (dispatched events, commands, topology transitions, output changes),
    never scheduler internals that look ahead of the current tick."""

    records: list[dict] = field(default_factory=list)

    def to_jsonl(self) -> str:
        return "".join(
            json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n" for r in self.records
        )

    def prefix(self, upto: int) -> list[dict]:
        """Records for ticks [0, upto)."""
        return [r for r in self.records if r["t"] < upto]


def _b64(payload: bytes) -> str:
    return base64.b64encode(payload).decode("ascii")


def _event_record(phase: int, pid: str, ev: EventIn) -> dict:
    rec: dict[str, Any] = {"phase": phase, "process": pid, "kind": type(ev).__name__}
    if isinstance(ev, (EdgeUp, EdgeDown)):
        rec["neighbor"] = ev.neighbor
    elif isinstance(ev, Deliver):
        rec["from"] = ev.sender
        rec["payload"] = _b64(ev.payload)
    elif isinstance(ev, Timer):
        rec["tag"] = ev.tag
    return rec


def _command_record(pid: str, cmd: Command) -> dict:
    rec: dict[str, Any] = {"process": pid, "kind": type(cmd).__name__}
    if isinstance(cmd, SendRetry):
        rec["to"] = cmd.to
        rec["payload"] = _b64(cmd.payload)
    elif isinstance(cmd, SetTimer):
        rec["delay"] = cmd.delay
        rec["tag"] = cmd.tag
    elif isinstance(cmd, SetOutput):
        rec["graph"] = cmd.graph.to_json()
    return rec


# ---------- the simulator ----------

class _Run:
    def __init__(self, g: Tvg, algo: AlgorithmSpec, horizon: int):
        if g.process_latency != 0:
            raise DomainError("simulation supports process latency 0 only")
        check_tick(horizon, "horizon")
        self.g = g
        self.algo = algo
        self.horizon = horizon
        self.pids = sorted(g.vertices)
        footprint = underlying_graph(g)
        self.neighbors = {p: footprint.neighbors(p) for p in self.pids}
        self.max_latency = max((e.latency for e in g.edges), default=1)
        limit = horizon + self.max_latency + 1
        self.present: dict[tuple, list[bool]] = {}
        self.feasible: dict[tuple, list[bool]] = {}
        for e in g.edges:
            arr = [False] * limit
            for iv in e.schedule.unroll(0, limit):
                for t in range(iv.start, iv.end):
                    arr[t] = True
            run_len = [0] * (limit + 1)
            for t in range(limit - 1, -1, -1):
                run_len[t] = run_len[t + 1] + 1 if arr[t] else 0
            self.present[e.key] = arr
            self.feasible[e.key] = [run_len[t] >= e.latency for t in range(limit)]
        # in_flight: due tick -> [(edge key, to, sender, payload, seq)]
        self.in_flight: dict[int, list[tuple]] = {}
        # pending retry queues per edge, FIFO by invocation seq
        self.pending: dict[tuple, list[tuple]] = {e.key: [] for e in g.edges}
        self.timers: dict[int, list[tuple]] = {}
        self.states = {p: algo.init(p, self.neighbors[p]) for p in self.pids}
        self.outputs = {p: StaticGraph(frozenset(), frozenset()) for p in self.pids}
        self.changes: dict[str, list[tuple[int, StaticGraph]]] = {p: [] for p in self.pids}
        self.seq = 0

    def next_seq(self) -> int:
        self.seq += 1
        return self.seq

    def execute(self) -> tuple[ExecutionTrace, OutputTrace]:
        trace = ExecutionTrace()
        for t in range(self.horizon + 1):
            trace.records.append(self.tick(t))
        out = OutputTrace(self.horizon, {p: tuple(c) for p, c in self.changes.items()})
        return trace, out

    def tick(self, t: int) -> dict:
        events: list[tuple[int, str, str, int, EventIn]] = []
        record: dict[str, Any] = {"t": t, "up": [], "down": []}

        if t == 0:
            for pid in self.pids:
                events.append((0, pid, "", 0, Init()))

        # phase 1: topology transitions at t (before tick 0 nothing exists)
        for e in self.g.edges:
            arr = self.present[e.key]
            was = arr[t - 1] if t > 0 else False
            now = arr[t]
            if was == now:
                continue
            name = f"{e.u}-{e.v}"
            if now:
                record["up"].append(name)
                events.append((1, e.u, e.v, 0, EdgeUp(e.v)))
                events.append((1, e.v, e.u, 0, EdgeUp(e.u)))
            else:
                record["down"].append(name)
                # messages still crossing a vanished edge are lost; a message
                # due exactly now already finished its window
                for due in list(self.in_flight):
                    if due > t:
                        kept = [m for m in self.in_flight[due] if m[0] != e.key]
                        if kept:
                            self.in_flight[due] = kept
                        else:
                            del self.in_flight[due]
                events.append((1, e.u, e.v, 0, EdgeDown(e.v)))
                events.append((1, e.v, e.u, 0, EdgeDown(e.u)))

        # phase 2: retry scan moves whole queues into flight when a full
        # crossing window opens at t
        for e in self.g.edges:
            queue = self.pending[e.key]
            if queue and self.feasible[e.key][t]:
                due = t + e.latency
                self.in_flight.setdefault(due, []).extend(queue)
                queue.clear()

        # phase 3: deliveries due now
        for key, to, sender, payload, seq in self.in_flight.pop(t, []):
            events.append((3, to, sender, seq, Deliver(sender, payload)))

        # phase 4: timers due now
        for pid, tag, seq in self.timers.pop(t, []):
            events.append((4, pid, tag, seq, Timer(tag)))

        # phase 5: handlers, in total deterministic order
        events.sort(key=lambda item: item[:4])
        record["events"] = [_event_record(ph, pid, ev) for ph, pid, _, _, ev in events]
        record["commands"] = []
        record["outputs"] = []
        for _, pid, _, _, ev in events:
            state, commands = self.algo.on_event(self.states[pid], ev)
            self.states[pid] = state
            for cmd in commands:
                record["commands"].append(_command_record(pid, cmd))
                self.apply(pid, cmd, t, record)
        return record

    def apply(self, pid: str, cmd: Command, t: int, record: dict) -> None:
        if isinstance(cmd, SendRetry):
            if cmd.to not in self.neighbors[pid]:
                raise SimulationError(
                    f"SendRetry to {cmd.to!r}, not a footprint neighbor of {pid!r}",
                    tick=t, process=pid,
                )
            if not isinstance(cmd.payload, bytes):
                raise SimulationError("SendRetry payload must be bytes", tick=t, process=pid)
            if len(cmd.payload) > MAX_PAYLOAD:
                raise SimulationError(
                    f"payload of {len(cmd.payload)} bytes exceeds cap {MAX_PAYLOAD}",
                    tick=t, process=pid,
                )
            key = edge_key(pid, cmd.to)
            edge = self.g.edge(key)
            msg = (key, cmd.to, pid, cmd.payload, self.next_seq())
            if t < len(self.feasible[key]) and self.feasible[key][t]:
                self.in_flight.setdefault(t + edge.latency, []).append(msg)
            else:
                self.pending[key].append(msg)
        elif isinstance(cmd, SetTimer):
            if not isinstance(cmd.delay, int) or cmd.delay < 1:
                raise SimulationError(f"timer delay must be >= 1, got {cmd.delay!r}",
                                      tick=t, process=pid)
            if not isinstance(cmd.tag, str):
                raise SimulationError("timer tag must be a string", tick=t, process=pid)
            self.timers.setdefault(t + cmd.delay, []).append((pid, cmd.tag, self.next_seq()))
        elif isinstance(cmd, SetOutput):
            if not isinstance(cmd.graph, StaticGraph):
                raise SimulationError("SetOutput value must be a StaticGraph",
                                      tick=t, process=pid)
            if cmd.graph != self.outputs[pid]:
                self.outputs[pid] = cmd.graph
                self.changes[pid].append((t, cmd.graph))
                record["outputs"].append({"process": pid, "graph": cmd.graph.to_json()})
        else:
            raise SimulationError(f"unknown command {cmd!r}", tick=t, process=pid)


def run(g: Tvg, algo: AlgorithmSpec, horizon: int) -> tuple[ExecutionTrace, OutputTrace]:
    """Simulate `algo` on `g` for ticks 0..horizon."""
    return _Run(g, algo, horizon).execute()
