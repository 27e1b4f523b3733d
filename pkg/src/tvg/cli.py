"""Command-line front end.

Exit codes: 0 success, 1 bad input, 2 algorithm contract violation during
simulation, 3 inconclusive adversary verdict.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from tvg.adversary import run_adversary
from tvg.algorithms import get_algorithm
from tvg.core import (
    StaticGraph,
    edge_key,
    eventual_missing_edges,
    eventual_underlying_graph,
    is_cot,
    is_tree,
    underlying_graph,
)
from tvg.errors import SimulationError, TvgError
from tvg.generate import generate_tvg
from tvg.intervals import is_finite
from tvg.journeys import earliest_arrival, exists_temporal_path
from tvg.metric import distance, lambda_graph, sequence_check
from tvg.sim import run
from tvg.tvg_io import load_tvg, serialize_tvg, tvg_to_json


def _emit(data: dict, out: str | None) -> None:
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_params(pairs: list[str]) -> dict:
    params = {}
    for pair in pairs:
        if "=" not in pair:
            raise TvgError(f"--param expects NAME=VALUE, got {pair!r}")
        name, value = pair.split("=", 1)
        try:
            params[name] = int(value)
        except ValueError:
            params[name] = value
    return params


def _parse_edge(text: str) -> tuple[str, str]:
    if "-" not in text:
        raise TvgError(f"--edge expects U-V, got {text!r}")
    u, v = text.split("-", 1)
    return edge_key(u, v)


def cmd_info(args) -> int:
    g = load_tvg(args.graph)
    footprint = underlying_graph(g)
    missing = eventual_missing_edges(g)
    report = {
        "underlying_graph": footprint.to_json(),
        "eventual_underlying_graph": eventual_underlying_graph(g).to_json(),
        "eventual_missing_edges": [list(k) for k in sorted(missing)],
        "is_cot": is_cot(g),
        "footprint_is_tree": is_tree(footprint),
    }
    if is_tree(footprint) and missing:
        report["note"] = (
            "a tree footprint with an eventual missing edge cannot be "
            "connected-over-time: losing any tree edge disconnects the eventual footprint"
        )
    _emit(report, args.out)
    return 0


def cmd_dist(args) -> int:
    a = load_tvg(args.a)
    b = load_tvg(args.b)
    lam = lambda_graph(a, b)
    d = distance(lam)
    lam_text = "inf" if not is_finite(lam) else str(lam)
    sys.stdout.write(f"lambda={lam_text} distance={d} approx={d.approx}\n")
    return 0


def cmd_reach(args) -> int:
    g = load_tvg(args.graph)
    path = exists_temporal_path(g, args.src, args.dst, args.after)
    arrival = earliest_arrival(g, args.src, args.dst, args.after)
    _emit(
        {
            "from": args.src,
            "to": args.dst,
            "after": args.after,
            "arrival": "inf" if not is_finite(arrival) else arrival,
            "hops": None if path is None else [
                {"edge": list(key), "departure": dep} for key, dep in path.hops
            ],
        },
        args.out,
    )
    return 0


def cmd_sim(args) -> int:
    g = load_tvg(args.graph)
    algo = get_algorithm(args.algo, _parse_params(args.param))
    trace, outputs = run(g, algo, args.horizon)
    if args.trace:
        Path(args.trace).write_text(trace.to_jsonl())
    _emit(outputs.to_json(), args.out)
    return 0


def cmd_adversary(args) -> int:
    g = load_tvg(args.graph)
    algo = get_algorithm(args.algo, _parse_params(args.param))
    report = run_adversary(
        g, _parse_edge(args.edge), algo, args.rounds, args.quiescence, args.horizon
    )
    out = Path(args.out) if args.out else None
    doc = report.to_json()
    if out:
        stem = out.with_suffix("")
        files = {}
        for r in report.rounds:
            path = Path(f"{stem}_round{r.index}.json")
            path.write_text(serialize_tvg(r.g))
            files[f"g{r.index}"] = str(path)
        if report.rounds:
            path = Path(f"{stem}_round{len(report.rounds)}.json")
            path.write_text(serialize_tvg(report.rounds[-1].g_next))
            files[f"g{len(report.rounds)}"] = str(path)
        if report.limit_prefix is not None:
            path = Path(f"{stem}_limit.json")
            path.write_text(serialize_tvg(report.limit_prefix))
            files["limit_prefix"] = str(path)
        doc["files"] = files
    _emit(doc, args.out)
    return 0 if report.verdict == "defeated" else 3


def cmd_seqcheck(args) -> int:
    gs = [load_tvg(p) for p in args.graphs]
    _emit(sequence_check(gs).to_json(), args.out)
    return 0


def cmd_generate(args) -> int:
    edges = [tuple(e.split("-", 1)) for e in args.footprint.split(",") if e]
    vertices = {v for e in edges for v in e}
    footprint = StaticGraph.make(vertices, edges)
    g = generate_tvg(args.seed, footprint, args.period, args.density)
    text = serialize_tvg(g)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tvg", description="time-varying graph analysis, simulation, and adversarial runs"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="footprints, missing edges, COT verdict")
    p.add_argument("graph")
    p.add_argument("--out")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("dist", help="prefix distance between two comparable TVGs")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("reach", help="temporal reachability query")
    p.add_argument("graph")
    p.add_argument("--from", dest="src", required=True)
    p.add_argument("--to", dest="dst", required=True)
    p.add_argument("--after", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_reach)

    p = sub.add_parser("sim", help="run an algorithm over a TVG")
    p.add_argument("graph")
    p.add_argument("--algo", required=True)
    p.add_argument("--param", action="append", default=[])
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--trace", help="write per-tick JSONL execution trace here")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("adversary", help="run the counterexample construction")
    p.add_argument("graph")
    p.add_argument("--edge", required=True, help="target eventual missing edge, as U-V")
    p.add_argument("--algo", required=True)
    p.add_argument("--param", action="append", default=[])
    p.add_argument("--rounds", type=int, default=3)
    p.add_argument("--quiescence", type=int, default=32)
    p.add_argument("--horizon", type=int, default=5000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_adversary)

    p = sub.add_parser("seqcheck", help="convergence report for a TVG sequence")
    p.add_argument("graphs", nargs="+")
    p.add_argument("--out")
    p.set_defaults(func=cmd_seqcheck)

    p = sub.add_parser("generate", help="seeded random COT instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--footprint", required=True, help="comma-separated edges, e.g. a-b,b-c,c-a")
    p.add_argument("--period", type=int, default=8)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SimulationError as exc:
        sys.stderr.write(f"simulation error: {exc}\n")
        return 2
    except TvgError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
