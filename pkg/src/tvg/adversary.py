"""Adversarial construction against eventual-footprint candidates.

Given a connected-over-time base TVG with an eventual missing edge e and a
deterministic candidate algorithm, each round simulates the candidate, waits
for e to leave every output (eta, the first all-quiet tick), revives e forever
to learn when it re-enters every output (alpha), then splices e present only
on [eta, alpha). The resulting sequence has strictly growing common prefixes
while the candidate's outputs flip e in and out, which is the finite-scale
shadow of the impossibility argument.
"""

from __future__ import annotations

from dataclasses import dataclass

from tvg.algorithms import AlgorithmSpec
from tvg.core import (
    EdgeKey,
    Tvg,
    eventual_missing_edges,
    global_base,
    is_cot,
    is_tree,
    oplus,
    underlying_graph,
)
from tvg.errors import DomainError
from tvg.intervals import INF, TimeSpec, check_tick
from tvg.metric import lambda_graph, limit_construct
from tvg.sim import OutputTrace, run


@dataclass(frozen=True)
class Inconclusive:
    """A detection step could not complete; carries the evidence."""

    reason: str


@dataclass(frozen=True)
class EtaResult:
    eta: int
    vacuous: bool = False


@dataclass(frozen=True)
class Round:
    index: int
    g: Tvg
    eta: int
    eta_vacuous: bool
    g_prime: Tvg
    alpha: int
    g_next: Tvg
    lambda_consecutive: int | float


@dataclass
class AdversaryReport:
    edge: EdgeKey
    algorithm: str
    params: tuple
    rounds_requested: int
    quiescence: int
    horizon: int
    base: Tvg
    rounds: list[Round]
    verdict: str                 # "defeated" | "inconclusive"
    reason: str | None = None
    flip_count: int | None = None
    limit_prefix: Tvg | None = None

    def to_json(self) -> dict:
        return {
            "edge": list(self.edge),
            "algorithm": self.algorithm,
            "params": {k: v for k, v in self.params},
            "rounds_requested": self.rounds_requested,
            "quiescence": self.quiescence,
            "horizon": self.horizon,
            "verdict": self.verdict,
            "reason": self.reason,
            "flip_count": self.flip_count,
            "rounds": [
                {
                    "index": r.index,
                    "eta": r.eta,
                    "eta_vacuous": r.eta_vacuous,
                    "alpha": r.alpha,
                    "lambda_consecutive": r.lambda_consecutive,
                }
                for r in self.rounds
            ],
        }


def _membership_segments(tr: OutputTrace, e: EdgeKey) -> list[tuple[int, str]]:
    """Compressed (start_tick, class) segments of e's output membership,
    class in {"all", "none", "mixed"}."""
    ticks = {0}
    for seq in tr.changes.values():
        ticks |= {t for t, _ in seq}
    segments: list[tuple[int, str]] = []
    for t in sorted(ticks):
        member = [e in tr.output_at(p, t).edges for p in tr.changes]
        cls = "all" if all(member) else ("none" if not any(member) else "mixed")
        if not segments or segments[-1][1] != cls:
            segments.append((t, cls))
    return segments


def flip_count(tr: OutputTrace, e: EdgeKey) -> int:
    """Alternations between "e in all outputs" and "e in no output" over the
    trace; mixed stretches in between do not reset the alternation."""
    reduced: list[str] = []
    for _, cls in _membership_segments(tr, e):
        if cls == "mixed":
            continue
        if not reduced or reduced[-1] != cls:
            reduced.append(cls)
    return max(len(reduced) - 1, 0)


def find_eta(
    g: Tvg, algo: AlgorithmSpec, e: EdgeKey, quiescence: int, horizon: int
) -> EtaResult | Inconclusive:
    """First tick at which e has left every output for good (within the
    horizon): one past the last tick e appears in any output.

    The quiet stretch must span `quiescence` ticks inside the horizon and must
    start after both the global transient and e's last presence, so the splice
    at eta genuinely flips the presence function there. If e never leaves the
    outputs the candidate is already violating the eventual-footprint contract
    on g itself, since e is eventually missing.
    """
    if e not in eventual_missing_edges(g):
        raise DomainError(f"edge {e} is not an eventual missing edge of this TVG")
    if not is_cot(g):
        raise DomainError("base TVG is not connected-over-time")
    check_tick(quiescence, "quiescence")
    _, trace = run(g, algo, horizon)
    segments = _membership_segments(trace, e)
    last_presence = g.edge(e).schedule.last_presence()
    base = global_base(g)
    if all(cls == "none" for _, cls in segments):
        eta = max(base, int(last_presence) + 1)
        if eta + quiescence - 1 > horizon:
            return Inconclusive(
                f"candidate never outputs {e}; vacuous eta {eta} leaves no room for "
                f"a quiescence window of {quiescence} before horizon {horizon}"
            )
        return EtaResult(eta, vacuous=True)
    if segments[-1][1] != "none":
        return Inconclusive(
            f"edge {e} is still in some output at the horizon; the candidate appears to "
            "violate the eventual-footprint contract on this graph (the edge is eventually missing)"
        )
    eta = segments[-1][0]
    if eta + quiescence - 1 > horizon:
        return Inconclusive(
            f"only {horizon - eta + 1} quiet ticks observed after eta {eta}, "
            f"need {quiescence}; raise the horizon"
        )
    if eta <= last_presence:
        return Inconclusive(
            f"quiet window starts at {eta}, not after the edge's last presence {last_presence}"
        )
    if eta < base:
        return Inconclusive(
            f"quiet window starts at {eta}, inside the global transient (max base {base})"
        )
    return EtaResult(eta, vacuous=False)


def find_alpha(
    g_prime: Tvg, algo: AlgorithmSpec, e: EdgeKey, eta: int, horizon: int
) -> int | Inconclusive:
    """Smallest tick strictly past eta at which e is in every process's
    output of the run on g_prime (where e is revived forever from eta)."""
    if e in eventual_missing_edges(g_prime):
        raise DomainError(f"edge {e} is still eventually missing in the revived TVG")
    _, trace = run(g_prime, algo, horizon)
    segments = _membership_segments(trace, e)
    for i, (start, cls) in enumerate(segments):
        if cls != "all":
            continue
        end = segments[i + 1][0] - 1 if i + 1 < len(segments) else horizon
        if end > eta:
            return max(start, eta + 1)
    return Inconclusive(
        f"edge {e} never re-enters all outputs by horizon {horizon}; the candidate "
        "appears to violate the eventual-footprint contract on the revived graph "
        "(the edge is recurring there)"
    )


def run_adversary(
    base: Tvg,
    e: EdgeKey,
    algo: AlgorithmSpec,
    rounds: int,
    quiescence: int,
    horizon: int,
) -> AdversaryReport:
    """Iterate the construction `rounds` times and report the evidence."""
    if e not in eventual_missing_edges(base):
        raise DomainError(f"edge {e} is not an eventual missing edge of the base TVG")
    if not is_cot(base):
        raise DomainError("base TVG is not connected-over-time")
    if is_tree(underlying_graph(base)):
        raise DomainError("tree footprints cannot carry an eventual missing edge of a COT TVG")

    report = AdversaryReport(
        edge=e,
        algorithm=algo.name,
        params=algo.params,
        rounds_requested=rounds,
        quiescence=quiescence,
        horizon=horizon,
        base=base,
        rounds=[],
        verdict="inconclusive",
    )
    footprint = underlying_graph(base)
    g = base
    for i in range(rounds):
        eta_res = find_eta(g, algo, e, quiescence, horizon)
        if isinstance(eta_res, Inconclusive):
            report.reason = f"round {i}: {eta_res.reason}"
            return report
        eta = eta_res.eta
        if report.rounds and eta <= report.rounds[-1].alpha:
            report.reason = (
                f"round {i}: eta {eta} does not interleave past the previous alpha "
                f"{report.rounds[-1].alpha}"
            )
            return report
        g_prime = oplus(g, [(e, TimeSpec.from_pairs([(eta, INF)]))])
        alpha_res = find_alpha(g_prime, algo, e, eta, horizon)
        if isinstance(alpha_res, Inconclusive):
            report.reason = f"round {i}: {alpha_res.reason}"
            return report
        alpha = alpha_res
        g_next = oplus(g, [(e, TimeSpec.from_pairs([(eta, alpha)]))])
        if underlying_graph(g_next) != footprint:
            report.reason = f"round {i}: splice changed the footprint"
            return report
        if e not in eventual_missing_edges(g_next):
            report.reason = f"round {i}: splice made the edge recurring"
            return report
        lam = lambda_graph(g, g_next)
        if lam != eta:
            report.reason = f"round {i}: consecutive lambda {lam} differs from eta {eta}"
            return report
        report.rounds.append(Round(i, g, eta, eta_res.vacuous, g_prime, alpha, g_next, lam))
        g = g_next

    _, final_trace = run(g, algo, horizon)
    report.flip_count = flip_count(final_trace, e)
    if report.rounds:
        last = report.rounds[-1]
        tail = {e: TimeSpec.from_pairs([(last.eta, last.alpha)])}
        report.limit_prefix = limit_construct([r.g for r in report.rounds] + [g], tail)
    else:
        report.limit_prefix = base
    if report.flip_count >= rounds:
        report.verdict = "defeated"
        report.reason = None
    else:
        report.reason = (
            f"only {report.flip_count} output flips recorded, need {rounds}"
        )
    return report
