"""Prefix ultrametrics over TVGs and over execution outputs.

The canonical representation of a distance is the agreement length lambda:
two objects agree on [0, lambda) and differ at tick lambda (INF when they
coincide everywhere). The dyadic value 2^-lambda is derived, never compared:
lambda up to millions would underflow binary64 while integer comparison stays
exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

from tvg.core import EMPTY_GRAPH, Edge, EdgeKey, Tvg
from tvg.errors import DomainError, IncomparableError
from tvg.intervals import INF, IntervalSet, TimeSpec, first_difference, is_finite
from tvg.schedule import from_absolute, normalize, rebase, PresenceSchedule
from tvg.sim import OutputTrace


@dataclass(frozen=True)
class DyadicDistance:
    """Exact lambda plus a binary64 approximation of 2^-lambda."""

    lam: int | float
    approx: float

    def __str__(self) -> str:
        if not is_finite(self.lam):
            return "0"
        return f"2^-{self.lam}"


def distance(lam: int | float) -> DyadicDistance:
    if not is_finite(lam):
        return DyadicDistance(INF, 0.0)
    try:
        approx = 2.0 ** (-lam)
    except OverflowError:
        approx = 0.0
    return DyadicDistance(lam, approx)


def check_comparable(g: Tvg, g2: Tvg) -> None:
    """TVG distances are defined within one family: same vertices, edge ids
    and endpoints, latencies, and process latency."""
    if g.vertices != g2.vertices:
        raise IncomparableError("incomparable TVGs: vertex sets differ")
    if [e.key for e in g.edges] != [e.key for e in g2.edges]:
        raise IncomparableError("incomparable TVGs: edge sets differ")
    for a, b in zip(g.edges, g2.edges):
        if a.latency != b.latency:
            raise IncomparableError(f"incomparable TVGs: latency differs on {a.key}")
    if g.process_latency != g2.process_latency:
        raise IncomparableError("incomparable TVGs: process latency differs")


def comparison_horizon(g: Tvg, g2: Tvg) -> int:
    """Agreement past max(base, base') + 2 lcm(period, period') on every edge
    implies agreement everywhere: beyond both bases the presences are jointly
    periodic, and one full common period of agreement pins the tail."""
    h = 0
    for a, b in zip(g.edges, g2.edges):
        h = max(
            h,
            max(a.schedule.base, b.schedule.base) + 2 * lcm(a.schedule.period, b.schedule.period),
        )
    return h


def lambda_graph(g: Tvg, g2: Tvg) -> int | float:
    """First tick at which some edge's presence differs; INF iff the two
    presence functions coincide on all of [0, inf)."""
    check_comparable(g, g2)
    horizon = comparison_horizon(g, g2)
    best: int | float = INF
    for a, b in zip(g.edges, g2.edges):
        if a.schedule == b.schedule:
            continue
        diff = first_difference(
            a.schedule.unroll(0, horizon), b.schedule.unroll(0, horizon), horizon
        )
        if diff is not None and diff < best:
            best = diff
    return best


@dataclass(frozen=True)
class TraceLambda:
    """Agreement length of two output traces over a common finite horizon.

    Finite traces cannot certify agreement forever, so a trace with no
    observed divergence is right-censored: the true lambda is at least
    `horizon`. `bound` is the value safe to use in comparisons either way.
    """

    divergence: int | None
    horizon: int

    @property
    def censored(self) -> bool:
        return self.divergence is None

    @property
    def bound(self) -> int:
        return self.horizon if self.divergence is None else self.divergence

    def __str__(self) -> str:
        return f">={self.horizon}" if self.censored else str(self.divergence)


def lambda_output(tr: OutputTrace, tr2: OutputTrace) -> TraceLambda:
    """First tick at which any process's output value differs."""
    if tr.horizon != tr2.horizon:
        raise DomainError("output traces have different horizons")
    if set(tr.changes) != set(tr2.changes):
        raise DomainError("output traces cover different vertex sets")
    best: int | None = None
    for p in tr.changes:
        d = _step_function_divergence(tr.changes[p], tr2.changes[p], tr.horizon)
        if d is not None and (best is None or d < best):
            best = d
    return TraceLambda(best, tr.horizon)


def _step_function_divergence(a, b, horizon: int) -> int | None:
    """First tick <= horizon where two change lists denote different values.
    Before any change the value is the empty graph on both sides."""
    ticks = sorted({t for t, _ in a} | {t for t, _ in b})
    ia = ib = -1
    for t in ticks:
        if t > horizon:
            break
        while ia + 1 < len(a) and a[ia + 1][0] <= t:
            ia += 1
        while ib + 1 < len(b) and b[ib + 1][0] <= t:
            ib += 1
        va = a[ia][1] if ia >= 0 else EMPTY_GRAPH
        vb = b[ib][1] if ib >= 0 else EMPTY_GRAPH
        if va != vb:
            return t
    return None


@dataclass(frozen=True)
class CauchyVerdict:
    scale: int                 # epsilon = 2^-scale
    cauchy: bool
    witness: int | None        # smallest tail index with pairwise d < epsilon


@dataclass
class SequenceReport:
    """Convergence analysis of a finite TVG sequence."""

    consecutive: list[int | float]
    matrix: list[list[int | float]]
    verdicts: list[CauchyVerdict]
    ultrametric_ok: bool
    limit: Tvg | None = None

    def to_json(self) -> dict:
        def enc(x):
            return "inf" if not is_finite(x) else x

        return {
            "length": len(self.matrix),
            "consecutive_lambdas": [enc(x) for x in self.consecutive],
            "lambda_matrix": [[enc(x) for x in row] for row in self.matrix],
            "cauchy": [
                {"epsilon": f"2^-{v.scale}", "cauchy": v.cauchy, "witness": v.witness}
                for v in self.verdicts
            ],
            "ultrametric_ok": self.ultrametric_ok,
        }


def sequence_check(gs: list[Tvg], max_scale: int = 16) -> SequenceReport:
    """Pairwise lambda matrix, per-epsilon Cauchy verdicts within the finite
    sequence, and a strong-triangle consistency check."""
    if len(gs) < 2:
        raise DomainError("need at least two TVGs")
    n = len(gs)
    matrix = [[INF] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lam = lambda_graph(gs[i], gs[j])
            matrix[i][j] = matrix[j][i] = lam
    consecutive = [matrix[i][i + 1] for i in range(n - 1)]
    ok = True
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if matrix[i][k] < min(matrix[i][j], matrix[j][k]):
                    ok = False
    verdicts = []
    for scale in range(1, max_scale + 1):
        witness = None
        # d < 2^-scale on the whole tail <=> every pairwise lambda > scale;
        # a tail needs at least two elements, else the verdict is vacuous
        for start in range(n - 1):
            if all(matrix[i][j] > scale for i in range(start, n) for j in range(i + 1, n)):
                witness = start
                break
        verdicts.append(CauchyVerdict(scale, witness is not None, witness))
    return SequenceReport(consecutive, matrix, verdicts, ok)


def limit_construct(gs: list[Tvg], tail_rule: dict[EdgeKey, TimeSpec] | None = None) -> Tvg:
    """Limit of a growing-prefix sequence, closed by the caller's tail rule.

    The result matches the last element on [0, P) where P is the final
    consecutive agreement length; beyond P, edges listed in tail_rule are
    present exactly on their TimeSpec while unlisted edges continue the last
    element's schedule. Finite inputs cannot determine the tail, hence the
    explicit closure.
    """
    if len(gs) < 2:
        raise DomainError("need at least two TVGs")
    tail_rule = tail_rule or {}
    for key in tail_rule:
        gs[0].edge(key)
    consecutive = [lambda_graph(gs[i], gs[i + 1]) for i in range(len(gs) - 1)]
    # Strictly increasing while finite; INF (equal elements) only as a tail.
    for a, b in zip(consecutive, consecutive[1:]):
        if is_finite(b):
            if not a < b:
                raise DomainError("not a growing-prefix sequence")
        elif is_finite(a) and a >= b:
            raise DomainError("not a growing-prefix sequence")
    last = gs[-1]
    prefix_end = consecutive[-1]
    if not is_finite(prefix_end):
        result = last
    else:
        edges = []
        for e in last.edges:
            prefix = e.schedule.unroll(0, prefix_end)
            if e.key in tail_rule:
                spec = tail_rule[e.key]
                bounded = prefix.union(spec.bounded.clip(prefix_end, spec.bounded.max_end or prefix_end))
                uf = spec.unbounded_from
                if uf is not None:
                    uf = max(uf, prefix_end)
                sched = from_absolute(bounded, uf)
                if sched.is_empty:
                    raise DomainError(
                        f"tail rule leaves edge {e.key} never present; close the limit differently"
                    )
            else:
                sched = _with_prefix(e.schedule, prefix, prefix_end)
            edges.append(Edge(e.u, e.v, e.latency, sched))
        result = Tvg(last.vertices, tuple(edges), last.process_latency)
    for i, lam in enumerate(consecutive):
        achieved = lambda_graph(gs[i], result)
        if achieved < lam:
            raise DomainError(f"limit postcondition failed at index {i}: {achieved} < {lam}")
    return result


def _with_prefix(sched: PresenceSchedule, prefix: IntervalSet, cut: int) -> PresenceSchedule:
    """Presence equal to `prefix` below `cut` and to `sched` from `cut` on."""
    lifted = rebase(sched, max(sched.base, cut))
    transient = prefix.union(lifted.transient.clip(cut, lifted.base))
    return normalize(PresenceSchedule(transient, lifted.base, lifted.period, lifted.pattern))
