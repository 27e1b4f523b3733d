from __future__ import annotations

import random

import pytest

from oracles import comparable_variant, lambda_oracle, random_tvg
from tvg.core import Edge, Tvg
from tvg.errors import DomainError, IncomparableError
from tvg.intervals import INF, IntervalSet, TimeSpec, is_finite
from tvg.metric import (
    comparison_horizon,
    distance,
    lambda_graph,
    lambda_output,
    limit_construct,
    sequence_check,
)
from tvg.schedule import PresenceSchedule, from_absolute
from tvg.sim import OutputTrace, run
from tvg.algorithms import get_algorithm
from tvg.core import StaticGraph


def from_tick(k: int) -> Tvg:
    """Single-edge TVG present exactly on [k, inf)."""
    sched = from_absolute(IntervalSet.empty(), full_from=k)
    return Tvg.make(["a", "b"], [Edge("a", "b", 1, sched)])


def test_lambda_identity():
    g = from_tick(3)
    assert lambda_graph(g, g) == INF
    assert distance(INF).approx == 0.0


def test_lambda_single_divergence():
    a = Tvg.make(["a", "b"], [Edge("a", "b", 1, PresenceSchedule.make([(0, 3)], 3, 1, []))])
    b = Tvg.make(["a", "b"], [Edge("a", "b", 1, PresenceSchedule.make([(0, 5)], 5, 1, []))])
    # both present on [0,3); only b is present at 3
    lam = lambda_graph(a, b)
    assert lam == lambda_oracle(a, b, comparison_horizon(a, b)) == 3
    assert distance(lam).approx == 0.125
    assert str(distance(lam)) == "2^-3"


def test_distance_values():
    assert distance(0).approx == 1.0
    assert distance(3).approx == 0.125
    assert distance(INF).approx == 0.0
    assert distance(10**6).approx == 0.0  # underflows silently, lambda stays exact
    assert distance(10**6).lam == 10**6


def test_incomparable():
    g = from_tick(0)
    other_vertices = Tvg.make(["a", "c"], [Edge("a", "c", 1, PresenceSchedule.always())])
    with pytest.raises(IncomparableError):
        lambda_graph(g, other_vertices)
    other_latency = Tvg.make(["a", "b"], [Edge("a", "b", 2, PresenceSchedule.always())])
    with pytest.raises(IncomparableError):
        lambda_graph(g, other_latency)


def test_lambda_matches_oracle_on_random_pairs():
    rng = random.Random(99)
    for _ in range(150):
        g = random_tvg(rng, n_max=4)
        g2 = comparable_variant(rng, g)
        lam = lambda_graph(g, g2)
        horizon = comparison_horizon(g, g2)
        assert lam == lambda_oracle(g, g2, horizon)
        # INF exactly when the normalized structures coincide
        assert (lam == INF) == (g == g2)


def test_ultrametric_axioms_on_random_triples():
    rng = random.Random(7)
    for _ in range(200):
        g = random_tvg(rng, n_max=4)
        g1 = comparable_variant(rng, g)
        g2 = comparable_variant(rng, g)
        l01, l12, l02 = lambda_graph(g, g1), lambda_graph(g1, g2), lambda_graph(g, g2)
        assert lambda_graph(g1, g) == l01
        assert l02 >= min(l01, l12)
        assert l01 >= min(l02, l12)
        assert l12 >= min(l01, l02)


def _trace(changes: dict[str, list[tuple[int, frozenset]]], horizon: int) -> OutputTrace:
    def graph(edges):
        vs = frozenset(v for e in edges for v in e)
        return StaticGraph(vs, frozenset(edges))

    return OutputTrace(
        horizon,
        {p: tuple((t, graph(v)) for t, v in seq) for p, seq in changes.items()},
    )


AB = ("a", "b")
BC = ("b", "c")


def test_lambda_output_identity_censored():
    tr = _trace({"a": [(0, frozenset([AB]))], "b": []}, horizon=10)
    lam = lambda_output(tr, tr)
    assert lam.censored
    assert lam.bound == 10
    assert str(lam) == ">=10"


def test_lambda_output_divergence():
    tr1 = _trace({"a": [], "b": [(3, frozenset([AB]))]}, 20)
    tr2 = _trace({"a": [], "b": [(3, frozenset([AB])), (7, frozenset([AB, BC]))]}, 20)
    lam = lambda_output(tr1, tr2)
    assert not lam.censored
    assert lam.divergence == 7


def test_lambda_output_mismatched():
    tr1 = _trace({"a": []}, 10)
    with pytest.raises(DomainError):
        lambda_output(tr1, _trace({"a": []}, 11))
    with pytest.raises(DomainError):
        lambda_output(tr1, _trace({"a": [], "b": []}, 10))


def test_lambda_output_truncation_monotone():
    tr1 = _trace({"a": [(2, frozenset([AB]))]}, 30)
    tr2 = _trace({"a": [(2, frozenset([AB])), (25, frozenset([BC]))]}, 30)
    full = lambda_output(tr1, tr2)
    assert full.divergence == 25
    short1 = _trace({"a": [(2, frozenset([AB]))]}, 20)
    short2 = _trace({"a": [(2, frozenset([AB]))]}, 20)
    cut = lambda_output(short1, short2)
    assert cut.censored and cut.bound == 20  # divergence beyond the horizon is unseen


def test_output_lambda_dominates_graph_lambda():
    rng = random.Random(31)
    algos = [get_algorithm("echo-footprint"), get_algorithm("local-flood-window", {"W": 4})]
    for _ in range(12):
        g = random_tvg(rng, n_max=4)
        g2 = comparable_variant(rng, g)
        lam = lambda_graph(g, g2)
        for algo in algos:
            o1 = run(g, algo, 96)[1]
            o2 = run(g2, algo, 96)[1]
            out = lambda_output(o1, o2)
            assert out.censored or out.divergence >= lam


def test_sequence_check_growing():
    gs = [from_tick(k) for k in range(12)]
    report = sequence_check(gs, max_scale=8)
    assert report.consecutive == list(range(11))
    assert report.ultrametric_ok
    for v in report.verdicts:
        assert v.cauchy
        # strict d < 2^-scale needs pairwise lambda > scale: tail from scale+1
        assert v.witness == v.scale + 1
    as_json = report.to_json()
    assert as_json["cauchy"][0]["epsilon"] == "2^-1"


def test_sequence_check_constant():
    g = from_tick(4)
    report = sequence_check([g, g, g])
    assert all(not is_finite(lam) for lam in report.consecutive)
    assert all(v.cauchy and v.witness == 0 for v in report.verdicts)


def test_sequence_check_alternating():
    a, b = from_tick(2), from_tick(3)
    assert lambda_graph(a, b) == 2
    report = sequence_check([a, b, a, b])
    for v in report.verdicts:
        assert v.cauchy == (v.scale < 2)


def test_limit_construct_all_equal():
    g = from_tick(5)
    assert limit_construct([g, g, g]) == g


def test_limit_construct_growing_with_tail():
    gs = [from_tick(k) for k in range(8)]
    tail = {("a", "b"): TimeSpec.from_pairs([(7, INF)])}
    lim = limit_construct(gs, tail)
    # limit agrees with every g_k on [0, k); its own presence starts at 7
    assert lim == gs[7]
    for k in range(7):
        assert lambda_graph(gs[k], lim) >= k


def test_limit_construct_rejects_non_growing():
    gs = [from_tick(5), from_tick(3), from_tick(4)]
    with pytest.raises(DomainError):
        limit_construct(gs)


def test_limit_construct_rejects_empty_tail_edge():
    gs = [from_tick(k) for k in range(3)]
    with pytest.raises(DomainError):
        # prefix [0, 2) has no presence and the tail rule keeps the edge dark
        limit_construct(gs, {("a", "b"): TimeSpec.empty()})


def test_limit_construct_unlisted_edges_continue():
    always = PresenceSchedule.always()
    per = PresenceSchedule.make([], 0, 3, [(0, 1)])

    def variant(k):
        ab = from_absolute(IntervalSet.empty(), full_from=k)
        return Tvg.make(
            ["a", "b", "c"],
            [Edge("a", "b", 1, ab), Edge("a", "c", 1, per), Edge("b", "c", 1, always)],
        )

    gs = [variant(k) for k in range(2, 6)]
    lim = limit_construct(gs, {("a", "b"): TimeSpec.from_pairs([(30, INF)])})
    assert lim.edge(("a", "c")).schedule == per
    assert lim.edge(("b", "c")).schedule == always
