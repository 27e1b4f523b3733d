from __future__ import annotations

import random

import pytest

from conftest import single_edge_tvg
from oracles import random_tvg, time_expanded_earliest
from tvg.core import Edge, Tvg, global_base, global_period, is_cot
from tvg.errors import DomainError
from tvg.intervals import INF, is_finite
from tvg.journeys import (
    completeness_horizon,
    earliest_arrival,
    exists_temporal_path,
    hop_feasible,
    validate_path,
)
from tvg.schedule import PresenceSchedule


def test_hop_feasible():
    g = single_edge_tvg([(0, 3)], 3, 1, [], latency=2)
    assert hop_feasible(g, ("a", "b"), 1)
    assert not hop_feasible(g, ("a", "b"), 2)


def test_hop_feasible_wraparound():
    # pattern [P-1,P) + [0,1) gives a 2-tick run across the period boundary
    g = single_edge_tvg([], 0, 6, [(5, 6), (0, 1)], latency=2)
    base, period = 0, 6
    assert hop_feasible(g, ("a", "b"), base + period - 1)
    assert not hop_feasible(g, ("a", "b"), base + 1)


def test_two_hop_witness():
    ab = PresenceSchedule.make([(0, 2)], 2, 1, [])
    bc = PresenceSchedule.make([(5, 7)], 7, 1, [])
    g = Tvg.make(["a", "b", "c"], [Edge("a", "b", 1, ab), Edge("b", "c", 1, bc)])
    path = exists_temporal_path(g, "a", "c", 0)
    # departures strictly after 0: frozen from the time-expanded oracle
    assert path.hops == ((("a", "b"), 1), (("b", "c"), 5))
    assert earliest_arrival(g, "a", "c", 0) == 6
    assert time_expanded_earliest(g, "a", "c", 0, 40) == 6
    assert validate_path(g, path, "a", "c", 0)


def test_dead_connector_unreachable_after_its_end():
    g = single_edge_tvg([(0, 4)], 4, 1, [], latency=1)
    assert exists_temporal_path(g, "a", "b", 10) is None
    assert earliest_arrival(g, "a", "b", 10) == INF


def test_single_hop_direct():
    g = single_edge_tvg([], 0, 5, [(2, 4)], latency=2)
    # after=6: next usable window starts at 7, arrival 9
    assert earliest_arrival(g, "a", "b", 6) == 9


def test_self_and_unknown_endpoints():
    g = single_edge_tvg([(0, 1)], 1, 1, [])
    with pytest.raises(DomainError):
        exists_temporal_path(g, "a", "a", 0)
    with pytest.raises(DomainError):
        earliest_arrival(g, "a", "zz", 0)


def _oracle_horizon(g: Tvg, after: int) -> int:
    return completeness_horizon(g, after) + 4


def test_agreement_with_time_expanded_search():
    rng = random.Random(2024)
    checked = 0
    for _ in range(110):
        g = random_tvg(rng, n_max=4, period_max=8, base_max=8, latency_max=3)
        after = rng.choice([0, 1, 3, 6])
        assert completeness_horizon(g, after) <= 64
        vs = sorted(g.vertices)
        for p in vs:
            for q in vs:
                if p == q:
                    continue
                got = earliest_arrival(g, p, q, after)
                want = time_expanded_earliest(g, p, q, after, _oracle_horizon(g, after))
                assert got == want, (g, p, q, after)
                path = exists_temporal_path(g, p, q, after)
                assert (path is not None) == is_finite(want)
                if path is not None:
                    assert validate_path(g, path, p, q, after)
                    assert path.arrival(g) == got
                checked += 1
    assert checked >= 100


def test_monotone_in_after():
    rng = random.Random(5)
    for _ in range(30):
        g = random_tvg(rng, n_max=4)
        vs = sorted(g.vertices)
        p, q = vs[0], vs[-1]
        arrivals = [earliest_arrival(g, p, q, after) for after in range(0, 12, 3)]
        for x, y in zip(arrivals, arrivals[1:]):
            assert y >= x


def test_cot_instances_have_witnesses_at_probe_times(k3_missing_ca):
    g = k3_missing_ca
    assert is_cot(g)
    probes = [0, global_base(g), global_base(g) + global_period(g)]
    for after in probes:
        for p in sorted(g.vertices):
            for q in sorted(g.vertices):
                if p != q:
                    assert exists_temporal_path(g, p, q, after) is not None
