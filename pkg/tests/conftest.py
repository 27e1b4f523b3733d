from __future__ import annotations

from pathlib import Path

import pytest

from tvg.core import Edge, Tvg
from tvg.schedule import PresenceSchedule
from tvg.tvg_io import load_tvg

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def k3_missing_ca() -> Tvg:
    return load_tvg(FIXTURES / "k3_missing_ca.json")


@pytest.fixture
def tree_path() -> Tvg:
    return load_tvg(FIXTURES / "tree_path.json")


def single_edge_tvg(transient=(), base=0, period=1, pattern=(), latency=1,
                    u="a", v="b") -> Tvg:
    sched = PresenceSchedule.make(transient, base, period, pattern)
    return Tvg.make([u, v], [Edge.make(u, v, latency, sched)])
