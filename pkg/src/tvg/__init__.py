"""Time-varying graphs with eventually-periodic presence: footprints,
temporal reachability, prefix ultrametrics, deterministic simulation, and
the adversarial construction against eventual-footprint algorithms."""

from tvg.adversary import AdversaryReport, Inconclusive, find_alpha, find_eta, flip_count, run_adversary
from tvg.algorithms import builtin_algorithms, get_algorithm
from tvg.core import (
    Edge,
    EdgeKey,
    StaticGraph,
    Tvg,
    edge_key,
    eventual_missing_edges,
    eventual_underlying_graph,
    induced_subclass_check,
    is_cot,
    is_tree,
    neighborhood,
    oplus,
    presence,
    snapshot_sequence,
    underlying_graph,
)
from tvg.errors import DomainError, FormatError, IncomparableError, SimulationError, TvgError
from tvg.intervals import INF, Interval, IntervalSet, TimeSpec
from tvg.journeys import TemporalPath, earliest_arrival, exists_temporal_path, hop_feasible
from tvg.metric import (
    DyadicDistance,
    SequenceReport,
    TraceLambda,
    distance,
    lambda_graph,
    lambda_output,
    limit_construct,
    sequence_check,
)
from tvg.schedule import PresenceSchedule, normalize
from tvg.sim import (
    AlgorithmSpec,
    Deliver,
    EdgeDown,
    EdgeUp,
    ExecutionTrace,
    Init,
    OutputTrace,
    SendRetry,
    SetOutput,
    SetTimer,
    Timer,
    output_at,
    run,
)
from tvg.tvg_io import load_tvg, parse_tvg, save_tvg, serialize_tvg, tvg_to_json

__version__ = "0.1.0"
