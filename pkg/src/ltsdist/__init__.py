"""Simulation and bisimulation distances between labeled transition
systems, computed by reducing the underlying quantitative games to
single-path-building games and solving those per distance kind."""

from .values import INF, Value, fmt_value, is_inf, parse_rational, parse_value
from .lts import (
    DEFAULT_INF,
    DEFAULT_ONE,
    Diagnostic,
    Label,
    LabelDistance,
    Lts,
    ParseError,
    parse_label_distance,
    parse_lts,
    serialize_lts,
    validate,
)
from .tracedist import (
    DistanceKind,
    Kind,
    KindError,
    Lasso,
    f_weight,
    interleave,
    subsample,
    trace_distance,
    val_on_lasso,
    val_on_steps,
    zip_lassos,
)
from .gamegraph import GameGraph, build_bisim_game, build_sim_game, to_dot, to_json
from .solvers import (
    SolveResult,
    cpre,
    cpre_star,
    lead_bound_wins,
    solve,
    solve_cantor,
    solve_discounted,
    solve_discrete,
    solve_limavg,
    solve_maxlead,
    solve_pointwise,
)
from .oracle import (
    GuardError,
    bounded_minimax,
    classical_bisimulation,
    classical_simulation,
    enumerate_positional_value,
)

__version__ = "0.1.0"
