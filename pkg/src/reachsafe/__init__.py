"""Solvers for finite two-player reachability and safety games on graphs."""
from .arena import (
    Arena,
    Direction,
    GameSpec,
    NodeSet,
    Objective,
    Owner,
    build_arena,
    neighbors,
    parse_arena,
    serialize_arena,
)
from .bench import ExperimentRecord, compute_saving, emit_table, run_experiment_battery
from .generator import (
    ExperimentParams,
    GenConfig,
    generate_arena,
    repair_isolated,
    sample_experiment,
)
from .oracle import Verdict, oracle_attractor, oracle_game_tree
from .solvers import (
    ENGINES,
    InstrumentationCounters,
    MpConfig,
    SolveResult,
    force_r,
    force_reach,
    force_safe,
    naive_force_reach,
    solve,
    solve_backward_improved,
    solve_backward_naive,
    solve_forward_naive,
    solve_multiple_perspective,
    solve_safety_via_duality,
    step_backward,
    step_forward,
)
from .strategy import (
    INF,
    PlayOutcome,
    PlayStatus,
    RankTable,
    StrategyPair,
    compute_ranks,
    extract_strategies,
    simulate_play,
)

__version__ = "0.1.0"
