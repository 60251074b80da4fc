import itertools

import pytest

from reachsafe import GameSpec, Objective, build_arena, solve
from reachsafe.errors import IllegalMove, MissingWitness
from reachsafe.strategy import (
    INF,
    PlayStatus,
    RankTable,
    compute_ranks,
    extract_strategies,
    format_strategies,
    simulate_play,
    synthesize,
)

from .helpers import random_spec, reach_spec


def test_infinity_orders_above_ints():
    assert 10**100 < INF and not INF < 3 and INF == INF and INF != 0
    assert max([3, INF, 0]) is INF


def test_ranks_a1(arena_a1):
    assert compute_ranks(arena_a1, {3}).rank == (INF, INF, 1, 0)
    assert compute_ranks(arena_a1, set()).rank == (INF,) * 4
    assert compute_ranks(arena_a1, {0, 1, 2, 3}).rank == (0,) * 4


def test_strategies_a1(arena_a1):
    s = extract_strategies(arena_a1, compute_ranks(arena_a1, {3}))
    assert s.reach_choice == {2: 3}
    assert s.safe_choice == {1: 0}
    s = extract_strategies(arena_a1, compute_ranks(arena_a1, {0, 1, 2, 3}))
    assert s.reach_choice == {} and s.safe_choice == {}


def test_chain_strategy():
    arena = build_arena([], [0, 1, 2], [(0, 1), (1, 2)])
    ranks = compute_ranks(arena, {2})
    assert ranks.rank == (2, 1, 0)
    assert extract_strategies(arena, ranks).reach_choice == {0: 1, 1: 2}


def test_ties_go_to_smallest_id():
    arena = build_arena([], [0, 1, 2, 3], [(0, 3), (0, 2), (0, 1)])
    s = extract_strategies(arena, compute_ranks(arena, {1, 2, 3}))
    assert s.reach_choice == {0: 1}


def test_missing_witness_on_bad_ranks(arena_a1):
    bogus = RankTable((INF, INF, 1, INF))
    with pytest.raises(MissingWitness):
        extract_strategies(arena_a1, bogus)


def test_ranks_match_stage_by_stage_recurrence():
    # rank(v) = first stage of the naive recurrence that contains v
    for seed in range(100):
        spec = reach_spec(random_spec(seed, nodes=(1, 40)))
        arena = spec.arena
        stage = {v: 0 for v in spec.target}
        attr, i = set(spec.target), 0
        while True:
            i += 1
            new = {v for v in arena.nodes - attr
                   if (arena.is_reach[v] and arena.succ[v] & attr)
                   or (not arena.is_reach[v] and arena.succ[v] and arena.succ[v] <= attr)}
            if not new:
                break
            stage.update({v: i for v in new})
            attr |= new
        ranks = compute_ranks(arena, spec.target)
        assert ranks.rank == tuple(stage.get(v, INF) for v in range(arena.num_nodes))
        assert ranks.attractor == solve(spec, "bw").win_reach


def test_strategy_invariants_random():
    for seed in range(100):
        spec = random_spec(seed, nodes=(1, 40))
        ranks, s = synthesize(spec)
        arena = spec.arena
        for v, w in s.reach_choice.items():
            assert w in arena.succ[v] and ranks[w] < ranks[v]
        for v, w in s.safe_choice.items():
            assert w in arena.succ[v] and ranks[w] is INF


def test_play_reaches_in_one_step(arena_a1):
    s = extract_strategies(arena_a1, compute_ranks(arena_a1, {3}))
    out = simulate_play(arena_a1, {3}, 2, s.reach_choice, lambda v: min(arena_a1.succ[v]), 4)
    assert out.reached and out.steps == 1 and out.trace == (2, 3)


def test_play_cycles_outside_target(arena_a1):
    s = extract_strategies(arena_a1, compute_ranks(arena_a1, {3}))
    out = simulate_play(arena_a1, {3}, 0, lambda v: min(arena_a1.succ[v]), s.safe_choice, 4)
    assert out.status is PlayStatus.UNDECIDED
    assert set(out.trace) == {0, 1}


def test_play_start_in_target():
    arena = build_arena([], [0], [])
    out = simulate_play(arena, {0}, 0, {}, {}, 1)
    assert out.reached and out.steps == 0


def test_play_halts_at_dead_end():
    arena = build_arena([1], [0], [(0, 1)])
    out = simulate_play(arena, set(), 0, {0: 1}, {}, 3)
    assert out.status is PlayStatus.HALTED and out.trace == (0, 1)


def test_illegal_move(arena_a1):
    with pytest.raises(IllegalMove):
        simulate_play(arena_a1, {3}, 0, {0: 2}, {}, 3)
    with pytest.raises(IllegalMove):
        simulate_play(arena_a1, {3}, 1, {}, {}, 3)
    with pytest.raises(ValueError):
        simulate_play(arena_a1, {3}, 0, {}, {}, 0)


def test_rank_descends_along_plays():
    for seed in range(40):
        spec = reach_spec(random_spec(seed, nodes=(2, 12), degree=(1, 2)))
        arena = spec.arena
        ranks, s = synthesize(spec)
        for start in ranks.attractor:
            out = simulate_play(arena, spec.target, start, s.reach_choice,
                                lambda v: max(arena.succ[v]), arena.num_nodes)
            assert out.reached
            rs = [ranks[v] for v in out.trace]
            assert all(a > b for a, b in zip(rs, rs[1:]))


def test_exhaustive_soundness_small():
    arena = build_arena([1, 3], [0, 2], [(0, 1), (1, 0), (1, 2), (2, 3), (3, 3), (3, 1)])
    spec = GameSpec(arena, {3}, Objective.REACH)
    ranks, s = synthesize(spec)
    adversary_nodes = [v for v in sorted(arena.safety_nodes) if arena.succ[v]]
    for choice in itertools.product(*(sorted(arena.succ[v]) for v in adversary_nodes)):
        policy = dict(zip(adversary_nodes, choice))
        for start in ranks.attractor:
            assert simulate_play(arena, {3}, start, s.reach_choice, policy, 4).reached


def test_format_strategies(arena_a1):
    s = extract_strategies(arena_a1, compute_ranks(arena_a1, {3}))
    assert format_strategies(s) == "reach strategy:\n2 -> 3\nsafe strategy:\n1 -> 0"
