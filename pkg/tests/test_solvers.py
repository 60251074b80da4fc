import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reachsafe import GameSpec, MpConfig, Objective, build_arena
from reachsafe.errors import ObjectiveMismatch, UnknownEngine
from reachsafe.oracle import oracle_attractor
from reachsafe.solvers import (
    ENGINES,
    InstrumentationCounters,
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

from .helpers import random_spec, reach_spec


def chain():
    return build_arena([], [0, 1, 2], [(0, 1), (1, 2)])


def isolated_safety_node():
    return build_arena([0], [], [])


# force operators ------------------------------------------------------------

@pytest.mark.parametrize("x, expected", [
    ({3}, {2, 3}),
    (set(), set()),
    ({0, 1, 2, 3}, {0, 1, 2, 3}),
])
def test_force_r_a1(arena_a1, x, expected):
    assert force_r(arena_a1, x) == expected


@pytest.mark.parametrize("q, expected", [
    ({3}, {2}),
    (set(), set()),
    ({0, 2}, set()),
])
def test_naive_force_reach_a1(arena_a1, q, expected):
    assert naive_force_reach(arena_a1, q) == expected


def test_naive_force_reach_matches_definition():
    # reachability-owned nodes with a successor in q
    for seed in range(100):
        spec = random_spec(seed, nodes=(1, 25))
        arena = spec.arena
        expected = {v for v in arena.reach_nodes if arena.succ[v] & spec.target}
        assert naive_force_reach(arena, spec.target) == expected


def test_naive_force_reach_counts_inner_tests(arena_a1):
    counters = InstrumentationCounters()
    naive_force_reach(arena_a1, {0, 3}, counters)
    assert counters.nodes_visited == 2 * 2


def test_force_reach_and_safe_a1(arena_a1):
    assert force_reach(arena_a1, {3}) == {2}
    assert force_safe(arena_a1, {3}) == {3}
    assert force_reach(arena_a1, set()) == frozenset()


def test_force_reach_plus_safe_is_force_r_on_random_arenas():
    for seed in range(100):
        spec = random_spec(seed, nodes=(1, 30))
        arena, q = spec.arena, spec.target
        assert force_reach(arena, q) | force_safe(arena, q) == force_r(arena, q)


@pytest.mark.parametrize("win, expected", [({0, 1, 2}, {0, 1}), (set(), set())])
def test_step_forward_a1(arena_a1, win, expected):
    assert step_forward(arena_a1, win) == expected


def test_step_forward_isolated_safety_node_stays():
    assert step_forward(isolated_safety_node(), {0}) == {0}


@pytest.mark.parametrize("lose, last, expected", [
    ({2, 3}, {2, 3}, set()),
    ({3}, {3}, {2}),
    (set(), set(), set()),
])
def test_step_backward_a1(arena_a1, lose, last, expected):
    assert step_backward(arena_a1, lose, last) == expected


def test_processed_list_only_changes_counter():
    for seed in range(150):
        spec = random_spec(seed, nodes=(2, 40), degree=(1, 4))
        arena = spec.arena
        lose = arena.nodes - spec.target
        with_memo, without = InstrumentationCounters(), InstrumentationCounters()
        a = step_backward(arena, lose, lose, with_memo, use_processed=True)
        b = step_backward(arena, lose, lose, without, use_processed=False)
        assert a == b
        assert with_memo.edges_examined_safe_check <= without.edges_examined_safe_check


# solvers on the canonical arena ------------------------------------------------

def test_forward_naive_examples(arena_a1):
    assert solve_forward_naive(GameSpec(arena_a1, {0, 1, 2}, Objective.SAFE)).win_safe == {0, 1}
    assert solve_forward_naive(GameSpec(arena_a1, set(), Objective.SAFE)).win_safe == frozenset()
    assert solve_forward_naive(GameSpec(isolated_safety_node(), {0}, Objective.SAFE)).win_safe == {0}


def test_backward_naive_examples(arena_a1):
    assert solve_backward_naive(GameSpec(arena_a1, {3}, Objective.REACH)).win_reach == {2, 3}
    assert solve_backward_naive(GameSpec(arena_a1, {0, 1, 2, 3}, Objective.REACH)).win_reach == {0, 1, 2, 3}
    assert solve_backward_naive(GameSpec(arena_a1, set(), Objective.REACH)).win_reach == frozenset()


def test_backward_improved_examples(arena_a1):
    res = solve_backward_improved(GameSpec(arena_a1, {3}, Objective.REACH))
    assert res.win_reach == {2, 3}
    assert res.counters.edges_examined_reach_backward <= 5

    res = solve_backward_improved(GameSpec(arena_a1, set(), Objective.REACH))
    assert res.win_reach == frozenset()
    assert res.counters.edges_examined_reach_backward == 0

    res = solve_backward_improved(GameSpec(chain(), {2}, Objective.REACH))
    assert res.win_reach == {0, 1, 2}
    assert res.counters.edges_examined_reach_backward == 2


def test_multiple_perspective_examples(arena_a1):
    spec = GameSpec(arena_a1, {0, 1, 2}, Objective.SAFE)
    res = solve_multiple_perspective(spec, MpConfig(2))
    assert res.win_safe == {0, 1}
    assert res.directions == "BF"
    assert res.counters.perspective_switches == 1

    res = solve_multiple_perspective(spec, MpConfig(4))
    assert res.win_safe == {0, 1}
    assert "B" not in res.directions

    for seed in range(20):
        arena = random_spec(seed).arena
        res = solve_multiple_perspective(GameSpec(arena, set(), Objective.SAFE))
        assert res.win_safe == frozenset()
        assert res.iterations == 1


def test_default_threshold_is_half(arena_a1):
    # |Win| = 3 > 4 // 2, so the first step goes backward
    res = solve_multiple_perspective(GameSpec(arena_a1, {0, 1, 2}, Objective.SAFE))
    assert res.directions.startswith("B")
    with pytest.raises(ValueError):
        solve_multiple_perspective(GameSpec(arena_a1, {0}, Objective.SAFE), MpConfig(5))


def test_mp_builds_transpose_from_straight_only(arena_a1):
    spec = GameSpec(arena_a1.straight_only(), {0, 1, 2}, Objective.SAFE)
    assert solve_multiple_perspective(spec, MpConfig(0)).win_safe == {0, 1}


@pytest.mark.parametrize("solver, objective", [
    (solve_forward_naive, Objective.REACH),
    (solve_multiple_perspective, Objective.REACH),
    (solve_backward_naive, Objective.SAFE),
    (solve_backward_improved, Objective.SAFE),
])
def test_objective_mismatch(arena_a1, solver, objective):
    with pytest.raises(ObjectiveMismatch):
        solver(GameSpec(arena_a1, {3}, objective))


def test_duality_examples(arena_a1):
    safe = GameSpec(arena_a1, {0, 1, 2}, Objective.SAFE)
    assert solve_safety_via_duality(safe, "bw-improved").win_safe == {0, 1}
    reach = GameSpec(arena_a1, {3}, Objective.REACH)
    assert solve_safety_via_duality(reach, "fw").win_reach == {2, 3}
    everything = GameSpec(arena_a1, arena_a1.nodes, Objective.SAFE)
    for engine in ENGINES:
        assert solve_safety_via_duality(everything, engine).win_safe == arena_a1.nodes


def test_unknown_engine(arena_a1):
    with pytest.raises(UnknownEngine):
        solve(GameSpec(arena_a1, {3}, Objective.REACH), "dijkstra")


# properties over random arenas ----------------------------------------------

def test_all_engines_match_oracle():
    for seed in range(200):
        spec = random_spec(seed, nodes=(1, 60))
        expected = oracle_attractor(spec.arena, reach_spec(spec).target)
        for engine in ENGINES:
            for s in (spec, spec.dual()):
                res = solve(s, engine)
                assert res.win_reach == expected, (seed, engine, s.objective)
                assert res.win_reach | res.win_safe == spec.arena.nodes
                assert not res.win_reach & res.win_safe


def test_monotone_histories_and_iteration_bounds():
    for seed in range(200):
        spec = random_spec(seed, nodes=(1, 60))
        n = spec.arena.num_nodes
        for engine in ("bw", "bw-improved"):
            res = solve(spec, engine)
            h = res.history
            assert all(a <= b for a, b in zip(h, h[1:]))
            assert res.iterations <= n + 1
        fw = solve(spec, "fw")
        assert all(a >= b for a, b in zip(fw.history, fw.history[1:]))
        assert fw.iterations <= n + 1
        mp = solve(spec, "mp")
        assert all(a >= b for a, b in zip(mp.history, mp.history[1:]))
        assert mp.counters.perspective_switches <= 1


def test_edge_work_bound_small():
    for seed in range(200):
        spec = random_spec(seed, nodes=(1, 80), degree=(0.5, 5))
        m = spec.arena.num_edges
        assert solve(spec, "bw-improved").counters.edges_examined_reach_backward <= m
        for t in (0, None):
            res = solve_multiple_perspective(spec, MpConfig(t))
            assert res.counters.edges_examined_reach_backward <= m


def test_current_sets_are_disjoint():
    # each backward frontier only holds nodes not yet in Lose, so frontier
    # sizes add up exactly to the growth of Lose
    for seed in range(100):
        spec = random_spec(seed, nodes=(2, 60), degree=(1, 4))
        arena = spec.arena
        lose = arena.nodes - spec.target
        last = lose
        seen = set(lose)
        while True:
            f = step_backward(arena, lose, last)
            assert not f & seen
            if not f:
                break
            seen |= f
            lose = lose | f
            last = f
        assert lose == oracle_attractor(arena, arena.nodes - spec.target)


@st.composite
def small_specs(draw):
    n = draw(st.integers(1, 9))
    owners = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=25))
    target = draw(st.sets(st.integers(0, n - 1)))
    arena = build_arena([v for v in range(n) if owners[v]], [v for v in range(n) if not owners[v]], edges)
    return GameSpec(arena, target, draw(st.sampled_from(list(Objective))))


@settings(max_examples=300, deadline=None)
@given(small_specs(), st.data())
def test_engines_agree_hypothesis(spec, data):
    expected = oracle_attractor(spec.arena, reach_spec(spec).target)
    threshold = data.draw(st.integers(0, spec.arena.num_nodes))
    for engine in ENGINES:
        assert solve(spec, engine, MpConfig(threshold)).win_reach == expected
