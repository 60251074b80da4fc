"""
Ranks and memoryless strategies
===============================

Each node of the attractor gets the stage at which it entered; the
reachability player moves to a strictly smaller rank, the safety player
stays at rank infinity.
"""

from reachsafe import GameSpec, Objective, build_arena, simulate_play
from reachsafe.strategy import format_strategies, synthesize

arena = build_arena(safety_nodes=[1, 3], reach_nodes=[0, 2],
                    edges=[(0, 1), (1, 0), (1, 2), (2, 3), (3, 3)])
spec = GameSpec(arena, {3}, Objective.REACH)

ranks, strategies = synthesize(spec)
print("ranks:", ranks.rank)
print(format_strategies(strategies))

# reach player follows its strategy from node 2, safety plays anything
out = simulate_play(arena, spec.target, 2, strategies.reach_choice, lambda v: min(arena.succ[v]), 4)
print(out.status.name, out.trace)

# from node 0 the safety strategy keeps the token away from 3
out = simulate_play(arena, spec.target, 0, lambda v: min(arena.succ[v]), strategies.safe_choice, 8)
print(out.status.name, out.trace)
