"""
Solving a four-node game
========================

A reachability player owns nodes 0 and 2, a safety player owns 1 and 3.
"""

from reachsafe import GameSpec, Objective, build_arena, parse_arena, serialize_arena, solve

arena = build_arena(safety_nodes=[1, 3], reach_nodes=[0, 2],
                    edges=[(0, 1), (1, 0), (1, 2), (2, 3), (3, 3)])

# the safety player wants to stay inside {0, 1, 2}
spec = GameSpec(arena, {0, 1, 2}, Objective.SAFE)
for engine in ("fw", "bw", "bw-improved", "mp"):
    res = solve(spec, engine)
    print(engine, "win_safe =", sorted(res.win_safe), "win_reach =", sorted(res.win_reach))

# same game seen from the other side
res = solve(spec.dual(), "mp")
print("dual:", sorted(res.win_reach), "directions", res.directions)

# text form round-trips
text = serialize_arena(spec)
print(text)
assert parse_arena(text) == spec
