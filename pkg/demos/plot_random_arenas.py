"""
Random arenas
=============

Edge counts follow a binomial law around the requested number; with
isolated nodes disallowed, every node ends up touching an edge.
"""

import numpy as np

from reachsafe import GenConfig, generate_arena

counts = np.array([generate_arena(GenConfig(100, 250, isolated_nodes=True, seed=s)).num_edges
                   for s in range(300)])
print("mean edges %.1f, std %.1f" % (counts.mean(), counts.std()))

arena = generate_arena(GenConfig(20, 15, seed=7))
degree = [len(arena.succ[v]) + len(arena.pred[v]) for v in range(arena.num_nodes)]
print("min degree", min(degree), "edges", arena.num_edges)
print("safety", sorted(arena.safety_nodes))
print("reach ", sorted(arena.reach_nodes))
