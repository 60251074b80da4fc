"""Shared builders for the test suite."""
from reachsafe import GameSpec, Objective, build_arena
from reachsafe.generator import ExperimentParams, experiment_spec, sample_experiment

ACCEPTANCE_RESULTS = []


def a1():
    """Safety owns 1 and 3, reachability owns 0 and 2."""
    return build_arena([1, 3], [0, 2], [(0, 1), (1, 0), (1, 2), (2, 3), (3, 3)])


def random_spec(seed, nodes=(2, 40), degree=(0.5, 3.0), ratio=(0.0, 1.0),
                isolated=None, self_loops=None):
    """A seeded safety spec.  Isolation repair and self-loops vary with the seed by default."""
    if isolated is None:
        isolated = seed % 2 == 0
    if self_loops is None:
        self_loops = seed % 3 == 0
    params = ExperimentParams(nodes[0], nodes[1], degree[0], degree[1], ratio[0], ratio[1],
                              experiments=1, seed=seed, self_loops=self_loops,
                              isolated_nodes=isolated)
    return experiment_spec(sample_experiment(params, 0))


def reach_spec(spec):
    return spec if spec.objective is Objective.REACH else spec.dual()
