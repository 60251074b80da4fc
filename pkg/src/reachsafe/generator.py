"""Seeded random arenas and experiment sampling.

Every ordered pair ``(i, j)`` becomes an edge independently with
probability ``num_edges / admissible_pairs``.  Instead of filling an
``N x N`` Bernoulli matrix we draw the edge count from the matching
binomial and then pick that many distinct pairs uniformly, which gives
the same joint distribution in O(E) memory.

Randomness comes from :func:`numpy.random.default_rng`.  Experiment ``k``
of a battery seeded with ``s`` uses ``SeedSequence([s, k])``, so any row
can be regenerated on its own.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arena import Arena, GameSpec, Objective, build_arena
from .errors import ConfigInvalid


@dataclass(frozen=True)
class GenConfig:
    num_nodes: int
    num_edges: int
    self_loops: bool = False
    isolated_nodes: bool = False
    seed: int = 0

    @property
    def admissible_pairs(self) -> int:
        n = self.num_nodes
        return n * n if self.self_loops else n * (n - 1)

    def validate(self) -> None:
        if self.num_nodes < 1:
            raise ConfigInvalid("num_nodes must be >= 1")
        if not 0 <= self.num_edges <= self.admissible_pairs:
            raise ConfigInvalid(
                f"num_edges={self.num_edges} outside [0, {self.admissible_pairs}] "
                f"for {self.num_nodes} nodes (self_loops={self.self_loops})")
        if self.seed < 0:
            raise ConfigInvalid("seed must be non-negative")


@dataclass(frozen=True)
class ExperimentParams:
    """Ranges for a benchmark battery (inclusive node range, half-open float ranges)."""

    num_nodes_min: int
    num_nodes_max: int
    avg_edges_per_node_min: float
    avg_edges_per_node_max: float
    target_safe_ratio_min: float
    target_safe_ratio_max: float
    experiments: int
    seed: int = 0
    self_loops: bool = False
    isolated_nodes: bool = False

    def validate(self) -> None:
        if not 1 <= self.num_nodes_min <= self.num_nodes_max:
            raise ConfigInvalid("need 1 <= num_nodes_min <= num_nodes_max")
        if not 0 <= self.avg_edges_per_node_min <= self.avg_edges_per_node_max:
            raise ConfigInvalid("need 0 <= avg_edges_per_node_min <= avg_edges_per_node_max")
        if not 0 <= self.target_safe_ratio_min <= self.target_safe_ratio_max <= 1:
            raise ConfigInvalid("need 0 <= target_safe_ratio_min <= target_safe_ratio_max <= 1")
        if self.experiments < 0:
            raise ConfigInvalid("experiments must be >= 0")


@dataclass(frozen=True)
class Experiment:
    index: int
    config: GenConfig
    target_safe: frozenset

    @property
    def target_safe_size(self) -> int:
        return len(self.target_safe)


def _pair(idx: int, n: int, self_loops: bool) -> tuple:
    if self_loops:
        return divmod(idx, n)
    i, r = divmod(idx, n - 1)
    return i, r + (r >= i)


def _isolation_repairs(n: int, degree, rng) -> list:
    """Edges that give every zero-degree node a neighbour.

    ``degree`` (in + out) is updated in place.  The partner ``j != i`` is
    ``rng.integers(0, n - 1)`` shifted past ``i``; a fair coin
    (``rng.random() < 0.5``) picks ``(i, j)`` over ``(j, i)``.
    """
    added = []
    if n < 2:
        return added
    while True:
        isolated = [i for i in range(n) if degree[i] == 0]
        if not isolated:
            return added
        for i in isolated:
            if degree[i]:
                continue
            r = int(rng.integers(0, n - 1))
            j = r + (r >= i)
            added.append((i, j) if rng.random() < 0.5 else (j, i))
            degree[i] += 1
            degree[j] += 1


def repair_isolated(matrix, rng) -> np.ndarray:
    """Return a copy of a 0/1 adjacency matrix with no node of total degree 0."""
    m = np.array(matrix, dtype=np.int8, copy=True)
    n = m.shape[0]
    degree = (m.sum(axis=0) + m.sum(axis=1)).astype(int).tolist()
    for u, v in _isolation_repairs(n, degree, rng):
        m[u, v] = 1
    return m


def generate_edges(cfg: GenConfig, rng) -> list:
    n = cfg.num_nodes
    pairs = cfg.admissible_pairs
    if pairs == 0 or cfg.num_edges == 0:
        count = 0
    else:
        count = int(rng.binomial(pairs, cfg.num_edges / pairs))
    picks = rng.choice(pairs, size=count, replace=False) if count else ()
    edges = [_pair(int(idx), n, cfg.self_loops) for idx in picks]
    if not cfg.isolated_nodes:
        degree = [0] * n
        for u, v in edges:
            degree[u] += 1
            degree[v] += 1
        edges.extend(_isolation_repairs(n, degree, rng))
    return edges


def generate_arena(cfg: GenConfig) -> Arena:
    """Random arena; owners split as evenly as possible, safety taking the odd node."""
    cfg.validate()
    rng = np.random.default_rng(cfg.seed)
    perm = rng.permutation(cfg.num_nodes).tolist()
    half = (cfg.num_nodes + 1) // 2
    edges = generate_edges(cfg, rng)
    return build_arena(perm[:half], perm[half:], edges)


def sample_experiment(params: ExperimentParams, k: int) -> Experiment:
    """Draw the arena configuration and safety target of experiment ``k``."""
    if not 0 <= k < params.experiments:
        raise IndexError(f"experiment {k} outside [0, {params.experiments})")
    rng = np.random.default_rng(np.random.SeedSequence([params.seed, k]))
    n = int(rng.integers(params.num_nodes_min, params.num_nodes_max, endpoint=True))
    avg = rng.uniform(params.avg_edges_per_node_min, params.avg_edges_per_node_max)
    ratio = rng.uniform(params.target_safe_ratio_min, params.target_safe_ratio_max)
    gen_seed = int(rng.integers(0, 2**63))
    cfg = GenConfig(n, 0, params.self_loops, params.isolated_nodes, gen_seed)
    num_edges = min(math.floor(n * avg), cfg.admissible_pairs)
    cfg = GenConfig(n, num_edges, params.self_loops, params.isolated_nodes, gen_seed)
    size = min(math.floor(n * ratio), n)
    target = frozenset(rng.choice(n, size=size, replace=False).tolist())
    return Experiment(k, cfg, target)


def experiment_spec(exp: Experiment) -> GameSpec:
    return GameSpec(generate_arena(exp.config), exp.target_safe, Objective.SAFE)
