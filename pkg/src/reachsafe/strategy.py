"""Attractor ranks, memoryless strategies, and play simulation."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import AbstractSet, Callable, Mapping, Optional, Union

from .arena import Arena, GameSpec, Objective
from .errors import IllegalMove, MissingWitness


class _Infinity:
    """Rank of nodes outside the attractor.  Compares above every int."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("reachsafe.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INF = _Infinity()
Rank = Union[int, _Infinity]


@dataclass(frozen=True)
class RankTable:
    rank: tuple

    def __getitem__(self, v: int) -> Rank:
        return self.rank[v]

    def __len__(self):
        return len(self.rank)

    @property
    def attractor(self) -> frozenset:
        return frozenset(v for v, r in enumerate(self.rank) if r is not INF)


@dataclass(frozen=True)
class StrategyPair:
    """``reach_choice`` is f (reachability player), ``safe_choice`` is g."""

    reach_choice: Mapping[int, int]
    safe_choice: Mapping[int, int]


def compute_ranks(arena: Arena, target: AbstractSet[int]) -> RankTable:
    """Stage at which each node enters the attractor of ``target``.

    Layered counter propagation over the transpose: a safety node enters
    one stage after its last successor does, a reachability node one stage
    after its first.  Dead ends never enter unless they are targets.
    """
    arena.check_nodes(target)
    arena = arena.with_transpose()
    pred, succ, is_reach = arena.pred, arena.succ, arena.is_reach
    rank = [INF] * arena.num_nodes
    remaining = [len(s) for s in succ]
    layer = sorted(target)
    for v in layer:
        rank[v] = 0
    stage = 0
    while layer:
        nxt = []
        for u in layer:
            for p in pred[u]:
                if rank[p] is not INF:
                    continue
                if is_reach[p]:
                    rank[p] = stage + 1
                    nxt.append(p)
                else:
                    remaining[p] -= 1
                    if remaining[p] == 0:
                        rank[p] = stage + 1
                        nxt.append(p)
        layer = nxt
        stage += 1
    return RankTable(tuple(rank))


def extract_strategies(arena: Arena, ranks: RankTable) -> StrategyPair:
    """Rank-decreasing choices for the reachability player, rank-infinite ones for safety.

    Ties go to the smallest node id.
    """
    reach_choice = {}
    safe_choice = {}
    for v in range(arena.num_nodes):
        out = sorted(arena.succ[v])
        r = ranks[v]
        if arena.is_reach[v]:
            if r is INF or r == 0:
                continue
            best = min(out, key=lambda w: (ranks[w], w), default=None)
            if best is None or not ranks[best] < r:
                raise MissingWitness(f"reachability node {v} (rank {r}) has no lower-ranked successor")
            reach_choice[v] = best
        else:
            if r is not INF or not out:
                continue
            best = next((w for w in out if ranks[w] is INF), None)
            if best is None:
                raise MissingWitness(f"safety node {v} has no successor outside the attractor")
            safe_choice[v] = best
    return StrategyPair(reach_choice, safe_choice)


def synthesize(spec: GameSpec) -> tuple:
    """Ranks and strategies for a spec of either objective."""
    target = spec.target if spec.objective is Objective.REACH else spec.arena.nodes - spec.target
    ranks = compute_ranks(spec.arena, target)
    return ranks, extract_strategies(spec.arena, ranks)


class PlayStatus(enum.Enum):
    REACHED = "reached"
    HALTED = "halted"        # node to move has no successors
    UNDECIDED = "undecided"  # max_steps exhausted


@dataclass(frozen=True)
class PlayOutcome:
    trace: tuple
    status: PlayStatus

    @property
    def reached(self) -> bool:
        return self.status is PlayStatus.REACHED

    @property
    def steps(self) -> int:
        return len(self.trace) - 1


Policy = Union[Mapping[int, int], Callable[[int], int]]


def _move(policy: Policy, v: int) -> int:
    if callable(policy):
        return policy(v)
    try:
        return policy[v]
    except KeyError:
        raise IllegalMove(f"policy has no move for node {v}") from None


def simulate_play(arena: Arena, target: AbstractSet[int], start: int,
                  reach_policy: Policy, safe_policy: Policy, max_steps: int) -> PlayOutcome:
    """Play memoryless policies from ``start`` until the target is hit.

    The play stops as soon as the token sits in ``target``, when the node
    to move has no successors, or after ``max_steps`` moves.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    arena.check_node(start)
    v = start
    trace = [v]
    for _ in range(max_steps):
        if v in target:
            return PlayOutcome(tuple(trace), PlayStatus.REACHED)
        if not arena.succ[v]:
            return PlayOutcome(tuple(trace), PlayStatus.HALTED)
        w = _move(reach_policy if arena.is_reach[v] else safe_policy, v)
        if w not in arena.succ[v]:
            raise IllegalMove(f"{v} -> {w} is not an edge")
        v = w
        trace.append(v)
    status = PlayStatus.REACHED if v in target else PlayStatus.UNDECIDED
    return PlayOutcome(tuple(trace), status)


def format_strategies(strategies: StrategyPair, labels: Optional[tuple] = None) -> str:
    """Lines ``v -> f(v)`` for the reachability side, then ``v -> g(v)`` for safety."""
    name = (lambda v: labels[v]) if labels else (lambda v: v)
    lines = ["reach strategy:"]
    lines += [f"{name(v)} -> {name(w)}" for v, w in sorted(strategies.reach_choice.items())]
    lines.append("safe strategy:")
    lines += [f"{name(v)} -> {name(w)}" for v, w in sorted(strategies.safe_choice.items())]
    return "\n".join(lines)
