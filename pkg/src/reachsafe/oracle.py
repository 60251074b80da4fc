"""Slow reference solvers used as ground truth in tests and ``verify``.

Neither touches the transpose graph or any frontier bookkeeping.
"""
from __future__ import annotations

import enum
from functools import lru_cache
from typing import AbstractSet

from .arena import Arena
from .errors import TooLarge

MAX_TREE_NODES = 14


class Verdict(enum.Enum):
    REACH_WINS = "ReachWins"
    SAFE_WINS = "SafeWins"


def oracle_attractor(arena: Arena, target: AbstractSet[int]) -> frozenset:
    """Re-evaluate the attractor recurrence over every node until it stops growing."""
    arena.check_nodes(target)
    attr = frozenset(target)
    while True:
        nxt = set(attr)
        for v in range(arena.num_nodes):
            out = arena.succ[v]
            if arena.is_reach[v]:
                if any(w in attr for w in out):
                    nxt.add(v)
            elif out and all(w in attr for w in out):
                nxt.add(v)
        if nxt == attr:
            return attr
        attr = frozenset(nxt)


def oracle_game_tree(arena: Arena, target: AbstractSet[int], start: int) -> Verdict:
    """Decide ``start`` by searching the game tree to depth ``|V|``.

    A play that hits a dead end outside the target is lost by the
    reachability player.
    """
    if arena.num_nodes > MAX_TREE_NODES:
        raise TooLarge(f"game-tree oracle limited to {MAX_TREE_NODES} nodes, got {arena.num_nodes}")
    arena.check_node(start)
    target = frozenset(target)
    succ, is_reach = arena.succ, arena.is_reach

    @lru_cache(maxsize=None)
    def forced(v: int, horizon: int) -> bool:
        if v in target:
            return True
        if horizon == 0 or not succ[v]:
            return False
        moves = (forced(w, horizon - 1) for w in succ[v])
        return any(moves) if is_reach[v] else all(moves)

    return Verdict.REACH_WINS if forced(start, arena.num_nodes) else Verdict.SAFE_WINS
