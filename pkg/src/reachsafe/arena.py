"""Game arenas: straight/transpose adjacency, ownership, and the text format.

Nodes are dense integers ``0..n-1``.  Every node belongs to exactly one
player: the safety player (``Owner.SAFETY``) or the reachability player
(``Owner.REACH``).  Adjacency is stored as frozensets, so parallel edges
collapse and self-loops are allowed.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import AbstractSet, Iterable, Optional, Sequence

from .errors import (
    ArenaSemanticError,
    ArenaSyntaxError,
    DanglingNode,
    EdgeOutOfRange,
    NodeOutOfRange,
    OverlappingOwnership,
)

NodeSet = AbstractSet[int]


class Owner(enum.Enum):
    SAFETY = "S"
    REACH = "R"


class Objective(enum.Enum):
    REACH = "reach"
    SAFE = "safe"

    @property
    def dual(self) -> "Objective":
        return Objective.SAFE if self is Objective.REACH else Objective.REACH


class Direction(enum.Enum):
    STRAIGHT = "straight"
    TRANSPOSE = "transpose"


def transpose(num_nodes: int, succ: Sequence[AbstractSet[int]]) -> tuple:
    """Reverse every edge of a successor table."""
    pred = [[] for _ in range(num_nodes)]
    for u, out in enumerate(succ):
        for v in out:
            pred[v].append(u)
    return tuple(frozenset(p) for p in pred)


@dataclass(frozen=True)
class Arena:
    """Immutable game graph.

    ``pred`` is ``None`` for a straight-only arena (see
    :meth:`straight_only`); call :meth:`with_transpose` to rebuild it.
    Equality ignores ``pred`` since it is derived from ``succ``.
    """

    num_nodes: int
    owner: tuple
    succ: tuple
    pred: Optional[tuple] = field(default=None, compare=False, repr=False)

    @property
    def has_transpose(self) -> bool:
        return self.pred is not None

    def with_transpose(self) -> "Arena":
        if self.pred is not None:
            return self
        full = Arena(self.num_nodes, self.owner, self.succ,
                     transpose(self.num_nodes, self.succ))
        full.__dict__.update(self._cached())
        return full

    def straight_only(self) -> "Arena":
        bare = Arena(self.num_nodes, self.owner, self.succ, None)
        bare.__dict__.update(self._cached())
        return bare

    def _cached(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if k in _CACHED}

    @cached_property
    def nodes(self) -> frozenset:
        return frozenset(range(self.num_nodes))

    @cached_property
    def safety_nodes(self) -> frozenset:
        return frozenset(v for v, o in enumerate(self.owner) if o is Owner.SAFETY)

    @cached_property
    def reach_nodes(self) -> frozenset:
        return frozenset(v for v, o in enumerate(self.owner) if o is Owner.REACH)

    @cached_property
    def is_reach(self) -> tuple:
        """Per-node boolean lookup, cheaper than set membership in hot loops."""
        return tuple(o is Owner.REACH for o in self.owner)

    @property
    def num_edges(self) -> int:
        return sum(len(s) for s in self.succ)

    def edges(self):
        """Yield edges in ascending ``(u, v)`` order."""
        for u, out in enumerate(self.succ):
            for v in sorted(out):
                yield u, v

    def check_node(self, v: int) -> None:
        if not 0 <= v < self.num_nodes:
            raise NodeOutOfRange(f"node {v} not in [0, {self.num_nodes})")

    def check_nodes(self, vs: Iterable[int]) -> None:
        for v in vs:
            self.check_node(v)


_CACHED = ("nodes", "safety_nodes", "reach_nodes", "is_reach")


def build_arena(safety_nodes: Iterable[int], reach_nodes: Iterable[int],
                edges: Iterable[tuple]) -> Arena:
    """Build an arena with both straight and transpose adjacency."""
    safety_nodes = list(safety_nodes)
    reach_nodes = list(reach_nodes)
    s, r = set(safety_nodes), set(reach_nodes)
    both = s & r
    if both:
        raise OverlappingOwnership(f"nodes owned by both players: {sorted(both)}")
    if len(s) != len(safety_nodes) or len(r) != len(reach_nodes):
        raise OverlappingOwnership("node listed twice for the same player")
    n = len(s) + len(r)
    declared = s | r
    if any(not isinstance(v, int) or v < 0 for v in declared):
        raise DanglingNode("node ids must be non-negative integers")
    if declared != set(range(n)):
        missing = sorted(set(range(n)) - declared)
        raise DanglingNode(f"node ids must be exactly 0..{n - 1}; missing {missing}")

    owner = [Owner.REACH] * n
    for v in s:
        owner[v] = Owner.SAFETY
    succ = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeOutOfRange(f"edge ({u}, {v}) outside [0, {n})")
        succ[u].add(v)
    frozen = tuple(frozenset(x) for x in succ)
    return Arena(n, tuple(owner), frozen, transpose(n, frozen))


def neighbors(arena: Arena, v: int, direction: Direction = Direction.STRAIGHT) -> frozenset:
    arena.check_node(v)
    if direction is Direction.STRAIGHT:
        return arena.succ[v]
    return arena.with_transpose().pred[v]


@dataclass(frozen=True)
class GameSpec:
    """An arena plus a target set and the objective attached to it.

    For ``Objective.REACH`` the reachability player wants to visit
    ``target``; for ``Objective.SAFE`` the safety player wants to stay
    inside it forever.  ``labels`` maps dense ids back to the ids found
    in a parsed file, when those were sparse.
    """

    arena: Arena
    target: frozenset
    objective: Objective
    labels: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "target", frozenset(self.target))
        self.arena.check_nodes(self.target)

    def dual(self) -> "GameSpec":
        """The complementary game on the same arena: flip objective, complement target."""
        return GameSpec(self.arena, self.arena.nodes - self.target,
                        self.objective.dual, self.labels)


# ---------------------------------------------------------------------------
# Text format

_INT = re.compile(r"^(0|[1-9][0-9]*)$")
_PHASES = ("arena", "owner", "edge", "target", "objective")


def _int(tok: str, lineno: int) -> int:
    if not _INT.match(tok):
        raise ArenaSyntaxError(f"expected a non-negative integer, got {tok!r}", lineno)
    return int(tok)


def parse_arena(text) -> GameSpec:
    """Parse the line-oriented arena format into a :class:`GameSpec`."""
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")

    phase = -1
    declared_n = None
    owners = {}
    edges = []
    target = None
    objective = None
    label_comments = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 3 and parts[0] == "label":
                label_comments[_int(parts[1], lineno)] = _int(parts[2], lineno)
            continue
        keyword, *args = line.split()
        if keyword not in _PHASES:
            raise ArenaSyntaxError(f"unknown keyword {keyword!r}", lineno)
        idx = _PHASES.index(keyword)
        if idx < phase:
            raise ArenaSyntaxError(f"{keyword!r} line out of order", lineno)
        if phase == -1 and keyword != "arena":
            raise ArenaSyntaxError("file must start with 'arena <num_nodes>'", lineno)
        if idx == phase and keyword in ("arena", "target", "objective"):
            raise ArenaSemanticError(f"duplicate {keyword!r} line", lineno)
        phase = idx

        if keyword == "arena":
            if len(args) != 1:
                raise ArenaSyntaxError("usage: arena <num_nodes>", lineno)
            declared_n = _int(args[0], lineno)
        elif keyword == "owner":
            if len(args) != 2:
                raise ArenaSyntaxError("usage: owner <id> <S|R>", lineno)
            v = _int(args[0], lineno)
            if args[1] not in ("S", "R"):
                raise ArenaSyntaxError(f"owner must be S or R, got {args[1]!r}", lineno)
            if v in owners:
                raise ArenaSemanticError(f"duplicate owner declaration for node {v}", lineno)
            owners[v] = Owner(args[1])
        elif keyword == "edge":
            if len(args) != 2:
                raise ArenaSyntaxError("usage: edge <u> <v>", lineno)
            edges.append((_int(args[0], lineno), _int(args[1], lineno), lineno))
        elif keyword == "target":
            target = [(_int(a, lineno), lineno) for a in args]
        else:
            if len(args) != 1:
                raise ArenaSyntaxError("usage: objective <reach|safe>", lineno)
            try:
                objective = Objective(args[0])
            except ValueError:
                raise ArenaSemanticError(f"unknown objective {args[0]!r}", lineno) from None

    if declared_n is None:
        raise ArenaSyntaxError("missing 'arena' header")
    if target is None:
        raise ArenaSyntaxError("missing 'target' line")
    if objective is None:
        raise ArenaSyntaxError("missing 'objective' line")
    if len(owners) != declared_n:
        raise ArenaSemanticError(
            f"header declares {declared_n} nodes but {len(owners)} owners were given")

    ordered = sorted(owners)
    if ordered == list(range(declared_n)):
        dense = {v: v for v in ordered}
        labels = None
        if label_comments:
            labels = tuple(label_comments.get(v, v) for v in range(declared_n))
            if labels == tuple(range(declared_n)):
                labels = None
    else:
        dense = {v: i for i, v in enumerate(ordered)}
        labels = tuple(ordered)

    def lookup(v, lineno, what):
        try:
            return dense[v]
        except KeyError:
            raise ArenaSemanticError(f"{what} refers to undeclared node {v}", lineno) from None

    safety = [dense[v] for v in ordered if owners[v] is Owner.SAFETY]
    reach = [dense[v] for v in ordered if owners[v] is Owner.REACH]
    dense_edges = [(lookup(u, ln, "edge"), lookup(v, ln, "edge")) for u, v, ln in edges]
    dense_target = {lookup(v, ln, "target") for v, ln in target}
    arena = build_arena(safety, reach, dense_edges)
    return GameSpec(arena, frozenset(dense_target), objective, labels)


def serialize_arena(spec: GameSpec) -> str:
    """Canonical text: nodes and edges in ascending order."""
    arena = spec.arena
    lines = []
    if spec.labels is not None:
        lines.extend(f"# label {i} {lab}" for i, lab in enumerate(spec.labels))
    lines.append(f"arena {arena.num_nodes}")
    lines.extend(f"owner {v} {arena.owner[v].value}" for v in range(arena.num_nodes))
    lines.extend(f"edge {u} {v}" for u, v in arena.edges())
    lines.append(" ".join(["target", *map(str, sorted(spec.target))]))
    lines.append(f"objective {spec.objective.value}")
    return "\n".join(lines) + "\n"
