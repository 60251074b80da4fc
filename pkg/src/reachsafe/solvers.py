"""Reachability/safety solvers and their force-set building blocks.

Four engines are provided:

``fw``           naive purely forward (safety view, greatest fixpoint)
``bw``           naive purely backward (reachability view, attractor)
``bw-improved``  backward with transpose graph and current-set frontier
``mp``           multiple-perspective: forward or backward per iteration,
                 chosen by comparing the safety winning set to a threshold

``fw`` and ``mp`` natively solve safety games, ``bw`` and ``bw-improved``
reachability games.  :func:`solve` routes any :class:`GameSpec` to any
engine through the reachability/safety duality.

Dead ends (nodes without successors) are won by the safety player unless
they already sit in the reachability target.  Every force operator below
applies that convention.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import AbstractSet, Optional

from .arena import Arena, GameSpec, Objective
from .errors import InternalSolverError, ObjectiveMismatch, UnknownEngine

log = logging.getLogger(__name__)


@dataclass
class InstrumentationCounters:
    """Work counters filled in by the solvers.

    ``edges_examined_reach_backward`` counts transpose edges walked while
    collecting reachability-owned predecessors; ``edges_examined_safe_check``
    counts subset tests ``succ(v) <= X`` on safety-owned candidates.
    """

    edges_examined_reach_backward: int = 0
    edges_examined_safe_check: int = 0
    nodes_visited: int = 0
    perspective_switches: int = 0


@dataclass
class SolveResult:
    """Winning regions plus per-run bookkeeping.

    ``history`` holds the size of the evolving set after each iteration
    (Q for backward engines, Win for forward ones).  ``directions`` is one
    character per multiple-perspective iteration: ``F`` or ``B``.
    """

    win_reach: frozenset
    win_safe: frozenset
    iterations: int
    counters: InstrumentationCounters = field(default_factory=InstrumentationCounters)
    history: tuple = ()
    directions: str = ""

    @property
    def partition(self) -> tuple:
        return self.win_reach, self.win_safe


@dataclass(frozen=True)
class MpConfig:
    """Threshold for the multiple-perspective solver.

    Forward steps run while ``|Win| <= threshold``.  ``None`` means
    half the node count, rounded down.
    """

    threshold: Optional[int] = None

    def resolve(self, num_nodes: int) -> int:
        t = num_nodes // 2 if self.threshold is None else self.threshold
        if not 0 <= t <= num_nodes:
            raise ValueError(f"threshold {t} outside [0, {num_nodes}]")
        return t


def _require(spec: GameSpec, objective: Objective, name: str) -> None:
    if spec.objective is not objective:
        raise ObjectiveMismatch(
            f"{name} solves {objective.value} games; route {spec.objective.value} "
            "games through solve() or solve_safety_via_duality()")


def _guard(iteration: int, arena: Arena, name: str) -> None:
    if iteration > arena.num_nodes + 2:
        raise InternalSolverError(
            f"{name} exceeded {arena.num_nodes + 2} iterations on {arena.num_nodes} nodes")


def _result(arena, win_reach, iterations, counters, history, directions=""):
    win_reach = frozenset(win_reach)
    return SolveResult(win_reach, arena.nodes - win_reach, iterations,
                       counters, tuple(history), directions)


# ---------------------------------------------------------------------------
# Force operators


def force_r(arena: Arena, x: AbstractSet[int]) -> frozenset:
    """One-step attractor of ``x``, evaluated straight from the definition.

    A reachability node joins if one successor lies in ``x``; a safety
    node joins if it has successors and all of them lie in ``x``.
    """
    arena.check_nodes(x)
    succ = arena.succ
    reach_comp = {v for v in arena.reach_nodes if not succ[v].isdisjoint(x)}
    safety_comp = {v for v in arena.safety_nodes if succ[v] and succ[v] <= x}
    return frozenset(reach_comp | safety_comp)


def naive_force_reach(arena: Arena, q: AbstractSet[int],
                      counters: Optional[InstrumentationCounters] = None) -> frozenset:
    """Reachability-owned nodes with an edge into ``q``, by a full Q x V_R scan."""
    succ = arena.succ
    reach = list(arena.reach_nodes)
    f = set()
    for u in q:
        f.update([v for v in reach if u in succ[v]])
    if counters is not None:
        counters.nodes_visited += len(q) * len(reach)
    return frozenset(f)


def naive_force_safe(arena: Arena, q: AbstractSet[int],
                     counters: Optional[InstrumentationCounters] = None) -> frozenset:
    """Safety-owned nodes (not dead ends) whose successors all lie in ``q``; scans all of V_S."""
    succ = arena.succ
    f = frozenset(v for v in arena.safety_nodes if succ[v] and succ[v] <= q)
    if counters is not None:
        counters.edges_examined_safe_check += len(arena.safety_nodes)
    return f


def force_reach(arena: Arena, c: AbstractSet[int],
                counters: Optional[InstrumentationCounters] = None) -> frozenset:
    """Reachability-owned predecessors of the current set ``c`` via the transpose."""
    arena = arena.with_transpose()
    pred, is_reach = arena.pred, arena.is_reach
    f = set()
    walked = 0
    for u in c:
        p = pred[u]
        walked += len(p)
        f.update([v for v in p if is_reach[v]])
    if counters is not None:
        counters.edges_examined_reach_backward += walked
    return frozenset(f)


def force_safe(arena: Arena, q: AbstractSet[int],
               counters: Optional[InstrumentationCounters] = None) -> frozenset:
    """Safety-owned predecessors of ``q`` whose successors all lie in ``q``.

    Candidates come from the transpose; the subset test uses the straight graph.
    """
    arena = arena.with_transpose()
    pred, succ, is_reach = arena.pred, arena.succ, arena.is_reach
    f = set()
    tests = 0
    for u in q:
        for v in pred[u]:
            if is_reach[v]:
                continue
            tests += 1
            if succ[v] <= q:
                f.add(v)
    if counters is not None:
        counters.edges_examined_safe_check += tests
    return frozenset(f)


def step_forward(arena: Arena, win: AbstractSet[int],
                 counters: Optional[InstrumentationCounters] = None) -> frozenset:
    """Nodes of ``win`` that survive one forward step.

    Safety nodes stay if they are dead ends or have a successor in ``win``;
    reachability nodes stay if every successor is in ``win``.
    """
    succ, is_reach = arena.succ, arena.is_reach
    f = set()
    for u in win:
        out = succ[u]
        if is_reach[u]:
            if out <= win:
                f.add(u)
        elif not out or not out.isdisjoint(win):
            f.add(u)
    if counters is not None:
        counters.nodes_visited += len(win)
    return frozenset(f)


def step_backward(arena: Arena, lose: AbstractSet[int], last_force_reach: AbstractSet[int],
                  counters: Optional[InstrumentationCounters] = None,
                  use_processed: bool = True) -> frozenset:
    """Nodes newly forced into ``lose`` by one backward step.

    The reachability part only walks predecessors of ``last_force_reach``
    (the previous frontier).  The safety part walks predecessors of all of
    ``lose`` and subset-tests each candidate at most once thanks to the
    processed set; ``use_processed=False`` disables that memo for debugging.
    """
    arena = arena.with_transpose()
    pred, succ, is_reach = arena.pred, arena.succ, arena.is_reach
    f_r = set()
    walked = 0
    for u in last_force_reach:
        p = pred[u]
        walked += len(p)
        f_r.update([v for v in p if is_reach[v] and v not in lose])

    f_s = set()
    processed = set()
    tests = 0
    for u in lose:
        for v in pred[u]:
            if is_reach[v] or v in lose:
                continue
            if use_processed:
                if v in processed:
                    continue
                processed.add(v)
            tests += 1
            if succ[v] <= lose:
                f_s.add(v)
    if counters is not None:
        counters.edges_examined_reach_backward += walked
        counters.edges_examined_safe_check += tests
    return frozenset(f_r | f_s)


# ---------------------------------------------------------------------------
# Solvers


def solve_forward_naive(spec: GameSpec) -> SolveResult:
    """Shrink the safety target until ``Win == Win & force(Win)``."""
    _require(spec, Objective.SAFE, "solve_forward_naive")
    arena = spec.arena
    counters = InstrumentationCounters()
    win = frozenset(spec.target)
    history = []
    iteration = 0
    while True:
        iteration += 1
        _guard(iteration, arena, "solve_forward_naive")
        new = win & step_forward(arena, win, counters)
        history.append(len(new))
        log.debug("fw iteration %d: |Win| %d -> %d", iteration, len(win), len(new))
        if len(new) == len(win):
            break
        win = new
    return _result(arena, arena.nodes - win, iteration, counters, history)


def solve_backward_naive(spec: GameSpec) -> SolveResult:
    """Attractor of the reachability target, rescanning V_R and V_S every round."""
    _require(spec, Objective.REACH, "solve_backward_naive")
    arena = spec.arena
    counters = InstrumentationCounters()
    q = frozenset(spec.target)
    history = []
    iteration = 0
    while True:
        iteration += 1
        _guard(iteration, arena, "solve_backward_naive")
        f = naive_force_reach(arena, q, counters) | naive_force_safe(arena, q, counters)
        new = q | f
        history.append(len(new))
        log.debug("bw iteration %d: |Q| %d -> %d", iteration, len(q), len(new))
        if len(new) == len(q):
            break
        q = new
    return _result(arena, q, iteration, counters, history)


def solve_backward_improved(spec: GameSpec) -> SolveResult:
    """Attractor using the transpose graph and the current-set frontier.

    Only nodes added in the previous round are expanded for the
    reachability component, so every transpose edge is walked at most once
    by that component over the whole run.
    """
    _require(spec, Objective.REACH, "solve_backward_improved")
    arena = spec.arena.with_transpose()
    counters = InstrumentationCounters()
    q = set(spec.target)
    c = frozenset(q)
    history = []
    iteration = 0
    while True:
        iteration += 1
        _guard(iteration, arena, "solve_backward_improved")
        f = (force_reach(arena, c, counters) | force_safe(arena, q, counters)) - q
        q |= f
        history.append(len(q))
        log.debug("bw-improved iteration %d: |C| %d, |Q| %d", iteration, len(f), len(q))
        if not f:
            break
        c = f
    return _result(arena, q, iteration, counters, history)


def solve_multiple_perspective(spec: GameSpec, cfg: Optional[MpConfig] = None) -> SolveResult:
    """Safety solver that switches between forward and backward steps.

    A forward step runs whenever ``|Win| <= threshold``, a backward step
    otherwise.  The transpose is built here when ``spec.arena`` lacks it,
    so its cost is part of the solve.
    """
    _require(spec, Objective.SAFE, "solve_multiple_perspective")
    arena = spec.arena.with_transpose()
    threshold = (cfg or MpConfig()).resolve(arena.num_nodes)
    counters = InstrumentationCounters()

    win = frozenset(spec.target)
    lose = arena.nodes - win
    last_force_reach = lose
    history = []
    directions = []
    iteration = 0
    while True:
        iteration += 1
        _guard(iteration, arena, "solve_multiple_perspective")
        before = len(win)
        # win only shrinks, so once forward we never go back (frontier stays valid)
        if before <= threshold:
            f = step_forward(arena, win, counters)
            removed = win - f
            win = win & f
            lose = lose | removed
            step = "F"
        else:
            f = step_backward(arena, lose, last_force_reach, counters)
            win = win - f
            lose = lose | f
            last_force_reach = f
            step = "B"
        if directions and directions[-1] != step:
            counters.perspective_switches += 1
        directions.append(step)
        history.append(len(win))
        log.debug("mp iteration %d (%s): |Win| %d -> %d", iteration, step, before, len(win))
        if len(win) == before:
            break
    return _result(arena, lose, iteration, counters, history, "".join(directions))


ENGINES = {
    "fw": (solve_forward_naive, Objective.SAFE),
    "bw": (solve_backward_naive, Objective.REACH),
    "bw-improved": (solve_backward_improved, Objective.REACH),
    "mp": (solve_multiple_perspective, Objective.SAFE),
}


def solve_safety_via_duality(spec: GameSpec, engine: str,
                             cfg: Optional[MpConfig] = None) -> SolveResult:
    """Solve ``spec`` with any engine, complementing the game when needed.

    Owners are tagged by role rather than by player index, so the dual
    game keeps every node's owner and only complements the target: the
    safety player staying in ``F`` is the reachability player failing to
    reach ``V \\ F``.
    """
    try:
        solver, native = ENGINES[engine]
    except KeyError:
        raise UnknownEngine(f"unknown engine {engine!r}; choose from {sorted(ENGINES)}") from None
    if spec.objective is not native:
        spec = spec.dual()
    if engine == "mp":
        return solver(spec, cfg)
    return solver(spec)


solve = solve_safety_via_duality
