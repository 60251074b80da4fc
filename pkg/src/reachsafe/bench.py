"""Benchmark battery: forward vs naive backward vs multiple-perspective.

All three solvers receive the same straight-only arena and the safety
target.  The naive backward solver pays for complementing the target; the
multiple-perspective solver pays for building its transpose.  Timing uses
:func:`time.perf_counter` only.
"""
from __future__ import annotations

import csv
import io
import logging
import statistics
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .arena import GameSpec, Objective, serialize_arena
from .errors import ResultMismatch, ZeroBase
from .generator import ExperimentParams, experiment_spec, sample_experiment
from .solvers import (
    MpConfig,
    solve_backward_improved,
    solve_backward_naive,
    solve_forward_naive,
    solve_multiple_perspective,
)

log = logging.getLogger(__name__)

CSV_COLUMNS = (
    "experiment_label", "total_nodes", "total_edges", "target_nodes",
    "safety_nodes", "reachability_nodes", "fw_time_s", "bw_time_s", "mp_time_s",
    "saving_wrt_fw_pct", "saving_wrt_bw_pct",
)


@dataclass(frozen=True)
class ExperimentRecord:
    experiment_label: int
    total_nodes: int
    total_edges: int
    target_nodes: int
    safety_nodes: int
    reachability_nodes: int
    fw_time: float
    bw_time: float
    mp_time: float
    saving_wrt_fw: float
    saving_wrt_bw: float
    bw_improved_time: Optional[float] = None

    def row(self) -> list:
        return [
            str(self.experiment_label), str(self.total_nodes), str(self.total_edges),
            str(self.target_nodes), str(self.safety_nodes), str(self.reachability_nodes),
            f"{self.fw_time:.4f}", f"{self.bw_time:.4f}", f"{self.mp_time:.4f}",
            f"{self.saving_wrt_fw:.2f}", f"{self.saving_wrt_bw:.2f}",
        ]


def compute_saving(base_time: float, mp_time: float) -> float:
    """Percentage of ``base_time`` saved by ``mp_time``; negative when slower."""
    if base_time <= 0:
        raise ZeroBase(f"base time must be positive, got {base_time}")
    return (1.0 - mp_time / base_time) * 100.0


def _timed(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return result, statistics.median(times)


def _bw_from_safety(spec: GameSpec):
    reach_target = spec.arena.nodes - spec.target
    return solve_backward_naive(GameSpec(spec.arena, reach_target, Objective.REACH))


def _bw_improved_from_safety(spec: GameSpec):
    reach_target = spec.arena.nodes - spec.target
    return solve_backward_improved(GameSpec(spec.arena, reach_target, Objective.REACH))


def run_spec(label: int, spec: GameSpec, repeats: int = 1, include_improved: bool = False,
             cfg: Optional[MpConfig] = None, dump_dir: Optional[Path] = None) -> ExperimentRecord:
    """Time the battery solvers on one safety spec and check they agree."""
    if spec.objective is not Objective.SAFE:
        spec = spec.dual()
    straight = GameSpec(spec.arena.straight_only(), spec.target, Objective.SAFE)
    # warm the owner caches so no solver is charged for them
    straight.arena.is_reach, straight.arena.nodes

    fw, fw_time = _timed(lambda: solve_forward_naive(straight), repeats)
    bw, bw_time = _timed(lambda: _bw_from_safety(straight), repeats)
    mp, mp_time = _timed(lambda: solve_multiple_perspective(straight, cfg), repeats)
    results = {"fw": fw, "bw": bw, "mp": mp}
    bwi_time = None
    if include_improved:
        results["bw-improved"], bwi_time = _timed(lambda: _bw_improved_from_safety(straight), repeats)

    if len({r.win_safe for r in results.values()}) != 1:
        where = ""
        if dump_dir is not None:
            path = Path(dump_dir) / f"mismatch_{label}.arena"
            path.write_text(serialize_arena(spec))
            where = f"; arena dumped to {path}"
        sizes = {k: len(r.win_safe) for k, r in results.items()}
        raise ResultMismatch(f"experiment {label}: solvers disagree {sizes}{where}")

    arena = spec.arena
    record = ExperimentRecord(
        experiment_label=label,
        total_nodes=arena.num_nodes,
        total_edges=arena.num_edges,
        target_nodes=len(spec.target),
        safety_nodes=len(arena.safety_nodes),
        reachability_nodes=len(arena.reach_nodes),
        fw_time=fw_time, bw_time=bw_time, mp_time=mp_time,
        saving_wrt_fw=compute_saving(fw_time, mp_time),
        saving_wrt_bw=compute_saving(bw_time, mp_time),
        bw_improved_time=bwi_time,
    )
    log.info("experiment %d: n=%d m=%d fw=%.4fs bw=%.4fs mp=%.4fs", label,
             record.total_nodes, record.total_edges, fw_time, bw_time, mp_time)
    return record


def run_experiment_battery(params: ExperimentParams, repeats: int = 1,
                           include_improved: bool = False,
                           dump_dir: Optional[Path] = None) -> list:
    """Generate and time ``params.experiments`` arenas; labels start at 1."""
    params.validate()
    records = []
    for k in range(params.experiments):
        spec = experiment_spec(sample_experiment(params, k))
        records.append(run_spec(k + 1, spec, repeats, include_improved, dump_dir=dump_dir))
    return records


def emit_table(records, format: str = "csv") -> str:
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        writer.writerows(r.row() for r in records)
        return buf.getvalue()
    if format == "markdown":
        lines = ["| " + " | ".join(CSV_COLUMNS) + " |",
                 "|" + "---|" * len(CSV_COLUMNS)]
        lines += ["| " + " | ".join(r.row()) + " |" for r in records]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown table format {format!r}")


def read_table_csv(text: str) -> list:
    """Parse CSV produced by :func:`emit_table` back into records."""
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    return [
        ExperimentRecord(
            int(row["experiment_label"]), int(row["total_nodes"]), int(row["total_edges"]),
            int(row["target_nodes"]), int(row["safety_nodes"]), int(row["reachability_nodes"]),
            float(row["fw_time_s"]), float(row["bw_time_s"]), float(row["mp_time_s"]),
            float(row["saving_wrt_fw_pct"]), float(row["saving_wrt_bw_pct"]),
        )
        for row in reader
    ]
