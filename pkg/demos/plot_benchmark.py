"""
A small benchmark battery
=========================

Times the forward, backward and multiple-perspective solvers on a few
random safety games and prints the result table.
"""

import statistics

from reachsafe import ExperimentParams, emit_table, run_experiment_battery

params = ExperimentParams(500, 1500, 1, 5, 0.1, 0.5, experiments=5, seed=1)
records = run_experiment_battery(params, include_improved=True)
print(emit_table(records, "markdown"))

print("median saving vs backward: %.2f%%" % statistics.median(r.saving_wrt_bw for r in records))
print("median saving vs forward:  %.2f%%" % statistics.median(r.saving_wrt_fw for r in records))
