"""Randomized verification of the mean inequalities.

Runs a compact version of the full suite (fewer trials than the acceptance
run) and prints the tightest normalized slack per check. Slacks near zero
mean the inequality is nearly attained; negative slacks beyond the
tolerance are failures.
"""
from opmeans.verify import TrialConfig, run_suite

report = run_suite(TrialConfig(trials=100, seed=1), "all", dims=(2, 4))
for r in report.results:
    flag = "ok  " if r.passed else "FAIL"
    print(f"{flag} {r.label:40s} dim={r.dim}  min slack {r.min_slack:+.3e}  failures {r.n_failures}")
print("\noverall pass:", report.passed)
