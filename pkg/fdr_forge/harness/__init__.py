from fdr_forge.harness.experiments import (
    check_t_star,
    exp_asymptotic_bh,
    exp_by_control,
    exp_counterexample,
    exp_fdrhat_bias,
    exp_oracle_equivalence,
    exp_storey_failure,
    stream_seed,
)
from fdr_forge.harness.registry import EXPERIMENTS, accepted_overrides, run_experiment
from fdr_forge.harness.verdicts import ExperimentReport, Verdict, write_csv

__all__ = [
    "EXPERIMENTS",
    "ExperimentReport",
    "Verdict",
    "accepted_overrides",
    "check_t_star",
    "exp_asymptotic_bh",
    "exp_by_control",
    "exp_counterexample",
    "exp_fdrhat_bias",
    "exp_oracle_equivalence",
    "exp_storey_failure",
    "run_experiment",
    "stream_seed",
    "write_csv",
]
