# Experiment names as used on the command line.

import inspect
import logging

from fdr_forge.errors import ConfigurationError
from fdr_forge.harness import experiments
from fdr_forge.harness.verdicts import ExperimentReport

logger = logging.getLogger(__name__)

EXPERIMENTS = {
    "counterexample": experiments.exp_counterexample,
    "by-control": experiments.exp_by_control,
    "fdrhat-bias": experiments.exp_fdrhat_bias,
    "asymptotic-bh": experiments.exp_asymptotic_bh,
    "oracle-equivalence": experiments.exp_oracle_equivalence,
    "storey-failure": experiments.exp_storey_failure,
}


def accepted_overrides(name: str) -> list[str]:
    return list(inspect.signature(_lookup(name)).parameters)


def _lookup(name: str):
    try:
        return EXPERIMENTS[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown experiment {name!r}; expected one of {', '.join(EXPERIMENTS)}"
        ) from None


def run_experiment(name: str, **overrides) -> ExperimentReport:
    # Overrides must name parameters of the experiment; None values are dropped.
    fn = _lookup(name)
    overrides = {k: v for k, v in overrides.items() if v is not None}
    params = inspect.signature(fn).parameters
    unknown = sorted(set(overrides) - set(params))
    if unknown:
        raise ConfigurationError(
            f"experiment {name!r} does not take {', '.join(unknown)}; accepted: {', '.join(params)}"
        )
    logger.info("[INFO] running experiment %s %s", name, overrides or "")
    report = fn(**overrides)
    logger.info("[%s] %s: %d/%d verdicts passed", "PASS" if report.passed else "FAIL", name,
                sum(v.passed for v in report.verdicts), len(report.verdicts))
    return report
