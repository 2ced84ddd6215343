# Named experiments. Full-size acceptance runs are marked slow.

import csv
import json

import pytest

from fdr_forge import ConfigurationError, PreconditionError
from fdr_forge.generators import GeneratorSpec
from fdr_forge.harness import (
    EXPERIMENTS,
    exp_asymptotic_bh,
    exp_by_control,
    exp_counterexample,
    exp_fdrhat_bias,
    exp_oracle_equivalence,
    exp_storey_failure,
    run_experiment,
    stream_seed,
)

EXACT_REFERENCES = ("permutation invariance", "oracle transform identity")


def test_registry_names():
    assert list(EXPERIMENTS) == [
        "counterexample", "by-control", "fdrhat-bias", "asymptotic-bh", "oracle-equivalence", "storey-failure",
    ]


def test_unknown_experiment_and_override():
    with pytest.raises(ConfigurationError, match="unknown experiment"):
        run_experiment("holm")
    with pytest.raises(ConfigurationError, match="does not take"):
        run_experiment("by-control", m=5)


def test_experiments_use_separate_streams():
    seeds = {stream_seed(0, name) for name in EXPERIMENTS}
    assert len(seeds) == len(EXPERIMENTS)


def test_counterexample_small():
    report = exp_counterexample(m=2, q=0.5, n_reps=20_000, seed=1)
    assert report.passed, [v for v in report.verdicts if not v.passed]
    bh_row, by_row = report.tables["reports"]
    assert bh_row["procedure"] == "bh" and by_row["procedure"] == "by"
    assert float(bh_row["mean_fdp"]) > 0.5


def test_counterexample_needs_q_below_two_thirds():
    with pytest.raises(PreconditionError):
        exp_counterexample(m=2, q=0.7, n_reps=10)


def test_counterexample_is_reproducible():
    a = exp_counterexample(m=3, q=0.5, n_reps=3000, seed=4)
    b = exp_counterexample(m=3, q=0.5, n_reps=3000, seed=4)
    assert a.to_dict() == b.to_dict()


def test_by_control_small():
    configs = [GeneratorSpec("counterexample", 2), GeneratorSpec("block_dependent", 60, 30, slopes=(2.0,),
                                                                 block_size=10, rho=0.8)]
    report = exp_by_control(configs=configs, qs=(0.1,), n_reps=2000, seed=2)
    assert len(report.verdicts) == 6
    assert report.passed


def test_fdrhat_bias_refuses_dependent_generators():
    with pytest.raises(PreconditionError, match="independent"):
        exp_fdrhat_bias(generators=[GeneratorSpec("block_dependent", 20, 10, block_size=5, rho=0.5)], n_reps=10)


def test_fdrhat_bias_small():
    report = exp_fdrhat_bias(generators=[GeneratorSpec("classical_iid", 40, 20)], t_grid=[0.05, 0.2, 0.5],
                             n_reps=2000, seed=3)
    assert len(report.verdicts) == 3
    assert report.passed


def test_asymptotic_bh_refuses_all_null():
    with pytest.raises(PreconditionError, match="min G/F"):
        exp_asymptotic_bh(generators=[GeneratorSpec("classical_iid", 100, 100)], n_reps=5)


def test_asymptotic_bh_small():
    report = exp_asymptotic_bh(generators=[GeneratorSpec("classical_iid", 100, 50)], m_list=(100, 1000),
                               n_reps=60, seed=5)
    assert report.passed, [v for v in report.verdicts if not v.passed]
    assert [row["m"] for row in report.tables["convergence"]] == [100, 1000]
    assert report.config["t_star"][0] > 0
    gaps = [v for v in report.verdicts if v.reference == "conservative consistency"]
    # tolerance scales as 1/sqrt(m) and is tight enough to fail: the gap itself lies in [-1, 1]
    assert gaps[0].margin / gaps[1].margin == pytest.approx(10 ** 0.5)
    assert -0.25 < gaps[0].margin < 0
    shrinks = [v for v in report.verdicts if v.reference == "convergence to the limit functions"]
    assert len(shrinks) == 3


def test_oracle_identities_are_exact():
    report = exp_oracle_equivalence(n_reps=200, seed=6)
    exact = [v for v in report.verdicts if v.reference in EXACT_REFERENCES]
    assert len(exact) == 6
    assert all(v.passed and v.estimate == 0 for v in exact)


def test_oracle_needs_nulls():
    with pytest.raises(PreconditionError):
        exp_oracle_equivalence(GeneratorSpec("classical_iid", 10, 0), n_reps=5)


def test_storey_failure_small():
    report = exp_storey_failure(m=1000, q=0.1, n_reps=200, seed=7)
    assert report.passed, [v for v in report.verdicts if not v.passed]
    storey_row = report.tables["reports"][0]
    assert float(storey_row["mean_fdp"]) > 0.3


def test_report_files(tmp_path):
    report = exp_counterexample(m=2, q=0.5, n_reps=500, seed=8)
    written = report.write(tmp_path)
    assert [p.name for p in written] == ["counterexample.json", "counterexample_reports.csv"]
    body = json.loads((tmp_path / "counterexample.json").read_text(encoding="utf-8"))
    assert body["experiment"] == "counterexample"
    assert body["config"]["n_reps"] == 500
    assert set(body["verdicts"][0]) == {"claim", "reference", "estimate", "se", "margin", "pass", "detail"}
    raw = (tmp_path / "counterexample_reports.csv").read_bytes()
    assert b"\r\n" not in raw
    with open(tmp_path / "counterexample_reports.csv", encoding="utf-8", newline="") as f:
        rows = list(csv.DictReader(f))
    assert [r["procedure"] for r in rows] == ["bh", "by"]


@pytest.mark.slow
def test_counterexample_acceptance():
    report = exp_counterexample()
    assert report.passed, [v for v in report.verdicts if not v.passed]


@pytest.mark.slow
@pytest.mark.parametrize("name", ["by-control", "fdrhat-bias", "asymptotic-bh", "oracle-equivalence",
                                  "storey-failure"])
def test_default_experiments_pass(name):
    report = run_experiment(name)
    assert report.passed, [v for v in report.verdicts if not v.passed]


@pytest.mark.slow
def test_storey_failure_at_small_m():
    assert exp_storey_failure(m=100).passed
