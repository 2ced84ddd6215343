# FDP, fdr_hat, Monte Carlo estimation and convergence profiles.

import numpy as np
import pytest

from fdr_forge import FdrForgeError, PreconditionError, ProcedureSpec, RejectionSet, TestingProblem
from fdr_forge.generators import GeneratorSpec
from fdr_forge.metrics import (
    CONVERGENCE_COLUMNS,
    convergence_profile,
    ecdf_bound_check,
    fdp,
    fdr_hat,
    mc_fdr,
    mc_fdr_many,
    run_chunks,
    summarize,
)
from fdr_forge.metrics.monte_carlo import chunk_bounds


def test_fdp_examples():
    mask = [False, True, True]
    assert fdp(RejectionSet((0, 1), 0.5), mask) == 0.5
    assert fdp(RejectionSet.empty(), mask) == 0.0
    assert fdp(RejectionSet((1, 2), 0.5), mask) == 1.0


def test_fdr_hat():
    problem = TestingProblem.from_pvalues([0.01, 0.02, 0.9, 0.5])
    assert fdr_hat(problem, 0.02) == pytest.approx(4 * 0.02 / 2)
    assert fdr_hat(problem, 0.0) == 0.0
    assert fdr_hat(problem, 0.005) == pytest.approx(4 * 0.005)


def test_summarize():
    mean, var, se = summarize(np.array([0.0, 1.0, 0.5, 0.5]))
    assert mean == 0.5
    assert var == pytest.approx(1 / 6)
    assert se == pytest.approx(np.sqrt(1 / 24))
    assert summarize(np.array([0.25]))[1:] == (None, None)


def test_chunk_bounds():
    assert chunk_bounds(5, 2) == [(0, 2), (2, 4), (4, 5)]
    assert chunk_bounds(1024) == [(0, 1024)]


def test_single_replication_flags_variance():
    report = mc_fdr(GeneratorSpec("classical_iid", 20, 10), ProcedureSpec.bh(0.1), 1, seed=3)
    assert report.n_reps == 1
    assert report.se is None and report.variance is None
    assert "variance undefined (n_reps=1)" in report.flags
    assert report.csv_row()["se"] == ""


def test_replication_count_must_be_positive():
    with pytest.raises(PreconditionError):
        mc_fdr(GeneratorSpec("classical_iid", 20, 10), ProcedureSpec.bh(0.1), 0)


def test_results_do_not_depend_on_threads():
    spec = GeneratorSpec("block_dependent", 30, 15, block_size=5, rho=0.5)
    one = mc_fdr(spec, ProcedureSpec.by(0.2), 2500, seed=1, threads=1)
    four = mc_fdr(spec, ProcedureSpec.by(0.2), 2500, seed=1, threads=4)
    assert one.to_dict() == four.to_dict()


def test_seed_changes_results():
    spec = GeneratorSpec("classical_iid", 30, 15)
    a = mc_fdr(spec, ProcedureSpec.bh(0.2), 300, seed=1)
    b = mc_fdr(spec, ProcedureSpec.bh(0.2), 300, seed=2)
    assert a.mean_fdp != b.mean_fdp


def test_bh_fdr_under_independence():
    # BH with independent uniform nulls has FDR exactly q * m0 / m.
    report = mc_fdr(GeneratorSpec("classical_iid", 50, 25), ProcedureSpec.bh(0.2), 4000, seed=7)
    assert abs(report.mean_fdp - 0.1) <= 4 * report.se
    assert report.m == 50 and report.q == 0.2


def test_common_random_numbers():
    spec = GeneratorSpec("average_slopes", 40, 20, slopes=(2.0,))
    bh_rep, by_rep, fixed = mc_fdr_many(spec, [ProcedureSpec.bh(0.1), ProcedureSpec.by(0.1), 0.05], 500, seed=2)
    assert by_rep.mean_rejections <= bh_rep.mean_rejections
    assert fixed.procedure == {"name": "fixed", "fixed_t": 0.05}
    assert fixed.mean_fdr_hat is not None and fixed.mean_threshold is None
    assert bh_rep.mean_threshold is not None


def test_fixed_threshold_rejects_bad_levels():
    with pytest.raises(PreconditionError):
        mc_fdr(GeneratorSpec("classical_iid", 10, 5), 1.5, 10)


def test_errors_inside_replications_are_wrapped():
    def broken(P, start, stop):
        raise RuntimeError("boom")

    with pytest.raises(FdrForgeError, match="replications 0..9"):
        run_chunks(GeneratorSpec("classical_iid", 10, 5), 10, broken)


def test_convergence_profile_shrinks():
    rows = convergence_profile(GeneratorSpec("classical_iid", 100, 50), m_list=(100, 1000), n_reps=50, seed=1)
    assert [r["m"] for r in rows] == [100, 1000]
    assert set(rows[0]) == set(CONVERGENCE_COLUMNS)
    assert rows[1]["sup_dev_R"] < rows[0]["sup_dev_R"]
    assert rows[1]["sup_dev_V"] < rows[0]["sup_dev_V"]
    for row in rows:
        assert row["sup_dev_R"] <= 3 / np.sqrt(row["m"])
        assert row["worst_min_gap"] <= row["min_gap"]


def test_convergence_profile_rejects_bad_grid():
    spec = GeneratorSpec("classical_iid", 100, 50)
    with pytest.raises(PreconditionError):
        convergence_profile(spec, t_grid=[0.0, 0.5], m_list=(100,), n_reps=2)
    with pytest.raises(PreconditionError):
        convergence_profile(spec, t_grid=[], m_list=(100,), n_reps=2)


def test_ecdf_bound_check():
    rng = np.random.default_rng(12)
    uniform = rng.random((2000, 5))
    assert ecdf_bound_check(uniform)["passed"]
    assert ecdf_bound_check(2.0 * uniform)["passed"]
    result = ecdf_bound_check(uniform**2)
    assert not result["passed"]
    assert result["sup_excess"] == pytest.approx(0.25, abs=0.05)


def test_se_scales_with_root_n():
    spec = GeneratorSpec("classical_iid", 20, 10)
    se = [mc_fdr(spec, ProcedureSpec.bh(0.2), n, seed=12).se for n in (1_000, 10_000, 100_000)]
    ratios = [se[0] / se[1], se[1] / se[2]]
    np.testing.assert_allclose(ratios, np.sqrt(10), rtol=0.15)
