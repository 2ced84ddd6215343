# Named experiments: each one binds generators, procedures and Monte Carlo
# metrics to a single claim and returns an ExperimentReport of verdicts.
#
# Every experiment derives its own stream seed from (seed, experiment name), so
# two experiments never share random numbers and changing n_reps in one of them
# leaves the others untouched.

import logging
import math
from dataclasses import replace

import numpy as np

from fdr_forge.errors import PreconditionError
from fdr_forge.generators import (
    GeneratorSpec,
    counterexample_bh_fdr,
    default_t_grid,
    derive_seed,
    derive_stream_key,
    find_t_star,
    gap_scale,
    limit_functions,
    null_permutation,
    null_shuffle_transform,
    replication_rng,
    sample_rows,
    storey_breaker_spec,
)
from fdr_forge.harness.verdicts import ExperimentReport, at_most, check, exceeds
from fdr_forge.metrics import convergence_profile, ecdf_bound_check, fdp, mc_fdr_many
from fdr_forge.model import DEFAULT_LAMBDA, PiRule, ProcedureSpec, TestingProblem
from fdr_forge.procedures import exponential_nu, permutation_image, permute_problem, shape_from_nu, step_up, uniform_nu
from fdr_forge.settings import SIGMA_MARGIN

logger = logging.getLogger(__name__)

# Asymptotic BH tolerances per m; other sizes fall back to 0.5 / sqrt(m).
BH_EPSILON = {100: 0.05, 1000: 0.02, 10_000: 0.01}
FDRHAT_GRID = np.linspace(0.025, 0.5, 20)


def stream_seed(seed: int, experiment: str) -> int:
    return derive_seed(seed, "experiment:" + experiment)


def nu_procedures(m: int, q: float) -> list[ProcedureSpec]:
    # The two nu-induced shapes checked next to BY.
    return [
        ProcedureSpec.by(q),
        ProcedureSpec(PiRule.constant(1.0), shape_from_nu(uniform_nu(m), m), q, "nu-uniform"),
        ProcedureSpec(PiRule.constant(1.0), shape_from_nu(exponential_nu(m), m), q, "nu-exponential"),
    ]


def default_by_configs() -> list[GeneratorSpec]:
    return [
        GeneratorSpec("classical_iid", 200, 100),
        GeneratorSpec("average_slopes", 200, 200, slopes=(0.0, 2.0)),
        GeneratorSpec("average_slopes", 200, 100, slopes=(0.5, 3.5)),
        GeneratorSpec("counterexample", 2),
        GeneratorSpec("block_dependent", 200, 100, slopes=(2.0,), block_size=10, rho=0.0),
        GeneratorSpec("block_dependent", 200, 100, slopes=(2.0,), block_size=10, rho=0.5),
        GeneratorSpec("block_dependent", 200, 100, slopes=(2.0,), block_size=10, rho=0.8),
    ]


def default_fdrhat_generators() -> list[GeneratorSpec]:
    return [
        GeneratorSpec("classical_iid", 100, 50),
        GeneratorSpec("average_slopes", 100, 100, slopes=(0.0, 2.0)),
        GeneratorSpec("average_slopes", 100, 50, slopes=(2.0,)),
    ]


def default_asymptotic_generators() -> list[GeneratorSpec]:
    return [
        GeneratorSpec("classical_iid", 100, 50),
        GeneratorSpec("block_dependent", 100, 50, block_size=10, rho=0.5),
    ]


def _design_effect(spec: GeneratorSpec) -> float:
    # sqrt(b) inflation for block-dependent rows.
    if spec.kind == "block_dependent" and spec.rho > 0.0:
        return math.sqrt(spec.block_size)
    return 1.0


def _describe(spec: GeneratorSpec) -> str:
    extra = ""
    if spec.kind == "block_dependent":
        extra = f", b={spec.block_size}, rho={spec.rho}"
    elif spec.kind != "counterexample" and spec.slopes != (1.0,):
        extra = f", slopes={list(spec.slopes)}"
    return f"{spec.kind}(m={spec.m}, m0={spec.m0}{extra})"


def exp_counterexample(m: int = 2, q: float = 0.25, n_reps: int = 200_000, seed: int = 0,
                       threads: int | None = None) -> ExperimentReport:
    spec = GeneratorSpec("counterexample", m, q=q)
    run_seed = stream_seed(seed, "counterexample")
    report = ExperimentReport("counterexample", {"m": m, "q": q, "n_reps": n_reps, "seed": seed,
                                                 "stream_seed": run_seed, "generator": spec.to_dict()})
    bh_rep, by_rep = mc_fdr_many(spec, [ProcedureSpec.bh(q), ProcedureSpec.by(q)], n_reps, run_seed, threads)
    bound = counterexample_bh_fdr(q)
    report.add(exceeds("BH FDR exceeds q on the counterexample", "step-up counterexample", bh_rep, q))
    se = bh_rep.se or 0.0
    if m == 2:
        report.add(check("BH FDR matches the exact value q + q^2/4", "step-up counterexample, m = 2",
                         bh_rep.mean_fdp, bound, abs(bh_rep.mean_fdp - bound) <= SIGMA_MARGIN * se, bh_rep.se))
    else:
        report.add(check("BH FDR is at least q + q^2/4", "step-up counterexample lower bound",
                         bh_rep.mean_fdp, bound, bh_rep.mean_fdp >= bound - SIGMA_MARGIN * se, bh_rep.se))
    report.add(at_most("BY controls FDR on the counterexample", "dependence-controlling shapes", by_rep, q))
    report.tables["reports"] = [bh_rep.csv_row(), by_rep.csv_row()]
    return report


def exp_by_control(configs: list[GeneratorSpec] | None = None, qs=(0.05, 0.1, 0.2), n_reps: int = 2000,
                   seed: int = 0, threads: int | None = None) -> ExperimentReport:
    configs = default_by_configs() if configs is None else configs
    run_seed = stream_seed(seed, "by-control")
    report = ExperimentReport("by-control", {"qs": list(qs), "n_reps": n_reps, "seed": seed, "stream_seed": run_seed,
                                             "generators": [g.to_dict() for g in configs]})
    rows = []
    for genspec in configs:
        for q in qs:
            spec = replace(genspec, q=q) if genspec.kind == "counterexample" else genspec
            procs = nu_procedures(spec.m, q)
            for proc, rep in zip(procs, mc_fdr_many(spec, procs, n_reps, run_seed, threads)):
                report.add(at_most(f"{proc.name} controls FDR on {_describe(spec)} at q={q}",
                                   "dependence-controlling shapes", rep, q))
                rows.append(rep.csv_row())
    report.tables["reports"] = rows
    return report


def exp_fdrhat_bias(generators: list[GeneratorSpec] | None = None, t_grid=None, n_reps: int = 5000,
                    seed: int = 0, threads: int | None = None) -> ExperimentReport:
    generators = default_fdrhat_generators() if generators is None else generators
    t_grid = FDRHAT_GRID if t_grid is None else np.asarray(t_grid, dtype=np.float64)
    for g in generators:
        if g.kind == "block_dependent" and g.rho > 0.0 and g.block_size > 1:
            raise PreconditionError(f"the fdr_hat bias check needs independent p-values; got {_describe(g)}")
    run_seed = stream_seed(seed, "fdrhat-bias")
    report = ExperimentReport("fdrhat-bias", {"t_grid": t_grid.tolist(), "n_reps": n_reps, "seed": seed,
                                              "stream_seed": run_seed,
                                              "generators": [g.to_dict() for g in generators]})
    rows = []
    for genspec in generators:
        targets = [float(t) for t in t_grid]
        for t, rep in zip(targets, mc_fdr_many(genspec, targets, n_reps, run_seed, threads)):
            se = rep.se or 0.0
            report.add(check(f"mean fdr_hat >= FDR at t={t:.4g} on {_describe(genspec)}",
                             "upward bias of fdr_hat", rep.mean_fdr_hat, rep.mean_fdp,
                             rep.mean_fdr_hat >= rep.mean_fdp - SIGMA_MARGIN * se, rep.se))
            rows.append({"label": _describe(genspec), **rep.csv_row()})
    report.tables["reports"] = rows
    return report


def _epsilon(m: int) -> float:
    return BH_EPSILON.get(m, 0.5 / math.sqrt(m))


def check_t_star(genspec: GeneratorSpec, q: float) -> float:
    # Asymptotic BH control needs some t* with F(t*) > 0 and G(t*)/F(t*) < q.
    lf = limit_functions(genspec)
    t_star = find_t_star(lf, q)
    if t_star is None:
        grid = np.linspace(1e-4, 1.0, 10_000)
        ratio = float(lf.fdr_inf(grid).min())
        raise PreconditionError(
            f"no t* with G(t*)/F(t*) < q={q} for {_describe(genspec)}: min G/F on (0, 1] is {ratio:.4g}"
        )
    return t_star


def exp_asymptotic_bh(generators: list[GeneratorSpec] | None = None, q: float = 0.1,
                      m_list=(100, 1000, 10_000), n_reps: int = 300, seed: int = 0,
                      threads: int | None = None) -> ExperimentReport:
    generators = default_asymptotic_generators() if generators is None else generators
    m_list = sorted(int(m) for m in m_list)
    t_stars = [check_t_star(g, q) for g in generators]
    run_seed = stream_seed(seed, "asymptotic-bh")
    report = ExperimentReport("asymptotic-bh", {"q": q, "m_list": m_list, "n_reps": n_reps, "seed": seed,
                                                "stream_seed": run_seed, "t_star": t_stars,
                                                "generators": [g.to_dict() for g in generators]})
    fdr_rows, conv_rows = [], []
    for genspec in generators:
        name = _describe(genspec.with_m(m_list[0]))
        deff = _design_effect(genspec)
        for m in m_list:
            rep = mc_fdr_many(genspec.with_m(m), [ProcedureSpec.bh(q)], n_reps, run_seed, threads)[0]
            eps = _epsilon(m)
            report.add(check(f"BH FDR <= q + {eps:.3g} at m={m} ({name})", "asymptotic BH control",
                             rep.mean_fdp, q + eps, rep.mean_fdp <= q + eps, rep.se,
                             detail=f"fdp_q90={rep.fdp_quantile:.4g}"))
            fdr_rows.append({**rep.csv_row(), "epsilon": eps})
        lf = limit_functions(genspec)
        profile = convergence_profile(genspec, m_list=m_list, n_reps=n_reps, seed=run_seed, threads=threads)
        scale = gap_scale(lf, default_t_grid(lf))
        for row in profile:
            m = row["m"]
            tol = SIGMA_MARGIN * deff / math.sqrt(m)
            for key, label in (("sup_dev_V", "V(t)/m - G(t)"), ("sup_dev_R", "R(t)/m - F(t)")):
                report.add(check(f"sup|{label}| within {tol:.3g} at m={m} ({name})", "uniform law of large numbers",
                                 row[key], tol, row[key] <= tol))
            gap_tol = tol * scale
            report.add(check(f"min_t fdr_hat - FDP >= -{gap_tol:.3g} at m={m} ({name})", "conservative consistency",
                             row["min_gap"], -gap_tol, row["min_gap"] >= -gap_tol,
                             detail=f"C={scale:.4g} worst={row['worst_min_gap']:.4g}"))
            conv_rows.append({"generator": name, **row, "tolerance": tol, "gap_tolerance": gap_tol})
        for before, after in zip(profile, profile[1:]):
            for key in ("sup_dev_V", "sup_dev_R", "sup_dev_fdp"):
                report.add(check(f"{key} shrinks from m={before['m']} to m={after['m']} ({name})",
                                 "convergence to the limit functions", after[key], before[key],
                                 after[key] < before[key]))
    report.tables["bh"] = fdr_rows
    report.tables["convergence"] = conv_rows
    return report


def default_oracle_generator() -> GeneratorSpec:
    return GeneratorSpec("average_slopes", 50, 25, slopes=(0.5, 3.5))


def exp_oracle_equivalence(genspec: GeneratorSpec | None = None, procedures: list[ProcedureSpec] | None = None,
                           n_reps: int = 1000, seed: int = 0, q: float = 0.1) -> ExperimentReport:
    genspec = default_oracle_generator() if genspec is None else genspec
    procedures = procedures or [ProcedureSpec.bh(q), ProcedureSpec.by(q), ProcedureSpec.storey(q)]
    if genspec.m0 == 0:
        raise PreconditionError("the oracle transform needs at least one true null")
    run_seed = stream_seed(seed, "oracle-equivalence")
    spec = genspec.with_seed(run_seed)
    report = ExperimentReport("oracle-equivalence", {"n_reps": n_reps, "seed": seed, "stream_seed": run_seed,
                                                     "generator": spec.to_dict(),
                                                     "procedures": [p.to_dict() for p in procedures]})
    P = sample_rows(spec, 0, n_reps)
    mask = spec.null_mask()
    perm_key = derive_stream_key(run_seed, "oracle-permutations")
    image_mismatch = {p.name: 0 for p in procedures}
    fdp_mismatch = {p.name: 0 for p in procedures}
    transformed = np.empty((n_reps, spec.m0))
    for rep, row in enumerate(P):
        rng = replication_rng(perm_key, rep)
        problem = TestingProblem(row, mask)
        sigma = null_permutation(mask, rng)
        tau = rng.permutation(spec.m)
        shuffled = TestingProblem(row[sigma], mask)
        moved = permute_problem(problem, tau)
        for proc in procedures:
            base = step_up(problem, proc)
            if step_up(moved, proc).rejected != permutation_image(base, tau).rejected:
                image_mismatch[proc.name] += 1
            if fdp(step_up(shuffled, proc), mask) != fdp(base, mask):
                fdp_mismatch[proc.name] += 1
        transformed[rep] = null_shuffle_transform(problem, sigma=sigma).pvalues[mask]
    for proc in procedures:
        report.add(check(f"{proc.name} rejection set follows any relabelling", "permutation invariance",
                         image_mismatch[proc.name], 0, image_mismatch[proc.name] == 0))
        report.add(check(f"{proc.name} FDP unchanged by a null permutation", "oracle transform identity",
                         fdp_mismatch[proc.name], 0, fdp_mismatch[proc.name] == 0))
    ecdf = ecdf_bound_check(transformed)
    report.add(check("transformed nulls satisfy the classical level condition", "permutation-scaling transform",
                     ecdf["sup_excess"], ecdf["bound"], ecdf["passed"],
                     detail=f"worst null column {ecdf['worst_column'] + 1} of {ecdf['columns']}"))
    report.tables["checks"] = [
        {"procedure": p.name, "relabel_mismatches": image_mismatch[p.name], "fdp_mismatches": fdp_mismatch[p.name]}
        for p in procedures
    ]
    report.tables["ecdf"] = [ecdf]
    return report


def exp_storey_failure(m: int = 10_000, q: float = 0.1, lam: float = DEFAULT_LAMBDA, n_reps: int = 500,
                       seed: int = 0, threads: int | None = None) -> ExperimentReport:
    run_seed = stream_seed(seed, "storey-failure")
    breaker = storey_breaker_spec(m, lam)
    control = GeneratorSpec("classical_iid", m, max(1, m // 2))
    report = ExperimentReport("storey-failure", {"m": m, "q": q, "lambda": lam, "n_reps": n_reps, "seed": seed,
                                                 "stream_seed": run_seed, "generator": breaker.to_dict(),
                                                 "control": control.to_dict()})
    storey = ProcedureSpec.storey(q, lam)
    st_rep, by_rep, bh_rep = mc_fdr_many(breaker, [storey, ProcedureSpec.by(q), ProcedureSpec.bh(q)], n_reps,
                                         run_seed, threads)
    report.add(exceeds("Storey-adaptive BH exceeds q under average level control", "adaptive pi failure",
                       st_rep, q))
    report.add(at_most("BY controls FDR on the same law", "dependence-controlling shapes", by_rep, q))
    ctl_rep = mc_fdr_many(control, [storey], n_reps, run_seed, threads)[0]
    report.add(at_most("Storey-adaptive BH controls FDR with uniform nulls", "adaptive pi under the classical level",
                       ctl_rep, q))
    report.tables["reports"] = [st_rep.csv_row(), by_rep.csv_row(), bh_rep.csv_row(), ctl_rep.csv_row()]
    return report
