# Step-up procedures: reject every p <= t_hat where
#   t_hat = max{t : pi * m * t / beta(R(t)) <= q}.
#
# The max is attained at an order statistic, so we sort once and take
#   k* = max{k : beta(k) > 0 and pi * m * p_(k) <= q * beta(k)}
# (division-free, no rejection when k* = 0). The batch kernel works row-wise on an
# (n_reps, m) matrix; the single-problem entry points are its 1-row case.

import logging

import numpy as np

from fdr_forge.errors import ConfigurationError
from fdr_forge.model import PiRule, ProcedureSpec, RejectionSet, ShapeFunction, TestingProblem, check_level
from fdr_forge.procedures.storey import storey_pi_batch

logger = logging.getLogger(__name__)


def resolve_pi(pvalues: np.ndarray, rule: PiRule) -> np.ndarray:
    # One pi per row. A constant is used as given; Storey's estimate is floored at 1/m.
    P = np.atleast_2d(pvalues)
    m = P.shape[1]
    if rule.kind == "constant":
        return np.full(P.shape[0], float(rule.value))
    return np.maximum(storey_pi_batch(P, rule.lam, rule.normalized), 1.0 / m)


def step_up_batch(pvalues: np.ndarray, pi: np.ndarray, beta: np.ndarray, q: float) -> tuple[np.ndarray, np.ndarray]:
    # Returns (k_star, threshold) per row.
    P = np.atleast_2d(pvalues)
    n, m = P.shape
    srt = np.sort(P, axis=1)
    crit = beta[1 : m + 1]
    lhs = (np.asarray(pi, dtype=np.float64) * m)[:, None] * srt
    ok = (lhs <= q * crit) & (crit > 0)
    any_ok = ok.any(axis=1)
    k_star = np.where(any_ok, m - np.argmax(ok[:, ::-1], axis=1), 0)
    rows = np.arange(n)
    threshold = np.where(k_star > 0, srt[rows, np.maximum(k_star - 1, 0)], 0.0)
    return k_star, threshold


def step_up(problem: TestingProblem, spec: ProcedureSpec) -> RejectionSet:
    beta = spec.shape.values(problem.m)
    pi = resolve_pi(problem.pvalues, spec.pi)
    k_star, threshold = step_up_batch(problem.pvalues, pi, beta, spec.q)
    logger.debug("%s: pi=%.6g k*=%d t_hat=%.6g", spec.name, pi[0], k_star[0], threshold[0])
    if k_star[0] == 0:
        return RejectionSet.empty()
    return RejectionSet.from_threshold(problem, float(threshold[0]))


def bh(problem: TestingProblem, q: float) -> RejectionSet:
    return step_up(problem, ProcedureSpec.bh(q))


def by(problem: TestingProblem, q: float) -> RejectionSet:
    # Benjamini-Yekutieli: beta(k) = k / H_m.
    return step_up(problem, ProcedureSpec.by(q))


def fixed_threshold(problem: TestingProblem, t: float) -> RejectionSet:
    return RejectionSet.from_threshold(problem, check_level(t))


def adjusted_pvalues(problem: TestingProblem, spec: ProcedureSpec) -> np.ndarray:
    # min over j >= rank of pi*m*p_(j)/beta(j), capped at 1, in the original order.
    m = problem.m
    beta = spec.shape.values(m)[1:]
    pi = resolve_pi(problem.pvalues, spec.pi)[0]
    order = np.argsort(problem.pvalues, kind="stable")
    srt = problem.pvalues[order]
    factor = np.divide(pi * m, beta, out=np.ones(m), where=beta > 0)
    scaled = np.where(beta > 0, srt * factor, np.inf)
    stepped = np.minimum.accumulate(scaled[::-1])[::-1]
    out = np.empty(m)
    out[order] = np.minimum(np.maximum(stepped, srt), 1.0)
    return out


def named_procedure(name: str, q: float, lam: float | None = None, pi: float | None = None,
                    shape: ShapeFunction | None = None) -> ProcedureSpec:
    # Flag-style construction used by the CLI: bh | by | storey | step-up.
    if name == "bh":
        return ProcedureSpec.bh(q)
    if name == "by":
        return ProcedureSpec.by(q)
    if name == "storey":
        return ProcedureSpec.storey(q) if lam is None else ProcedureSpec.storey(q, lam)
    if name == "step-up":
        rule = PiRule.constant(1.0 if pi is None else pi)
        return ProcedureSpec(rule, shape or ShapeFunction.identity(), q, "step-up")
    raise ConfigurationError(f"unknown procedure {name!r}")
