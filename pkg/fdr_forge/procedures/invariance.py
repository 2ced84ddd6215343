# Permutations of hypotheses and the oracle scaling p -> p * m0/m.

import numpy as np

from fdr_forge.errors import ConfigurationError
from fdr_forge.model import ProcedureSpec, RejectionSet, TestingProblem
from fdr_forge.procedures.step_up import step_up


def _check_permutation(sigma) -> np.ndarray:
    sigma = np.asarray(sigma, dtype=np.int64)
    if sigma.ndim != 1 or not np.array_equal(np.sort(sigma), np.arange(sigma.size)):
        raise ConfigurationError("sigma is not a bijection on the hypothesis indices")
    return sigma


def permutation_image(rejset: RejectionSet, sigma) -> RejectionSet:
    # {sigma(i) : i in R}; sigma[i] is the image of index i (0-based).
    sigma = _check_permutation(sigma)
    if rejset.rejected and max(rejset.rejected) >= sigma.size:
        raise ConfigurationError("rejected index outside the permutation's domain")
    image = sorted(int(sigma[i]) for i in rejset.rejected)
    return RejectionSet(tuple(image), rejset.threshold, rejset.flags)


def permute_problem(problem: TestingProblem, sigma) -> TestingProblem:
    # Move hypothesis i to position sigma(i), so that for a symmetric procedure
    # R(permute_problem(p, sigma)) == permutation_image(R(p), sigma).
    sigma = _check_permutation(sigma)
    if sigma.size != problem.m:
        raise ConfigurationError(f"sigma has length {sigma.size}, problem has m = {problem.m}")
    p = np.empty(problem.m)
    mask = np.empty(problem.m, dtype=bool)
    p[sigma] = problem.pvalues
    mask[sigma] = problem.null_mask
    return TestingProblem(p, mask, problem.scaled)


def oracle_scaled(problem: TestingProblem, spec: ProcedureSpec) -> RejectionSet:
    # Run the procedure on p * (m0/m). With m0 = 0 every scaled value is 0; flagged.
    m0 = problem.m0
    scaled = TestingProblem(problem.pvalues * (m0 / problem.m), problem.null_mask, problem.scaled)
    result = step_up(scaled, spec)
    if m0 == 0:
        return RejectionSet(result.rejected, result.threshold, result.flags + ("m0=0",))
    return result
