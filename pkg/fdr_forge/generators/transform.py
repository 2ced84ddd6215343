# Permutation-scaling transform: p~_i = (m/m0) * p_sigma(i), sigma a uniformly random
# permutation of the nulls (identity elsewhere). If the nulls satisfy average level
# control, each transformed null satisfies the classical condition.

import numpy as np

from fdr_forge.errors import PreconditionError
from fdr_forge.generators.streams import derive_stream_key, replication_rng
from fdr_forge.model import TestingProblem


def null_permutation(null_mask: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    # sigma as an index array: sigma[i] = sigma(i).
    sigma = np.arange(null_mask.size)
    nulls = np.flatnonzero(null_mask)
    sigma[nulls] = rng.permutation(nulls)
    return sigma


def null_shuffle_transform(problem: TestingProblem, seed: int = 0, sigma=None,
                           replication: int = 0) -> TestingProblem:
    m0 = problem.m0
    if m0 == 0:
        raise PreconditionError("the permutation-scaling transform needs at least one true null")
    if sigma is None:
        rng = replication_rng(derive_stream_key(seed, "permutation-scaling"), replication)
        sigma = null_permutation(problem.null_mask, rng)
    sigma = np.asarray(sigma)
    if not np.array_equal(problem.null_mask[sigma], problem.null_mask):
        raise PreconditionError("sigma must map the nulls onto themselves")
    scaled = (problem.m / m0) * problem.pvalues[sigma]
    return TestingProblem(scaled, problem.null_mask, scaled=True)
