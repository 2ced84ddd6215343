# Storey's estimate of the null proportion.
#
# Raw form counts #{p_i > lambda}. The normalized form divides by m(1 - lambda)
# and is clamped to [1/m, 1].

import numpy as np

from fdr_forge.errors import PreconditionError
from fdr_forge.model import DEFAULT_LAMBDA, TestingProblem


def storey_pi_batch(pvalues: np.ndarray, lam: float, normalized: bool = True) -> np.ndarray:
    if not 0.0 < lam < 1.0:
        raise PreconditionError(f"lambda must be in (0, 1), got {lam}")
    P = np.atleast_2d(pvalues)
    m = P.shape[1]
    c = np.count_nonzero(P > lam, axis=1).astype(np.float64)
    if not normalized:
        return c
    return np.clip(c / (m * (1.0 - lam)), 1.0 / m, 1.0)


def storey_pi(problem: TestingProblem, lam: float = DEFAULT_LAMBDA, normalized: bool = True) -> float:
    return float(storey_pi_batch(problem.pvalues, lam, normalized)[0])
