# False discovery proportion and the plug-in estimate m*t / (R(t) v 1).

import numpy as np

from fdr_forge.errors import ConfigurationError
from fdr_forge.model import RejectionSet, TestingProblem, check_level, counts


def fdp(rejset: RejectionSet, null_mask) -> float:
    # #(R n H0) / (#R v 1).
    null_mask = np.asarray(null_mask, dtype=bool)
    if rejset.rejected and max(rejset.rejected) >= null_mask.size:
        raise ConfigurationError("rejection set refers to an index beyond the null mask")
    false = int(np.count_nonzero(null_mask[list(rejset.rejected)])) if rejset.rejected else 0
    return false / max(len(rejset), 1)


def fdr_hat(problem: TestingProblem, t: float) -> float:
    t = check_level(t)
    return problem.m * t / max(counts(problem, t).R, 1)


def fdp_rows(hits: np.ndarray, null_mask: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # Per-row (FDP, R, V) for a boolean rejection matrix.
    R = np.count_nonzero(hits, axis=1)
    V = np.count_nonzero(hits & null_mask, axis=1)
    return V / np.maximum(R, 1), R, V
