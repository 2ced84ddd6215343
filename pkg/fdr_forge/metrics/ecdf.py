# One-sided check that sampled p-values are stochastically no smaller than U(0,1).

import math

import numpy as np

from fdr_forge.errors import PreconditionError

# Two-sided 3-sigma normal tail.
DEFAULT_DELTA = 0.0027


def ecdf_bound_check(samples, delta: float = DEFAULT_DELTA) -> dict:
    # samples: (n, k), one column per coordinate. For each column the exact
    # sup_a (F_n(a) - a) is compared with the one-sided DKW radius
    # sqrt(log(k / delta) / (2n)), Bonferroni over the k columns.
    X = np.asarray(samples, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    n, k = X.shape
    if n == 0 or k == 0:
        raise PreconditionError("ecdf check needs at least one sample and one column")
    steps = np.arange(1, n + 1, dtype=np.float64)[:, None] / n
    excess = np.max(steps - np.sort(X, axis=0), axis=0)
    excess = np.maximum(excess, 0.0)
    bound = math.sqrt(math.log(k / delta) / (2.0 * n))
    worst = int(np.argmax(excess))
    return {
        "n": n,
        "columns": k,
        "sup_excess": float(excess[worst]),
        "worst_column": worst,
        "bound": bound,
        "passed": bool(excess[worst] <= bound),
    }
