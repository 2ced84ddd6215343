# Row samplers: each replication draws from its own stream, rows are then
# transformed to the target marginals in one vectorized pass.

import numpy as np
from scipy import stats

from fdr_forge.generators.spec import GeneratorSpec
from fdr_forge.generators.streams import replication_rng
from fdr_forge.model import TestingProblem


def null_quantile(u: np.ndarray, slopes: np.ndarray) -> np.ndarray:
    # Inverse of t -> min(c t, 1): U/c capped at 1, and p = 1 when c = 0.
    safe = np.where(slopes > 0, slopes, 1.0)
    return np.where(slopes > 0, np.minimum(u / safe, 1.0), 1.0)


def alternative_quantile(u: np.ndarray, a: float) -> np.ndarray:
    return u ** (1.0 / a)


def counterexample_quantile(u: np.ndarray, q: float) -> np.ndarray:
    # Columns follow the three coordinate laws: p_1, p_2, and p_3..p_m.
    m = u.shape[-1]
    low = np.zeros(m)
    low[0] = 1.5 * q
    low[1] = 0.5 * q
    start = np.zeros(m)
    start[1] = 1.5 * q / m
    cut = 2.0 * q / m
    residual = cut + (u - low) / np.where(low < 1.0, 1.0 - low, 1.0) * (1.0 - cut)
    return np.where(u < low, start + u / m, residual)


def _uniform_rows(spec: GeneratorSpec, key: int, start: int, stop: int) -> np.ndarray:
    U = np.empty((stop - start, spec.m))
    if spec.kind == "block_dependent" and spec.rho > 0.0 and spec.block_size > 1:
        n_blocks = -(-spec.m // spec.block_size)
        block_of = np.arange(spec.m) // spec.block_size
        a, b = np.sqrt(spec.rho), np.sqrt(1.0 - spec.rho)
        for row, rep in enumerate(range(start, stop)):
            rng = replication_rng(key, rep)
            z = rng.standard_normal(spec.m)
            w = rng.standard_normal(n_blocks)
            U[row] = stats.norm.cdf(a * w[block_of] + b * z)
        return U
    for row, rep in enumerate(range(start, stop)):
        U[row] = replication_rng(key, rep).random(spec.m)
    return U


def sample_rows(spec: GeneratorSpec, start: int, stop: int, key: int | None = None) -> np.ndarray:
    # p-values for replications start..stop-1, shape (stop - start, m).
    key = spec.stream_key() if key is None else key
    U = _uniform_rows(spec, key, start, stop)
    if spec.kind == "counterexample":
        return counterexample_quantile(U, spec.q)
    P = np.empty_like(U)
    m0 = spec.m0
    P[:, :m0] = null_quantile(U[:, :m0], spec.profile.expand(m0))
    P[:, m0:] = alternative_quantile(U[:, m0:], spec.alt_exponent)
    return P


def draw(spec: GeneratorSpec, replication: int = 0) -> TestingProblem:
    P = sample_rows(spec, replication, replication + 1)
    return TestingProblem(P[0], spec.null_mask())
