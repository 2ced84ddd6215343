# Uniform deviations of V(t)/m, R(t)/m and the fixed-cutoff FDP from their limits,
# tracked across a list of m values.

import logging
import math

import numpy as np

from fdr_forge.errors import PreconditionError
from fdr_forge.generators import GeneratorSpec, default_t_grid, limit_functions
from fdr_forge.metrics.monte_carlo import run_chunks

logger = logging.getLogger(__name__)

COLUMNS = (
    "m", "n_reps", "sup_excess", "sup_dev_V", "sup_dev_R", "sup_dev_fdp", "min_gap", "worst_min_gap",
)


def _chunk_stats(P: np.ndarray, mask: np.ndarray, t: np.ndarray, G: np.ndarray, F: np.ndarray,
                 fdr_inf: np.ndarray) -> np.ndarray:
    m = P.shape[1]
    out = np.empty((P.shape[0], 5))
    for row, p in enumerate(P):
        R = np.searchsorted(np.sort(p), t, side="right")
        V = np.searchsorted(np.sort(p[mask]), t, side="right")
        v, r = V / m, R / m
        fdp_t = V / np.maximum(R, 1)
        out[row] = (
            np.max(np.maximum(v - t, 0.0)),
            np.max(np.abs(v - G)),
            np.max(np.abs(r - F)),
            np.max(np.abs(fdp_t - fdr_inf)),
            np.min(m * t / np.maximum(R, 1) - fdp_t),
        )
    return out


def convergence_profile(genspec: GeneratorSpec, t_grid=None, m_list=(100, 1000, 10_000), n_reps: int = 200,
                        seed: int = 0, threads: int | None = None) -> list[dict]:
    # One row per m: replication means of the sup statistics plus the worst gap.
    lf = limit_functions(genspec)
    t = default_t_grid(lf) if t_grid is None else np.asarray(t_grid, dtype=np.float64)
    if t.size == 0 or np.any(t <= 0) or np.any(t > 1):
        raise PreconditionError("t_grid must be a non-empty subset of (0, 1]")
    if float(lf.F(t.min())) <= 0.0:
        raise PreconditionError(f"F(t_low) = 0 at t_low = {t.min():.4g}; the rejection mass there is empty")
    rows = []
    for m in m_list:
        spec = genspec.with_m(m).with_seed(seed)
        lf_m = limit_functions(spec)
        G, F = lf_m.G(t), lf_m.F(t)
        fdr_inf = lf_m.fdr_inf(t)
        mask = spec.null_mask()
        parts = run_chunks(spec, n_reps, lambda P, a, b: _chunk_stats(P, mask, t, G, F, fdr_inf), threads)
        stats = np.concatenate(parts)
        means = [math.fsum(col.tolist()) / n_reps for col in stats.T]
        rows.append(dict(zip(COLUMNS, [m, n_reps, *means, float(stats[:, 4].min())])))
        logger.info("[INFO] m=%d sup|V/m-G|=%.4g sup|R/m-F|=%.4g", m, means[1], means[2])
    return rows
