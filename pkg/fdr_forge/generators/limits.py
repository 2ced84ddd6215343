# Analytic laws of large numbers for V(t)/m and R(t)/m.
#
# For the slope family, V(t)/m -> G(t) = pi0 * mean_j min(c_j t, 1) and
# R(t)/m -> F(t) = G(t) + (1 - pi0) t^a; FDR_inf(t) = G(t) / F(t).

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import optimize

from fdr_forge.errors import ConfigurationError, PreconditionError
from fdr_forge.generators.spec import GeneratorSpec

F_FLOOR = 0.05
DEFAULT_GRID_POINTS = 101


@dataclass(frozen=True)
class LimitFunctions:
    G: Callable[[np.ndarray], np.ndarray]
    F: Callable[[np.ndarray], np.ndarray]

    def fdr_inf(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=np.float64)
        f = self.F(t)
        return np.divide(self.G(t), f, out=np.zeros_like(f), where=f > 0)


def limit_functions(spec: GeneratorSpec) -> LimitFunctions:
    if spec.kind == "counterexample":
        raise ConfigurationError("the counterexample is a fixed-m law; it has no limit functions")
    pi0 = spec.m0 / spec.m
    slopes = np.asarray(spec.slopes, dtype=np.float64)
    a = spec.alt_exponent

    def G(t):
        t = np.asarray(t, dtype=np.float64)
        return pi0 * np.minimum(np.multiply.outer(t, slopes), 1.0).mean(axis=-1)

    def F(t):
        t = np.asarray(t, dtype=np.float64)
        return G(t) + (1.0 - pi0) * t**a

    grid = np.linspace(0.0, 1.0, 1001)
    if np.any(G(grid) > grid + 1e-12):
        raise ConfigurationError("limit G(t) exceeds t; the slopes violate average level control")
    return LimitFunctions(G, F)


def average_cdf(spec: GeneratorSpec, t) -> np.ndarray:
    # Exact (1/m) * sum over nulls of P(p_i <= t) at this m.
    t = np.asarray(t, dtype=np.float64)
    if spec.kind == "counterexample":
        return counterexample_cdf(spec.m, spec.q, t).mean(axis=-1)
    c = spec.profile.expand(spec.m0)
    return np.minimum(np.multiply.outer(t, c), 1.0).sum(axis=-1) / spec.m


def counterexample_cdf(m: int, q: float, t) -> np.ndarray:
    # P(p_i <= t) for every coordinate, shape t.shape + (m,).
    t = np.asarray(t, dtype=np.float64)[..., None]
    cut = 2.0 * q / m
    low = np.zeros(m)
    low[0], low[1] = 1.5 * q, 0.5 * q
    tail = low + (1.0 - low) * np.clip((t - cut) / (1.0 - cut), 0.0, 1.0)
    tt = t[..., 0]
    first = np.where(tt <= cut, np.minimum(m * tt, 1.5 * q), tail[..., 0])
    second = np.where(tt <= cut, np.clip(m * tt - 1.5 * q, 0.0, 0.5 * q), tail[..., 1])
    out = tail.copy()
    out[..., 0] = first
    out[..., 1] = second
    return out


def counterexample_bh_fdr(q: float) -> float:
    # q + (q/2)^2: P(p_1 <= q/m) plus the disjoint event q/m < p_1 <= 1.5q/m, p_2 <= 2q/m.
    # A lower bound for every m >= 2 and the exact BH FDR when m = 2.
    return q + (q / 2.0) ** 2


def lower_grid_end(lf: LimitFunctions, floor: float = F_FLOOR) -> float:
    # Smallest t with F(t) >= floor.
    if lf.F(1.0) < floor:
        raise PreconditionError(f"F(1) = {float(lf.F(1.0)):.4g} < {floor}; no usable lower grid end")
    if lf.F(0.0) >= floor:
        return 0.0
    return float(optimize.brentq(lambda t: float(lf.F(t)) - floor, 0.0, 1.0, xtol=1e-12))


def default_t_grid(lf: LimitFunctions, points: int = DEFAULT_GRID_POINTS) -> np.ndarray:
    t_low = lower_grid_end(lf)
    return np.linspace(max(t_low, 1e-12), 1.0, points)


def find_t_star(lf: LimitFunctions, q: float, points: int = 10_000) -> float | None:
    # Some t* > 0 with F(t*) > 0 and G(t*)/F(t*) < q, or None.
    grid = np.linspace(1.0 / points, 1.0, points)
    f = lf.F(grid)
    ok = (f > 0) & (lf.fdr_inf(grid) < q)
    if not ok.any():
        return None
    return float(grid[np.argmax(ok)])


def gap_scale(lf: LimitFunctions, t_grid) -> float:
    # max_t sqrt(G(1-G)) / F: the per-sqrt(m) spread of (m t - V(t)) / R(t) around its limit.
    t = np.asarray(t_grid, dtype=np.float64)
    g, f = lf.G(t), lf.F(t)
    if np.any(f <= 0):
        raise PreconditionError("gap_scale needs F > 0 on the whole grid")
    return float(np.max(np.sqrt(g * (1.0 - g)) / f))
