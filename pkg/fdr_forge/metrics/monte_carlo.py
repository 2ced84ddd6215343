# Monte Carlo FDR estimation.
#
# Replications are cut into fixed-size chunks; each replication owns a Philox
# stream, chunks may run on any number of threads, and results are put back in
# replication order before summation (math.fsum), so every number is identical
# for a given seed whatever --threads is.

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from fdr_forge.errors import FdrForgeError, PreconditionError
from fdr_forge.generators import GeneratorSpec, sample_rows
from fdr_forge.metrics.fdp import fdp_rows
from fdr_forge.model import ProcedureSpec, check_level
from fdr_forge.procedures import resolve_pi, step_up_batch
from fdr_forge.settings import resolve_threads

logger = logging.getLogger(__name__)

CHUNK_SIZE = 1024
FDP_QUANTILE = 0.9

Target = ProcedureSpec | float


@dataclass(frozen=True)
class SimulationReport:
    generator: dict
    procedure: dict
    n_reps: int
    seed: int
    mean_fdp: float
    variance: float | None
    se: float | None
    mean_rejections: float
    mean_false_rejections: float
    fdp_quantile: float
    mean_fdr_hat: float | None = None
    mean_threshold: float | None = None
    flags: tuple[str, ...] = field(default=())

    @property
    def m(self) -> int:
        return self.generator["m"]

    @property
    def q(self) -> float | None:
        return self.procedure.get("q")

    def to_dict(self) -> dict:
        out = asdict(self)
        out["flags"] = list(self.flags)
        return out

    def csv_row(self) -> dict:
        # One flat row per (generator, procedure, m, q) cell.
        g, p = self.generator, self.procedure
        return {
            "generator": g["kind"],
            "m": g["m"],
            "m0": g["m0"],
            "procedure": p.get("name", "fixed"),
            "q": p.get("q", ""),
            "fixed_t": p.get("fixed_t", ""),
            "n_reps": self.n_reps,
            "seed": self.seed,
            "mean_fdp": self.mean_fdp,
            "se": "" if self.se is None else self.se,
            "variance": "" if self.variance is None else self.variance,
            "mean_rejections": self.mean_rejections,
            "mean_false_rejections": self.mean_false_rejections,
            "fdp_q90": self.fdp_quantile,
            "mean_fdr_hat": "" if self.mean_fdr_hat is None else self.mean_fdr_hat,
            "mean_threshold": "" if self.mean_threshold is None else self.mean_threshold,
            "flags": ";".join(self.flags),
        }


def _mean(x: np.ndarray) -> float:
    return math.fsum(x.tolist()) / x.size


def summarize(fdps: np.ndarray) -> tuple[float, float | None, float | None]:
    # (mean, sample variance, standard error); the last two are None for one draw.
    mean = _mean(fdps)
    if fdps.size < 2:
        return mean, None, None
    var = math.fsum(((fdps - mean) ** 2).tolist()) / (fdps.size - 1)
    return mean, var, math.sqrt(var / fdps.size)


def chunk_bounds(n_reps: int, chunk_size: int = CHUNK_SIZE) -> list[tuple[int, int]]:
    return [(s, min(s + chunk_size, n_reps)) for s in range(0, n_reps, chunk_size)]


def run_chunks(spec: GeneratorSpec, n_reps: int, fn, threads: int | None = None,
               chunk_size: int = CHUNK_SIZE) -> list:
    # fn(P, start, stop) per chunk of sampled rows; results come back in chunk order.
    key = spec.stream_key()

    def work(bounds):
        start, stop = bounds
        try:
            return fn(sample_rows(spec, start, stop, key), start, stop)
        except FdrForgeError:
            raise
        except Exception as exc:
            raise FdrForgeError(f"replications {start}..{stop - 1} of {spec.kind} (m={spec.m}) failed: {exc}") from exc

    bounds = chunk_bounds(n_reps, chunk_size)
    workers = min(resolve_threads(threads), len(bounds))
    if workers == 1:
        return [work(b) for b in bounds]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(work, bounds))


def _evaluate(P: np.ndarray, mask: np.ndarray, target: Target, beta: np.ndarray | None) -> dict:
    m = P.shape[1]
    if isinstance(target, ProcedureSpec):
        pi = resolve_pi(P, target.pi)
        k_star, thr = step_up_batch(P, pi, beta, target.q)
        hits = (P <= thr[:, None]) & (k_star > 0)[:, None]
        fdps, R, V = fdp_rows(hits, mask)
        return {"fdp": fdps, "R": R, "V": V, "threshold": thr}
    hits = P <= target
    fdps, R, V = fdp_rows(hits, mask)
    return {"fdp": fdps, "R": R, "V": V, "fdr_hat": m * target / np.maximum(R, 1)}


def mc_fdr_many(genspec: GeneratorSpec, targets: list[Target], n_reps: int, seed: int | None = None,
                threads: int | None = None) -> list[SimulationReport]:
    # Every target is evaluated on the same replications.
    if n_reps < 1:
        raise PreconditionError(f"n_reps must be >= 1, got {n_reps}")
    spec = genspec if seed is None else genspec.with_seed(seed)
    targets = [t if isinstance(t, ProcedureSpec) else check_level(t) for t in targets]
    betas = [t.shape.values(spec.m) if isinstance(t, ProcedureSpec) else None for t in targets]
    mask = spec.null_mask()

    def chunk(P, start, stop):
        return [_evaluate(P, mask, t, b) for t, b in zip(targets, betas)]

    logger.debug("[INFO] %s m=%d: %d replications, %d target(s)", spec.kind, spec.m, n_reps, len(targets))
    parts = run_chunks(spec, n_reps, chunk, threads)
    reports = []
    for j, target in enumerate(targets):
        merged = {k: np.concatenate([part[j][k] for part in parts]) for k in parts[0][j]}
        reports.append(_report(spec, target, merged, n_reps))
    return reports


def mc_fdr(genspec: GeneratorSpec, target: Target, n_reps: int, seed: int | None = None,
           threads: int | None = None) -> SimulationReport:
    return mc_fdr_many(genspec, [target], n_reps, seed, threads)[0]


def _report(spec: GeneratorSpec, target: Target, data: dict, n_reps: int) -> SimulationReport:
    mean, var, se = summarize(data["fdp"])
    flags = []
    if se is None:
        flags.append("variance undefined (n_reps=1)")
    if isinstance(target, ProcedureSpec):
        procedure = target.to_dict()
        extra = {"mean_threshold": _mean(data["threshold"])}
    else:
        procedure = {"name": "fixed", "fixed_t": target}
        extra = {"mean_fdr_hat": _mean(data["fdr_hat"])}
    return SimulationReport(
        generator=spec.to_dict(),
        procedure=procedure,
        n_reps=n_reps,
        seed=spec.seed,
        mean_fdp=mean,
        variance=var,
        se=se,
        mean_rejections=_mean(data["R"].astype(np.float64)),
        mean_false_rejections=_mean(data["V"].astype(np.float64)),
        fdp_quantile=float(np.quantile(data["fdp"], FDP_QUANTILE)),
        flags=tuple(flags),
        **extra,
    )
