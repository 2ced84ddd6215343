from fdr_forge.metrics.convergence import COLUMNS as CONVERGENCE_COLUMNS
from fdr_forge.metrics.convergence import convergence_profile
from fdr_forge.metrics.ecdf import ecdf_bound_check
from fdr_forge.metrics.fdp import fdp, fdp_rows, fdr_hat
from fdr_forge.metrics.monte_carlo import CHUNK_SIZE, SimulationReport, mc_fdr, mc_fdr_many, run_chunks, summarize

__all__ = [
    "CHUNK_SIZE",
    "CONVERGENCE_COLUMNS",
    "SimulationReport",
    "convergence_profile",
    "ecdf_bound_check",
    "fdp",
    "fdp_rows",
    "fdr_hat",
    "mc_fdr",
    "mc_fdr_many",
    "run_chunks",
    "summarize",
]
