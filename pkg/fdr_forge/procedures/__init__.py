from fdr_forge.procedures.invariance import oracle_scaled, permutation_image, permute_problem
from fdr_forge.procedures.shapes import exponential_nu, harmonic_nu, shape_from_nu, uniform_nu
from fdr_forge.procedures.step_up import (
    adjusted_pvalues,
    bh,
    by,
    fixed_threshold,
    named_procedure,
    resolve_pi,
    step_up,
    step_up_batch,
)
from fdr_forge.procedures.storey import storey_pi, storey_pi_batch

__all__ = [
    "adjusted_pvalues",
    "bh",
    "by",
    "exponential_nu",
    "fixed_threshold",
    "harmonic_nu",
    "named_procedure",
    "oracle_scaled",
    "permutation_image",
    "permute_problem",
    "resolve_pi",
    "shape_from_nu",
    "step_up",
    "step_up_batch",
    "storey_pi",
    "storey_pi_batch",
    "uniform_nu",
]
