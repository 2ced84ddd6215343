# fdr_forge: step-up FDR procedures under average significance level control,
# plus the Monte Carlo harness that checks their finite-sample and asymptotic claims.

from fdr_forge.errors import ConfigurationError, FdrForgeError, InputFormatError, PreconditionError
from fdr_forge.model import (
    NuMeasure,
    PiRule,
    ProcedureSpec,
    RejectionSet,
    ShapeFunction,
    TestingProblem,
    counts,
)
from fdr_forge.procedures import bh, by, fixed_threshold, oracle_scaled, permutation_image, shape_from_nu, step_up, storey_pi

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "FdrForgeError",
    "InputFormatError",
    "NuMeasure",
    "PiRule",
    "PreconditionError",
    "ProcedureSpec",
    "RejectionSet",
    "ShapeFunction",
    "TestingProblem",
    "bh",
    "by",
    "counts",
    "fixed_threshold",
    "oracle_scaled",
    "permutation_image",
    "shape_from_nu",
    "step_up",
    "storey_pi",
]
