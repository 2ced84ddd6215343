from fdr_forge.model.problem import Counts, RejectionSet, TestingProblem, check_level, counts
from fdr_forge.model.shapes import NuMeasure, ShapeFunction, harmonic_number
from fdr_forge.model.spec import DEFAULT_LAMBDA, PiRule, ProcedureSpec

__all__ = [
    "Counts",
    "DEFAULT_LAMBDA",
    "NuMeasure",
    "PiRule",
    "ProcedureSpec",
    "RejectionSet",
    "ShapeFunction",
    "TestingProblem",
    "check_level",
    "counts",
    "harmonic_number",
]
