from fdr_forge.generators.laws import (
    gen_average_slopes,
    gen_block_dependent,
    gen_classical_iid,
    gen_counterexample,
    gen_storey_breaker,
    storey_breaker_spec,
)
from fdr_forge.generators.limits import (
    LimitFunctions,
    average_cdf,
    counterexample_bh_fdr,
    counterexample_cdf,
    default_t_grid,
    find_t_star,
    gap_scale,
    limit_functions,
    lower_grid_end,
)
from fdr_forge.generators.sampling import draw, sample_rows
from fdr_forge.generators.spec import KINDS, GeneratorSpec, SlopeProfile
from fdr_forge.generators.streams import content_hash, derive_seed, derive_stream_key, replication_rng
from fdr_forge.generators.transform import null_permutation, null_shuffle_transform

__all__ = [
    "KINDS",
    "GeneratorSpec",
    "LimitFunctions",
    "SlopeProfile",
    "average_cdf",
    "content_hash",
    "counterexample_bh_fdr",
    "counterexample_cdf",
    "default_t_grid",
    "derive_seed",
    "derive_stream_key",
    "draw",
    "find_t_star",
    "gap_scale",
    "gen_average_slopes",
    "gen_block_dependent",
    "gen_classical_iid",
    "gen_counterexample",
    "gen_storey_breaker",
    "limit_functions",
    "lower_grid_end",
    "null_permutation",
    "replication_rng",
    "sample_rows",
    "storey_breaker_spec",
    "null_shuffle_transform",
]
