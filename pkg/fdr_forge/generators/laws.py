# Public generator entry points, one per law.

import logging

from fdr_forge.generators.sampling import draw
from fdr_forge.generators.spec import DEFAULT_ALT_EXPONENT, GeneratorSpec, SlopeProfile
from fdr_forge.model import DEFAULT_LAMBDA, TestingProblem

logger = logging.getLogger(__name__)


def gen_classical_iid(m: int, m0: int, alt: float = DEFAULT_ALT_EXPONENT, seed: int = 0) -> TestingProblem:
    # Uniform nulls, Beta(alt, 1) alternatives.
    return draw(GeneratorSpec("classical_iid", m, m0, seed, alt_exponent=alt))


def gen_average_slopes(profile: SlopeProfile, m: int, m0: int, seed: int = 0) -> TestingProblem:
    spec = GeneratorSpec("average_slopes", m, m0, seed, slopes=profile.slopes, alt_exponent=profile.alt_exponent)
    return draw(spec)


def gen_counterexample(m: int, q: float, seed: int = 0) -> TestingProblem:
    return draw(GeneratorSpec("counterexample", m, seed=seed, q=q))


def gen_block_dependent(m: int, block_size: int, rho: float, profile: SlopeProfile, m0: int | None = None,
                        seed: int = 0) -> TestingProblem:
    spec = GeneratorSpec(
        "block_dependent", m, m0, seed,
        slopes=profile.slopes, alt_exponent=profile.alt_exponent, block_size=block_size, rho=rho,
    )
    return draw(spec)


def storey_breaker_spec(m: int, lam: float = DEFAULT_LAMBDA, seed: int = 0,
                        null_fraction: float = 0.5, alt: float = DEFAULT_ALT_EXPONENT) -> GeneratorSpec:
    # Nulls are a fraction pi0 of m with slope 1/pi0: average level control holds
    # with equality on [0, pi0], yet no null ever lands above lambda when pi0 <= lambda.
    # Storey's estimate then sees only alternatives above lambda and undershoots.
    m0 = max(1, int(round(null_fraction * m)))
    slope = m / m0
    if 1.0 / slope > lam:
        logger.warning("[WARNING] null support [0, %.3g] reaches above lambda=%.3g; pi-hat will be less biased", 1.0 / slope, lam)
    return GeneratorSpec("storey_breaker", m, m0, seed, slopes=(slope,), alt_exponent=alt, lam=lam)


def gen_storey_breaker(m: int, lam: float = DEFAULT_LAMBDA, seed: int = 0) -> TestingProblem:
    return draw(storey_breaker_spec(m, lam, seed))
