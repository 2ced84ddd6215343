# Shapes induced by a probability measure nu on (0, inf).

from fdr_forge.errors import ConfigurationError
from fdr_forge.model import NuMeasure, ShapeFunction


def shape_from_nu(nu: NuMeasure, m: int) -> ShapeFunction:
    # Tabulated beta(k) = sum_{x_j <= k} x_j w_j (quadrature for continuous nu), k = 0..m.
    if m < 1:
        raise ConfigurationError(f"m must be >= 1, got {m}")
    return ShapeFunction.from_table(nu.tabulate(m), kind="nu", nu=nu)


def uniform_nu(m: int) -> NuMeasure:
    # Equal weights on 1..m; beta(k) = k(k+1) / (2m).
    return NuMeasure.discrete(range(1, m + 1), [1.0 / m] * m)


def harmonic_nu(m: int) -> NuMeasure:
    # Weights proportional to 1/i on 1..m; reproduces the BY shape k / H_m.
    raw = [1.0 / i for i in range(1, m + 1)]
    total = sum(raw)
    return NuMeasure.discrete(range(1, m + 1), [w / total for w in raw])


def exponential_nu(m: int) -> NuMeasure:
    # Continuous exponential with mean m/2.
    return NuMeasure.continuous("expon", scale=m / 2.0)
