# Shape functions beta(k) and the probability measures nu that induce them.
#
# beta(k) = integral_0^k x dnu(x). Discrete measures are summed exactly, continuous
# scipy.stats families are integrated with a composite trapezoid rule on (0, m].

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, stats

from fdr_forge.errors import ConfigurationError

NU_QUADRATURE_POINTS = 1024
_WEIGHT_TOL = 1e-9


@dataclass(frozen=True)
class NuMeasure:
    # Either discrete (atoms/weights) or a named continuous scipy.stats family.
    atoms: tuple[float, ...] = ()
    weights: tuple[float, ...] = ()
    family: str | None = None
    params: tuple[tuple[str, float], ...] = ()

    def __post_init__(self):
        if self.family is not None:
            if self.atoms or self.weights:
                raise ConfigurationError("a nu measure is either discrete or continuous, not both")
            dist = self.frozen()
            if dist.cdf(0.0) > 0.0:
                raise ConfigurationError(f"nu family {self.family!r} puts mass on x <= 0")
            return
        if not self.atoms:
            raise ConfigurationError("discrete nu needs at least one atom")
        if len(self.atoms) != len(self.weights):
            raise ConfigurationError("nu atoms and weights differ in length")
        if any(x <= 0 for x in self.atoms):
            raise ConfigurationError(f"nu atoms must be strictly positive, got {self.atoms}")
        if any(w < 0 for w in self.weights):
            raise ConfigurationError("nu weights must be >= 0")
        if abs(math.fsum(self.weights) - 1.0) > _WEIGHT_TOL:
            raise ConfigurationError(f"nu weights sum to {math.fsum(self.weights)}, expected 1")

    @classmethod
    def discrete(cls, atoms, weights) -> "NuMeasure":
        return cls(tuple(float(x) for x in atoms), tuple(float(w) for w in weights))

    @classmethod
    def point_mass(cls, atom: float) -> "NuMeasure":
        return cls.discrete([atom], [1.0])

    @classmethod
    def continuous(cls, family: str, **params) -> "NuMeasure":
        return cls(family=family, params=tuple(sorted(params.items())))

    @property
    def is_discrete(self) -> bool:
        return self.family is None

    def frozen(self):
        try:
            return getattr(stats, self.family)(**dict(self.params))
        except (AttributeError, TypeError) as exc:
            raise ConfigurationError(f"unknown nu family {self.family!r} with params {dict(self.params)}") from exc

    def tabulate(self, m: int) -> np.ndarray:
        # beta(0..m) induced by this measure.
        k = np.arange(m + 1, dtype=np.float64)
        if self.is_discrete:
            order = np.argsort(self.atoms, kind="stable")
            atoms = np.asarray(self.atoms)[order]
            mass = np.cumsum(atoms * np.asarray(self.weights)[order])
            pos = np.searchsorted(atoms, k, side="right")
            return np.where(pos > 0, mass[np.maximum(pos - 1, 0)], 0.0)
        x = np.linspace(0.0, float(m), NU_QUADRATURE_POINTS + 1)
        integrand = x * self.frozen().pdf(x)
        integrand[0] = 0.0
        cum = integrate.cumulative_trapezoid(integrand, x, initial=0.0)
        return np.maximum.accumulate(np.interp(k, x, cum))

    def to_json(self):
        if self.is_discrete:
            return [[x, w] for x, w in zip(self.atoms, self.weights)]
        return {"family": self.family, "params": dict(self.params)}

    @classmethod
    def from_json(cls, data) -> "NuMeasure":
        if isinstance(data, dict):
            return cls.continuous(data["family"], **data.get("params", {}))
        try:
            atoms, weights = zip(*data)
        except (TypeError, ValueError) as exc:
            raise ConfigurationError(f"nu must be a list of [atom, weight] pairs, got {data!r}") from exc
        return cls.discrete(atoms, weights)


def harmonic_number(m: int) -> float:
    return math.fsum(1.0 / i for i in range(1, m + 1))


@dataclass(frozen=True)
class ShapeFunction:
    # kind is one of identity, harmonic, nu, table.
    kind: str = "identity"
    nu: NuMeasure | None = None
    table: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("identity", "harmonic", "nu", "table"):
            raise ConfigurationError(f"unknown shape kind {self.kind!r}")
        if self.kind == "nu" and self.nu is None:
            raise ConfigurationError("nu shape needs a nu measure")
        if self.kind == "table":
            if not self.table:
                raise ConfigurationError("table shape needs values for k = 0..m")
            _check_table(np.asarray(self.table, dtype=np.float64))

    @classmethod
    def identity(cls) -> "ShapeFunction":
        return cls("identity")

    @classmethod
    def harmonic(cls) -> "ShapeFunction":
        return cls("harmonic")

    @classmethod
    def from_nu(cls, nu: NuMeasure) -> "ShapeFunction":
        return cls("nu", nu=nu)

    @classmethod
    def from_table(cls, values, kind: str = "table", nu: NuMeasure | None = None) -> "ShapeFunction":
        return cls(kind, nu=nu, table=tuple(float(v) for v in values))

    def values(self, m: int) -> np.ndarray:
        # beta(k) for k = 0..m.
        if m < 1:
            raise ConfigurationError(f"m must be >= 1, got {m}")
        k = np.arange(m + 1, dtype=np.float64)
        if self.kind == "identity":
            beta = k
        elif self.kind == "harmonic":
            beta = k / harmonic_number(m)
        elif self.table is not None:
            if len(self.table) != m + 1:
                raise ConfigurationError(f"shape table covers k = 0..{len(self.table) - 1}, need 0..{m}")
            beta = np.asarray(self.table, dtype=np.float64)
        else:
            beta = self.nu.tabulate(m)
        _check_table(beta)
        return beta

    def to_json(self):
        if self.kind in ("identity", "harmonic"):
            return self.kind
        if self.kind == "nu":
            return {"nu": self.nu.to_json()}
        return {"table": list(self.table)}

    @classmethod
    def from_json(cls, data) -> "ShapeFunction":
        if data in ("identity", "harmonic"):
            return cls(data)
        if isinstance(data, dict) and "nu" in data:
            return cls.from_nu(NuMeasure.from_json(data["nu"]))
        if isinstance(data, dict) and "table" in data:
            return cls.from_table(data["table"])
        raise ConfigurationError(f"unrecognised shape {data!r}")


def _check_table(beta: np.ndarray) -> None:
    if beta[0] < 0 or np.any(np.diff(beta) < 0):
        raise ConfigurationError("shape function must be nondecreasing with beta(0) >= 0")
    if beta[-1] <= 0:
        raise ConfigurationError("shape function is zero on 1..m, the procedure could never reject")
