# Generator specs: which law the p-values are drawn from.
#
# Nulls sit at indices 0..m0-1, alternatives after them. Null i has CDF
# min(c_i t, 1) with c_i taken from a slope pattern tiled over the nulls;
# alternatives have CDF t^a (a Beta(a, 1) law).

import math
from dataclasses import asdict, dataclass, replace

import numpy as np

from fdr_forge.errors import ConfigurationError, PreconditionError
from fdr_forge.generators.streams import content_hash, derive_stream_key

KINDS = ("classical_iid", "average_slopes", "counterexample", "block_dependent", "storey_breaker")
DEFAULT_ALT_EXPONENT = 0.2
_SLACK = 1e-12


@dataclass(frozen=True)
class SlopeProfile:
    # Null slopes c_i >= 0 (a pattern tiled over the nulls) and the alternative exponent a.
    slopes: tuple[float, ...] = (1.0,)
    alt_exponent: float = DEFAULT_ALT_EXPONENT

    def __post_init__(self):
        if not self.slopes or any(c < 0 or not math.isfinite(c) for c in self.slopes):
            raise ConfigurationError(f"slopes must be finite and >= 0, got {self.slopes}")
        if not 0.0 < self.alt_exponent <= 1.0:
            raise ConfigurationError(f"alternative exponent must be in (0, 1], got {self.alt_exponent}")

    def expand(self, m0: int) -> np.ndarray:
        return np.resize(np.asarray(self.slopes, dtype=np.float64), m0)

    def average_slope(self, m: int, m0: int) -> float:
        # (1/m) * sum of c_i over the nulls; average level control needs this <= 1.
        return math.fsum(self.expand(m0)) / m


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    m: int
    m0: int | None = None
    seed: int = 0
    slopes: tuple[float, ...] = (1.0,)
    alt_exponent: float = DEFAULT_ALT_EXPONENT
    q: float = 0.25
    block_size: int = 1
    rho: float = 0.0
    lam: float = 0.5

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigurationError(f"unknown generator kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        if self.m < 1:
            raise ConfigurationError(f"m must be >= 1, got {self.m}")
        object.__setattr__(self, "slopes", tuple(float(c) for c in self.slopes))
        if self.m0 is None:
            object.__setattr__(self, "m0", self.m)
        if self.kind == "counterexample":
            if self.m < 2 or not 0.0 < self.q < 2.0 / 3.0:
                raise PreconditionError(f"counterexample needs m >= 2 and 0 < q < 2/3, got m={self.m}, q={self.q}")
            object.__setattr__(self, "m0", self.m)
        if not 0 <= self.m0 <= self.m:
            raise PreconditionError(f"m0 must be in [0, m], got m0={self.m0}, m={self.m}")
        if self.kind == "classical_iid" and self.slopes != (1.0,):
            raise ConfigurationError("classical_iid nulls are uniform; use average_slopes for other slopes")
        if self.kind == "block_dependent":
            if self.block_size < 1:
                raise ConfigurationError(f"block size must be >= 1, got {self.block_size}")
            if not 0.0 <= self.rho < 1.0:
                raise ConfigurationError(f"rho must be in [0, 1), got {self.rho}")
        if self.kind == "storey_breaker" and self.m < 2:
            raise PreconditionError("storey_breaker needs m >= 2")
        if self.kind != "counterexample":
            profile = self.profile  # validates slopes and exponent
            avg = profile.average_slope(self.m, self.m0) if self.m0 else 0.0
            if avg > 1.0 + _SLACK:
                raise ConfigurationError(
                    f"slopes violate average level control: (1/m) * sum c_i = {avg:.6g} > 1"
                )

    @property
    def profile(self) -> SlopeProfile:
        return SlopeProfile(self.slopes, self.alt_exponent)

    def null_mask(self) -> np.ndarray:
        mask = np.zeros(self.m, dtype=bool)
        mask[: self.m0] = True
        return mask

    def with_m(self, m: int) -> "GeneratorSpec":
        # Same triangular-array member at a different m: null fraction kept, rounded down
        # until the tiled slopes still satisfy average level control.
        if self.kind == "counterexample":
            return replace(self, m=m, m0=m)
        m0 = self.m0 * m // self.m
        profile = self.profile
        while m0 > 0 and profile.average_slope(m, m0) > 1.0 + _SLACK:
            m0 -= 1
        return replace(self, m=m, m0=m0)

    def with_seed(self, seed: int) -> "GeneratorSpec":
        return replace(self, seed=int(seed))

    def to_dict(self) -> dict:
        out = asdict(self)
        out["slopes"] = list(self.slopes)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "GeneratorSpec":
        known = {k: v for k, v in data.items() if k in cls.__dataclass_fields__}
        unknown = sorted(set(data) - set(known))
        if unknown:
            raise ConfigurationError(f"unknown generator fields: {', '.join(unknown)}")
        if "kind" not in known or "m" not in known:
            raise ConfigurationError("generator spec needs 'kind' and 'm'")
        if "slopes" in known:
            known["slopes"] = tuple(known["slopes"])
        return cls(**known)

    def label(self) -> str:
        # Content hash of everything except the seed.
        body = self.to_dict()
        body.pop("seed")
        return content_hash(body)

    def stream_key(self) -> int:
        return derive_stream_key(self.seed, self.label())
