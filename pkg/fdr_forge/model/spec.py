# Procedure specs: the pi rule, the shape function and the level q.

from dataclasses import dataclass

from fdr_forge.errors import ConfigurationError
from fdr_forge.model.shapes import ShapeFunction

DEFAULT_LAMBDA = 0.5


@dataclass(frozen=True)
class PiRule:
    # constant pi in (0, 1], or Storey's estimate with tuning lambda.
    kind: str = "constant"
    value: float = 1.0
    lam: float = DEFAULT_LAMBDA
    normalized: bool = True

    def __post_init__(self):
        if self.kind == "constant":
            if not 0.0 < self.value <= 1.0:
                raise ConfigurationError(f"constant pi must be in (0, 1], got {self.value}")
        elif self.kind == "storey":
            if not 0.0 < self.lam < 1.0:
                raise ConfigurationError(f"storey lambda must be in (0, 1), got {self.lam}")
        else:
            raise ConfigurationError(f"unknown pi rule {self.kind!r}")

    @classmethod
    def constant(cls, value: float = 1.0) -> "PiRule":
        return cls("constant", value=float(value))

    @classmethod
    def storey(cls, lam: float = DEFAULT_LAMBDA, normalized: bool = True) -> "PiRule":
        return cls("storey", lam=float(lam), normalized=bool(normalized))

    def to_json(self) -> dict:
        if self.kind == "constant":
            return {"constant": self.value}
        return {"storey": {"lambda": self.lam, "normalized": self.normalized}}

    @classmethod
    def from_json(cls, data) -> "PiRule":
        if not isinstance(data, dict) or len(data) != 1:
            raise ConfigurationError(f"pi must be {{'constant': x}} or {{'storey': {{...}}}}, got {data!r}")
        if "constant" in data:
            return cls.constant(data["constant"])
        if "storey" in data:
            body = data["storey"] or {}
            return cls.storey(body.get("lambda", DEFAULT_LAMBDA), body.get("normalized", True))
        raise ConfigurationError(f"unknown pi rule {data!r}")


@dataclass(frozen=True)
class ProcedureSpec:
    pi: PiRule
    shape: ShapeFunction
    q: float
    name: str = "step-up"

    def __post_init__(self):
        if not 0.0 < self.q < 1.0:
            raise ConfigurationError(f"q must be in (0, 1), got {self.q}")

    @classmethod
    def bh(cls, q: float) -> "ProcedureSpec":
        return cls(PiRule.constant(1.0), ShapeFunction.identity(), float(q), "bh")

    @classmethod
    def by(cls, q: float) -> "ProcedureSpec":
        return cls(PiRule.constant(1.0), ShapeFunction.harmonic(), float(q), "by")

    @classmethod
    def storey(cls, q: float, lam: float = DEFAULT_LAMBDA, normalized: bool = True) -> "ProcedureSpec":
        return cls(PiRule.storey(lam, normalized), ShapeFunction.identity(), float(q), "storey")

    def to_dict(self) -> dict:
        return {"name": self.name, "pi": self.pi.to_json(), "shape": self.shape.to_json(), "q": self.q}

    @classmethod
    def from_dict(cls, data: dict) -> "ProcedureSpec":
        try:
            return cls(
                PiRule.from_json(data.get("pi", {"constant": 1.0})),
                ShapeFunction.from_json(data.get("shape", "identity")),
                float(data["q"]),
                data.get("name", "step-up"),
            )
        except KeyError as exc:
            raise ConfigurationError(f"procedure spec is missing {exc}") from exc
