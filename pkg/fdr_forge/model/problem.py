# Testing problems, rejection sets and the V/S/R counts.
#
# Indices are 0-based inside the library; `one_based()` is what reports print.

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from fdr_forge.errors import ConfigurationError, PreconditionError


def _frozen_array(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True).reshape(-1)
    arr.setflags(write=False)
    return arr


def check_level(t: float, name: str = "t") -> float:
    # Cutoffs and levels live in [0, 1].
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise PreconditionError(f"{name} must be in [0, 1], got {t!r}")
    return t


@dataclass(frozen=True)
class TestingProblem:
    # p-values plus the ground-truth null mask (True <=> hypothesis is a true null).
    #
    # `scaled` marks problems produced by the permutation-scaling transform, whose
    # values may exceed 1; ordinary problems must stay inside [0, 1].
    pvalues: np.ndarray
    null_mask: np.ndarray
    scaled: bool = False

    __test__ = False  # not a pytest class

    def __post_init__(self):
        p = _frozen_array(self.pvalues, np.float64)
        mask = _frozen_array(self.null_mask, bool)
        if p.size < 1:
            raise ConfigurationError("a testing problem needs at least one p-value")
        if mask.size != p.size:
            raise ConfigurationError(f"null_mask has length {mask.size}, expected {p.size}")
        if not np.all(np.isfinite(p)) or np.any(p < 0.0):
            bad = int(np.flatnonzero(~np.isfinite(p) | (p < 0.0))[0])
            raise ConfigurationError(f"p-value #{bad + 1} is not a number >= 0: {p[bad]!r}")
        if not self.scaled and np.any(p > 1.0):
            bad = int(np.flatnonzero(p > 1.0)[0])
            raise ConfigurationError(f"p-value #{bad + 1} exceeds 1: {p[bad]!r}")
        object.__setattr__(self, "pvalues", p)
        object.__setattr__(self, "null_mask", mask)

    @classmethod
    def from_pvalues(cls, pvalues) -> "TestingProblem":
        # Real data: the truth is unknown, so every index is marked as a null.
        p = np.asarray(pvalues, dtype=np.float64)
        return cls(p, np.ones(p.size, dtype=bool))

    @property
    def m(self) -> int:
        return int(self.pvalues.size)

    @property
    def m0(self) -> int:
        return int(np.count_nonzero(self.null_mask))


class Counts(NamedTuple):
    V: int
    S: int
    R: int


def counts(problem: TestingProblem, t: float) -> Counts:
    # V(t) false rejections, S(t) true rejections, R(t) = V + S, for the cutoff p <= t.
    t = check_level(t)
    hit = problem.pvalues <= t
    V = int(np.count_nonzero(hit & problem.null_mask))
    S = int(np.count_nonzero(hit & ~problem.null_mask))
    return Counts(V, S, V + S)


@dataclass(frozen=True)
class RejectionSet:
    # Rejected indices (sorted, 0-based) and the realized cutoff; threshold is 0
    # when nothing is rejected.
    rejected: tuple[int, ...]
    threshold: float
    flags: tuple[str, ...] = field(default=())

    @classmethod
    def from_threshold(cls, problem: TestingProblem, t: float, flags: tuple[str, ...] = ()) -> "RejectionSet":
        idx = np.flatnonzero(problem.pvalues <= t)
        return cls(tuple(int(i) for i in idx), float(t), flags)

    @classmethod
    def empty(cls, flags: tuple[str, ...] = ()) -> "RejectionSet":
        return cls((), 0.0, flags)

    def __len__(self) -> int:
        return len(self.rejected)

    def __contains__(self, index: int) -> bool:
        return index in self.rejected

    def one_based(self) -> list[int]:
        return [i + 1 for i in self.rejected]

    def mask(self, m: int) -> np.ndarray:
        out = np.zeros(m, dtype=bool)
        out[list(self.rejected)] = True
        return out

    def is_consistent_with(self, problem: TestingProblem) -> bool:
        # Rejected p <= threshold, everything else above it (checked for non-empty sets).
        if not self.rejected:
            return True
        inside = self.mask(problem.m)
        p = problem.pvalues
        return bool(np.all(p[inside] <= self.threshold) and np.all(p[~inside] > self.threshold))

    def to_dict(self) -> dict:
        return {"rejected": self.one_based(), "threshold": self.threshold, "flags": list(self.flags)}
