# wordgen/schemas.py

from enum import Enum
from typing import FrozenSet, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from constraints.params import ConstraintParams
from constraints.report import ConstraintId
from energy.table import GammaTable
from words.schemas import WordSet


class Problem(str, Enum):
    """Constraint families, named after the constraints each generator targets"""

    DWD123456 = "basic"
    DWD1234567 = "gc"
    DWD12378 = "runs"
    DWD1234569 = "energy"


class GcPolicy(str, Enum):
    """Which ⌈γ·ℓ⌉ positions gc_map sends to G/C"""

    FIRST = "first"
    RUN_PRESERVING = "run-preserving"
    RANDOM = "random"


_HAMMING = (ConstraintId.C1, ConstraintId.C2, ConstraintId.C3, ConstraintId.C4, ConstraintId.C5, ConstraintId.C6)

ADVERTISED = {
    Problem.DWD123456: frozenset(_HAMMING),
    Problem.DWD1234567: frozenset(_HAMMING + (ConstraintId.C7,)),
    Problem.DWD12378: frozenset((ConstraintId.C1, ConstraintId.C2, ConstraintId.C3, ConstraintId.C7, ConstraintId.C8)),
    Problem.DWD1234569: frozenset(_HAMMING + (ConstraintId.C9,)),
}


def ceil_log(base: int, n: int) -> int:
    """Smallest e >= 0 with base**e >= n; ⌈log 1⌉ = 0"""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    e, power = 0, 1
    while power < n:
        power *= base
        e += 1
    return e


def dna_length(n: int, k: int) -> int:
    """ℓ = 9·max{k, ⌈log₄ n⌉}, floored at 9"""
    return 9 * max(k, ceil_log(4, n), 1)


def binary_length(n: int, k: int) -> int:
    """ℓ = 10·max{k, ⌈log₂ n⌉}, floored at 10"""
    return 10 * max(k, ceil_log(2, n), 1)


def break_runs_inserts(length: int, d: int) -> int:
    """t = ⌈ℓ / (2(d-1))⌉ - 1"""
    step = 2 * (d - 1)
    return (length + step - 1) // step - 1


def runs_length(length: int, d: int) -> int:
    return length + 2 * break_runs_inserts(length, d) + 1


class GenRequest(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    params: ConstraintParams
    master_seed: int = Field(ge=0, lt=2 ** 64)
    problem: Problem
    table: Optional[GammaTable] = None
    gc_policy: Optional[GcPolicy] = None
    ring: str = "auto"
    prime_count: int = Field(default=1, ge=1, le=2)
    prime_seed: Optional[int] = None

    @model_validator(mode="after")
    def check_problem_inputs(self):
        if self.problem in (Problem.DWD1234567, Problem.DWD12378) and self.params.gamma is None:
            raise ValueError(f"Problem {self.problem.value} needs gamma")
        if self.problem is Problem.DWD12378 and self.params.d is None:
            raise ValueError("Problem runs needs d")
        if self.problem is Problem.DWD1234569 and self.table is None:
            raise ValueError("Problem energy needs a Γ table")
        if self.ring not in ("auto", "exact", "mod"):
            raise ValueError(f"ring must be auto, exact or mod, got {self.ring!r}")
        return self

    @property
    def k(self) -> int:
        if self.problem is Problem.DWD12378:
            return max(self.params.k1, self.params.k2, self.params.k3)
        return self.params.k


class EnergyDerived(BaseModel):
    """Quantities computed on the free-energy path"""

    model_config = ConfigDict(frozen=True)

    padded: bool
    D: int
    gamma_max: int
    w_max: int
    w_min: int
    sigma: int
    m: Optional[int] = None
    e_min: Optional[int] = None
    delta: Optional[int] = None
    alpha: Optional[int] = None
    beta: Optional[int] = None
    ring: Optional[str] = None


class GenResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    problem: Problem
    words: WordSet
    ell_base: int
    final_length: int
    k: int
    derived: Optional[EnergyDerived] = None

    def advertised(self) -> FrozenSet[ConstraintId]:
        return ADVERTISED[self.problem]

    def summary(self) -> str:
        parts = [
            f"problem={self.problem.value}",
            f"n={self.words.n}",
            f"k={self.k}",
            f"ell={self.ell_base}",
            f"final_length={self.final_length}",
        ]
        e = self.derived
        if e is not None:
            parts.append(f"D={e.D}")
            parts.append(f"W_max={e.w_max} W_min={e.w_min}")
            if e.padded:
                parts.append(f"delta={e.delta} alpha={e.alpha} beta={e.beta}")
            parts.append(f"sigma={e.sigma}")
        return " ".join(parts)
