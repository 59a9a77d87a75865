# constraints/params.py

import math
from fractions import Fraction
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator


def gc_target(gamma: float, length: int) -> int:
    """⌈γ·ℓ⌉, computed on the decimal value of γ so 0.3 * 10 is 3, not 4"""
    return math.ceil(Fraction(str(gamma)) * length)


class ConstraintParams(BaseModel):
    """
    Thresholds for C1..C9. Hamming-family thresholds default to 0 (always
    satisfied); gamma, d and sigma stay unset until a constraint needs them.
    """

    model_config = ConfigDict(frozen=True)

    k1: int = Field(default=0, ge=0)
    k2: int = Field(default=0, ge=0)
    k3: int = Field(default=0, ge=0)
    k4: int = Field(default=0, ge=0)
    k5: int = Field(default=0, ge=0)
    k6: int = Field(default=0, ge=0)
    gamma: Optional[float] = None
    d: Optional[int] = None
    sigma: Optional[int] = Field(default=None, ge=0)

    @field_validator("gamma")
    @classmethod
    def check_gamma(cls, v):
        if v is not None and not 0 <= v <= 1:
            raise ValueError(f"gamma must lie in [0, 1], got {v}")
        return v

    @field_validator("d")
    @classmethod
    def check_d(cls, v):
        if v is not None and v < 2:
            raise ValueError(f"d must be >= 2, got {v}")
        return v

    @classmethod
    def uniform(cls, k: int, **kwargs) -> "ConstraintParams":
        """All six Hamming-family thresholds set to k"""
        return cls(k1=k, k2=k, k3=k, k4=k, k5=k, k6=k, **kwargs)

    @property
    def hamming_thresholds(self):
        return (self.k1, self.k2, self.k3, self.k4, self.k5, self.k6)

    @property
    def k(self) -> int:
        return max(self.hamming_thresholds)
