# constraints/report.py

from enum import Enum
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, computed_field


class ConstraintId(str, Enum):
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"
    C5 = "C5"
    C6 = "C6"
    C7 = "C7"
    C8 = "C8"
    C9 = "C9"

    @property
    def label(self) -> str:
        return _LABELS[self]

    @classmethod
    def parse(cls, text: str) -> "ConstraintId":
        return cls(text.strip().upper())


_LABELS = {
    ConstraintId.C1: "basic Hamming",
    ConstraintId.C2: "reverse complementary",
    ConstraintId.C3: "self complementary",
    ConstraintId.C4: "shifting Hamming",
    ConstraintId.C5: "shifting reverse complementary",
    ConstraintId.C6: "shifting self complementary",
    ConstraintId.C7: "GC content",
    ConstraintId.C8: "consecutive base",
    ConstraintId.C9: "free energy",
}


class Offender(BaseModel):
    """
    One failing instance. Indices and offsets are 1-based. Pair constraints
    set `pair`, single-word constraints set `word`; `side` tells the prefix
    and suffix families of C5/C6 apart.
    """

    model_config = ConfigDict(frozen=True)

    pair: Optional[Tuple[int, int]] = None
    word: Optional[int] = None
    offset: Optional[int] = None
    observed: int
    required: int
    side: Optional[str] = None

    def sort_key(self):
        who = self.pair if self.pair is not None else (self.word,)
        return who, self.offset or 0, self.side or ""

    def describe(self) -> str:
        parts = []
        if self.pair is not None:
            parts.append(f"pair=({self.pair[0]},{self.pair[1]})")
        else:
            parts.append(f"word={self.word}")
        if self.offset is not None:
            parts.append(f"i={self.offset}")
        parts.append(f"observed={self.observed}")
        parts.append(f"required={self.required}")
        if self.side is not None:
            parts.append(f"side={self.side}")
        return " ".join(parts)


class ViolationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    constraint_id: ConstraintId
    offenders: List[Offender] = []

    @classmethod
    def of(cls, constraint_id: ConstraintId, offenders) -> "ViolationReport":
        return cls(constraint_id=constraint_id, offenders=sorted(offenders, key=Offender.sort_key))

    @computed_field
    @property
    def label(self) -> str:
        return self.constraint_id.label

    @property
    def passed(self) -> bool:
        return not self.offenders

    def lines(self) -> List[str]:
        return [f"CONSTRAINT {self.constraint_id.value} VIOLATION {o.describe()}" for o in self.offenders]


class VerificationSummary(BaseModel):
    """Machine-readable document for a verify run"""

    passed: bool
    n: int
    length: int
    reports: List[ViolationReport]

    @classmethod
    def of(cls, reports: List[ViolationReport], n: int, length: int) -> "VerificationSummary":
        return cls(passed=all(r.passed for r in reports), n=n, length=length, reports=reports)

    def text(self) -> str:
        lines = [line for r in self.reports for line in r.lines()]
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines) + "\n"
