# energy/table.py

import logging
import os
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from core.exceptions import InvalidInputError
from words.schemas import Alphabet, Word

logger = logging.getLogger(__name__)

DNA = Alphabet.DNA.characters

# Synthetic example table (not measured thermodynamic data): rows are the
# left base, columns the right base, both in A, C, G, T order.
SYNTHETIC_ROWS = (
    (1, 2, 2, 1),
    (2, 3, 4, 2),
    (2, 3, 3, 2),
    (0, 2, 2, 1),
)


class GammaTable(BaseModel):
    """
    Pairwise free-energy table Γ over ordered DNA base pairs.

    Entries are non-negative integers; physical energies must be scaled and
    rounded by the caller before they get here.
    """

    model_config = ConfigDict(frozen=True)

    entries: Tuple[Tuple[int, int, int, int], ...]

    @field_validator("entries", mode="before")
    @classmethod
    def coerce_rows(cls, v):
        rows = tuple(tuple(row) for row in v)
        if len(rows) != 4 or any(len(row) != 4 for row in rows):
            raise ValueError("Γ table must be 4x4")
        for row in rows:
            for x in row:
                if isinstance(x, bool) or int(x) != x:
                    raise ValueError(f"Γ entries must be integers, got {x!r}")
                if x < 0:
                    raise ValueError(f"Γ entries must be non-negative, got {x}")
        return tuple(tuple(int(x) for x in row) for row in rows)

    @property
    def gamma_max(self) -> int:
        return max(max(row) for row in self.entries)

    @property
    def gamma_min(self) -> int:
        return min(min(row) for row in self.entries)

    @property
    def D(self) -> int:
        return self.gamma_max - self.gamma_min

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def entry(self, left: str, right: str) -> int:
        return self.entries[DNA.index(left)][DNA.index(right)]

    @classmethod
    def uniform(cls, value: int = 1) -> "GammaTable":
        return cls(entries=[[value] * 4 for _ in range(4)])

    @classmethod
    def synthetic(cls) -> "GammaTable":
        return cls(entries=SYNTHETIC_ROWS)

    @classmethod
    def parse(cls, text: str) -> "GammaTable":
        """Exactly 16 whitespace-separated integers, row-major; '#' lines ignored"""
        tokens = []
        for line in text.splitlines():
            if line.lstrip().startswith("#"):
                continue
            tokens.extend(line.split())
        if len(tokens) != 16:
            raise InvalidInputError(f"Γ table needs exactly 16 entries, found {len(tokens)}")
        try:
            values = [int(t) for t in tokens]
        except ValueError as e:
            raise InvalidInputError(f"Γ table entries must be integers: {e}") from e
        try:
            return cls(entries=[values[i:i + 4] for i in range(0, 16, 4)])
        except ValueError as e:
            raise InvalidInputError(str(e)) from e

    @classmethod
    def read(cls, file_path: str) -> "GammaTable":
        if not os.path.exists(file_path):
            raise FileNotFoundError(f"Γ table not found: {file_path}")
        try:
            with open(file_path, encoding="utf-8") as fh:
                text = fh.read()
        except UnicodeDecodeError as e:
            raise InvalidInputError(f"Γ table is not valid UTF-8: {file_path} ({e.reason} at byte {e.start})") from e
        table = cls.parse(text)
        logger.info(f"✓ Loaded Γ table from {file_path} (Γmin={table.gamma_min}, Γmax={table.gamma_max})")
        return table

    def format(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.entries) + "\n"


def free_energy(w: Word, table: GammaTable) -> int:
    """FE(X) = sum of Γ over the l-1 adjacent pairs"""
    if w.alphabet is not Alphabet.DNA:
        raise InvalidInputError("Free energy is defined on DNA words only")
    if len(w) < 2:
        raise InvalidInputError("Free energy needs a word of length >= 2")
    entries = table.entries
    idx = [DNA.index(c) for c in w.symbols]
    return sum(entries[a][b] for a, b in zip(idx, idx[1:]))


def free_energies(codes: np.ndarray, table: GammaTable) -> np.ndarray:
    """Vectorized FE over an (n, l) array of DNA codes"""
    if codes.shape[1] < 2:
        raise InvalidInputError("Free energy needs words of length >= 2")
    gamma = table.array()
    return gamma[codes[:, :-1], codes[:, 1:]].sum(axis=1)
