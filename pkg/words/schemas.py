# words/schemas.py

from enum import Enum
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator


class Alphabet(str, Enum):
    """The two alphabets words are drawn from, in canonical character order"""

    BINARY = "binary"
    DNA = "dna"

    @property
    def characters(self) -> str:
        return "01" if self is Alphabet.BINARY else "ACGT"

    @property
    def size(self) -> int:
        return len(self.characters)

    @property
    def complement_table(self) -> dict:
        # canonical order is chosen so that complement(code) = size - 1 - code
        chars = self.characters
        return str.maketrans(chars, chars[::-1])

    def complement_codes(self, codes: np.ndarray) -> np.ndarray:
        return (self.size - 1 - codes).astype(np.uint8)

    def encode(self, symbols: str) -> np.ndarray:
        lookup = {c: i for i, c in enumerate(self.characters)}
        return np.fromiter((lookup[c] for c in symbols), dtype=np.uint8, count=len(symbols))

    def decode(self, codes) -> str:
        chars = self.characters
        return "".join(chars[int(c)] for c in codes)

    @classmethod
    def infer(cls, text: str) -> "Alphabet":
        return cls.BINARY if set(text.upper()) <= set("01") else cls.DNA


class Word(BaseModel):
    """
    A non-empty word over one alphabet.

    Positions are 1-based in every contract and report; `symbols` is an
    ordinary Python string, so code indexes it from 0.
    """

    model_config = ConfigDict(frozen=True)

    alphabet: Alphabet
    symbols: str

    @field_validator("symbols", mode="before")
    @classmethod
    def normalize_case(cls, v):
        if not isinstance(v, str):
            raise ValueError("symbols must be a string")
        return v.upper()

    @model_validator(mode="after")
    def check_symbols(self):
        if not self.symbols:
            raise ValueError("Empty words are not allowed")
        stray = set(self.symbols) - set(self.alphabet.characters)
        if stray:
            raise ValueError(
                f"Characters {''.join(sorted(stray))!r} are not in the {self.alphabet.value} alphabet"
            )
        return self

    @classmethod
    def parse(cls, text: str, alphabet: Optional[Alphabet] = None) -> "Word":
        return cls(alphabet=alphabet or Alphabet.infer(text), symbols=text)

    @classmethod
    def trusted(cls, alphabet: Alphabet, symbols: str) -> "Word":
        """Build without validation; for symbols produced by this package"""
        return cls.model_construct(alphabet=alphabet, symbols=symbols)

    @classmethod
    def from_codes(cls, alphabet: Alphabet, codes) -> "Word":
        return cls.trusted(alphabet, alphabet.decode(codes))

    def codes(self) -> np.ndarray:
        return self.alphabet.encode(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return self.symbols


class WordSet(BaseModel):
    """An ordered, non-empty list of words sharing one length and one alphabet"""

    model_config = ConfigDict(frozen=True)

    words: Tuple[Word, ...]

    @field_validator("words")
    @classmethod
    def check_uniform(cls, v):
        if len(v) == 0:
            raise ValueError("A word set needs at least one word")
        first = v[0]
        for i, w in enumerate(v, start=1):
            if w.alphabet != first.alphabet:
                raise ValueError(f"Word {i} is {w.alphabet.value}, expected {first.alphabet.value}")
            if len(w) != len(first):
                raise ValueError(f"Word {i} has length {len(w)}, expected {len(first)}")
        return v

    @classmethod
    def from_strings(cls, texts, alphabet: Optional[Alphabet] = None) -> "WordSet":
        return cls(words=tuple(Word.parse(t, alphabet) for t in texts))

    @property
    def n(self) -> int:
        return len(self.words)

    @property
    def length(self) -> int:
        return len(self.words[0])

    @property
    def alphabet(self) -> Alphabet:
        return self.words[0].alphabet

    def codes(self) -> np.ndarray:
        """(n, length) array of character codes"""
        return np.stack([w.codes() for w in self.words])

    def strings(self):
        return [w.symbols for w in self.words]

    def __len__(self) -> int:
        return len(self.words)

    def __getitem__(self, index) -> Word:
        return self.words[index]
