# words/operations.py

from typing import Sequence, Union

import numpy as np

from core.exceptions import InvalidInputError
from words.schemas import Alphabet, Word

StreamSeed = Union[int, Sequence[int]]


def reverse(w: Word) -> Word:
    """X^R: result[i] = w[l+1-i]"""
    return Word.trusted(w.alphabet, w.symbols[::-1])


def complement(w: Word) -> Word:
    """X^C: complement every character"""
    return Word.trusted(w.alphabet, w.symbols.translate(w.alphabet.complement_table))


def reverse_complement(w: Word) -> Word:
    """X^RC = complement(reverse(X))"""
    return Word.trusted(w.alphabet, w.symbols[::-1].translate(w.alphabet.complement_table))


def hamming(x: Word, y: Word) -> int:
    """Number of positions where x and y differ"""
    if x.alphabet != y.alphabet:
        raise InvalidInputError(
            f"Hamming distance needs one alphabet, got {x.alphabet.value} and {y.alphabet.value}"
        )
    if len(x) != len(y):
        raise InvalidInputError(f"Hamming distance needs equal lengths, got {len(x)} and {len(y)}")
    return sum(a != b for a, b in zip(x.symbols, y.symbols))


def substream(stream_seed: StreamSeed) -> np.random.Generator:
    """
    Counter-based generator for one stream.

    `stream_seed` is either a master seed or a tuple (master_seed, i, j, ...);
    the tuple tail becomes the SeedSequence spawn key, so stream (s, i) is the
    same no matter which thread draws it or in which order.
    """
    if isinstance(stream_seed, (int, np.integer)):
        root, key = int(stream_seed), ()
    else:
        root, *rest = stream_seed
        root, key = int(root), tuple(int(k) for k in rest)
    if root < 0 or any(k < 0 for k in key):
        raise InvalidInputError("Seeds must be non-negative integers")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(root, spawn_key=key)))


def derive_seed(master_seed: int, *key: int) -> int:
    """A fresh 64-bit seed derived from (master_seed, key)"""
    seq = np.random.SeedSequence(int(master_seed), spawn_key=tuple(int(k) for k in key))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def seeded_word(alphabet: Alphabet, length: int, stream_seed: StreamSeed) -> Word:
    """A uniform random word; identical inputs always give the identical word"""
    if length < 1:
        raise InvalidInputError(f"Word length must be >= 1, got {length}")
    rng = substream(stream_seed)
    codes = rng.integers(0, alphabet.size, size=length, dtype=np.uint8)
    return Word.from_codes(alphabet, codes)
