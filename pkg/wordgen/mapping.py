# wordgen/mapping.py

"""Character-level building blocks: run breaking, GC mapping and wrapping."""

from itertools import groupby
from typing import List, Optional

import numpy as np

from constraints.params import gc_target
from core.exceptions import InvalidInputError
from wordgen.schemas import GcPolicy, break_runs_inserts
from words.schemas import Alphabet, Word

# DNA codes (A, C, G, T) = (0, 1, 2, 3); 0 -> G/A, 1 -> C/T
_GC_IMAGE = np.array([2, 1], dtype=np.uint8)
_AT_IMAGE = np.array([0, 3], dtype=np.uint8)


def _flip(c: str) -> str:
    return "1" if c == "0" else "0"


def break_runs(x: Word, d: int) -> Word:
    """
    Insert complement characters so no run exceeds d.

    For i = 1..t the complement of x[i(d-1)] goes right after position
    i(d-1) and the complement of x[ℓ-i(d-1)] right after position ℓ-i(d-1);
    the complement of x[⌊ℓ/2⌋] goes after ⌊ℓ/2⌋. When the middle gap is also
    a left gap (odd ℓ) or ℓ = 1, the middle character is the complement of
    x[⌊ℓ/2⌋+1] and follows the left insert. Gaps are mirror images of each
    other for even ℓ, which keeps H(X, Y^RC) <= H(X', Y'^RC).
    """
    if x.alphabet is not Alphabet.BINARY:
        raise InvalidInputError("break_runs works on binary words")
    if d < 2:
        raise InvalidInputError(f"d must be >= 2, got {d}")

    s = x.symbols
    length = len(s)
    t = break_runs_inserts(length, d)
    inserts: List[List[str]] = [[] for _ in range(length + 1)]
    left_gaps = set()
    for i in range(1, t + 1):
        p = i * (d - 1)
        inserts[p].append(_flip(s[p - 1]))
        left_gaps.add(p)
    mid = length // 2
    if mid in left_gaps or mid == 0:
        inserts[mid].append(_flip(s[mid]))
    else:
        inserts[mid].append(_flip(s[mid - 1]))
    for i in range(1, t + 1):
        q = length - i * (d - 1)
        inserts[q].append(_flip(s[q - 1]))

    out = inserts[0][:]
    for pos, c in enumerate(s, start=1):
        out.append(c)
        out.extend(inserts[pos])
    return Word.trusted(Alphabet.BINARY, "".join(out))


def gc_positions(
    w: Word,
    count: int,
    policy: GcPolicy = GcPolicy.FIRST,
    rng: Optional[np.random.Generator] = None,
) -> np.ndarray:
    """The 0-based positions gc_map sends to G/C"""
    length = len(w)
    if policy is GcPolicy.FIRST:
        return np.arange(count)
    if policy is GcPolicy.RANDOM:
        if rng is None:
            raise InvalidInputError("The random GC policy needs a random stream")
        return np.sort(rng.choice(length, size=count, replace=False))

    # run-preserving: every other character of each run first, then the rest
    preferred, rest = [], []
    start = 0
    for _, group in groupby(w.symbols):
        run = len(list(group))
        for offset in range(run):
            (preferred if offset % 2 == 0 else rest).append(start + offset)
        start += run
    order = preferred + sorted(rest)
    return np.sort(np.array(order[:count], dtype=np.int64))


def gc_map(
    w: Word,
    gamma: float,
    policy: GcPolicy = GcPolicy.FIRST,
    rng: Optional[np.random.Generator] = None,
) -> Word:
    """Binary -> DNA with exactly ⌈γ·ℓ⌉ positions mapped 0->G, 1->C and the rest 0->A, 1->T"""
    if w.alphabet is not Alphabet.BINARY:
        raise InvalidInputError("gc_map works on binary words")
    if not 0 <= gamma <= 1:
        raise InvalidInputError(f"gamma must lie in [0, 1], got {gamma}")
    bits = w.codes()
    out = _AT_IMAGE[bits]
    chosen = gc_positions(w, gc_target(gamma, len(w)), GcPolicy(policy), rng)
    out[chosen] = _GC_IMAGE[bits[chosen]]
    return Word.from_codes(Alphabet.DNA, out)


def wrap(x: Word, y: Word) -> Word:
    """X⊗Y = Y[1..ℓ_y/2] ++ X ++ Y[ℓ_y/2+1..ℓ_y]"""
    if x.alphabet is not y.alphabet:
        raise InvalidInputError("wrap needs words over one alphabet")
    if len(y) == 0 or len(y) % 2:
        raise InvalidInputError(f"wrap needs an even, non-empty outer word, got length {len(y)}")
    half = len(y) // 2
    return Word.trusted(x.alphabet, y.symbols[:half] + x.symbols + y.symbols[half:])
