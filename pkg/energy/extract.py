# energy/extract.py

"""
Witness index, extraction of strings of a given free energy, and the
bounded-energy batch construction built on them.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from core.config import config
from core.exceptions import EnergyNotAchievableError, InternalError
from core.instrument import tally
from energy.ladder import CountLadder, split_lengths
from energy.table import free_energy
from words.schemas import Alphabet, Word

logger = logging.getLogger(__name__)

Split = Tuple[int, int, int]

# candidate (j, r) pairs examined per block while building witnesses
_WITNESS_BLOCK = 1 << 22
# interval sweeps win once the right support has this many points per run
_RUN_ADVANTAGE = 32


@dataclass(frozen=True)
class WitnessIndex:
    """
    For every non-leaf level, an int32 array shaped (4, 4, size, 3)
    holding one (d1, d2, j) split per nonzero coefficient; -1 where the
    coefficient is zero.
    """

    L: int
    levels: Dict[int, np.ndarray]

    def lookup(self, length: int, a: int, b: int, energy: int) -> Optional[Split]:
        entry = self.levels[length][a, b, energy]
        if entry[0] < 0:
            return None
        return int(entry[0]), int(entry[1]), int(entry[2])

    def entries(self):
        """Yield (length, a, b, energy, (d1, d2, j)) for every recorded witness"""
        for length, table in sorted(self.levels.items()):
            for a, b, e in zip(*np.nonzero(table[:, :, :, 0] >= 0)):
                yield length, int(a), int(b), int(e), tuple(int(x) for x in table[a, b, e])


def slow_build(ladder: CountLadder, ops=None) -> WitnessIndex:
    """
    One split per nonzero term, chosen in the same
    (d1, d2, ascending j) order a scanning extraction would use.
    """
    gamma = ladder.gamma
    levels = {}
    for length in ladder.lengths:
        if length == 1:
            continue
        lo, hi = split_lengths(length)
        left, right = ladder.support(lo), ladder.support(hi)
        size = ladder.level(length).shape[-1]
        witness = np.full((4, 4, size, 3), -1, dtype=np.int32)
        right_nz = [[np.flatnonzero(right[d2, b]) for b in range(4)] for d2 in range(4)]
        for a in range(4):
            for b in range(4):
                slot = witness[a, b]
                for d1 in range(4):
                    js = np.flatnonzero(left[a, d1])
                    if len(js) == 0:
                        continue
                    for d2 in range(4):
                        rs = right_nz[d2][b]
                        if len(rs) == 0:
                            continue
                        _assign(slot, js, rs, int(gamma[d1, d2]), d1, d2, ops)
        levels[length] = witness
    logger.debug(f"✓ Witness index ready for L={ladder.L} ({len(levels)} levels)")
    return WitnessIndex(L=ladder.L, levels=levels)


def _intervals(indices: np.ndarray) -> List[Tuple[int, int]]:
    """Maximal runs of consecutive values in a sorted index array"""
    breaks = np.flatnonzero(np.diff(indices) > 1)
    starts = np.concatenate(([indices[0]], indices[breaks + 1]))
    ends = np.concatenate((indices[breaks], [indices[-1]]))
    return [(int(s), int(t)) for s, t in zip(starts, ends)]


def _find(parent: List[int], x: int) -> int:
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


def _assign(slot: np.ndarray, js: np.ndarray, rs: np.ndarray, g: int, d1: int, d2: int, ops):
    runs = _intervals(rs)
    if len(runs) * _RUN_ADVANTAGE < len(rs):
        _assign_runs(slot, js, runs, g, d1, d2, ops)
    else:
        _assign_pairs(slot, js, rs, g, d1, d2, ops)


def _assign_runs(slot: np.ndarray, js: np.ndarray, runs, g: int, d1: int, d2: int, ops):
    """
    Dense right supports: each j covers a few energy intervals, and a
    next-unassigned pointer forest skips energies that already have a
    witness, so every energy is written once.
    """
    size = slot.shape[0]
    free = slot[:, 0] < 0
    remaining = int(free.sum())
    if remaining == 0:
        return
    nearest = np.where(free, np.arange(size), size)
    parent = np.minimum.accumulate(nearest[::-1])[::-1].tolist() + [size]
    for j in js.tolist():
        base = j + g
        for s, t in runs:
            e = _find(parent, base + s)
            while e <= base + t:
                slot[e] = (d1, d2, j)
                parent[e] = e + 1
                remaining -= 1
                e = _find(parent, e + 1)
        tally(ops, len(runs))
        if remaining == 0:
            break


def _assign_pairs(slot: np.ndarray, js: np.ndarray, rs: np.ndarray, g: int, d1: int, d2: int, ops):
    block = max(1, _WITNESS_BLOCK // len(rs))
    for start in range(0, len(js), block):
        chunk = js[start:start + block]
        energies = (chunk[:, None] + g + rs[None, :]).ravel()
        tally(ops, energies.size)
        unique, first = np.unique(energies, return_index=True)
        fresh = slot[unique, 0] < 0
        if not fresh.any():
            continue
        targets = unique[fresh]
        slot[targets, 0] = d1
        slot[targets, 1] = d2
        slot[targets, 2] = chunk[first[fresh] // len(rs)]


def check_witness(ladder: CountLadder, length: int, a: int, b: int, energy: int, split: Split) -> bool:
    d1, d2, j = split
    lo, hi = split_lengths(length)
    left, right = ladder.support(lo), ladder.support(hi)
    r = energy - j - int(ladder.gamma[d1, d2])
    if not (0 <= j < left.shape[-1] and 0 <= r < right.shape[-1]):
        return False
    return bool(left[a, d1, j] and right[d2, b, r])


# ==================== EXTRACT ====================

def _scan_split(ladder: CountLadder, length: int, a: int, b: int, energy: int, ops) -> Optional[Split]:
    lo, hi = split_lengths(length)
    left, right = ladder.support(lo), ladder.support(hi)
    size_l, size_r = left.shape[-1], right.shape[-1]
    gamma = ladder.gamma
    for d1 in range(4):
        for d2 in range(4):
            rest = energy - int(gamma[d1, d2])
            j_lo = max(0, rest - (size_r - 1))
            j_hi = min(size_l - 1, rest)
            if j_lo > j_hi:
                continue
            lvals = left[a, d1, j_lo:j_hi + 1]
            rvals = right[d2, b, rest - j_hi:rest - j_lo + 1][::-1]
            tally(ops, j_hi - j_lo + 1)
            hits = np.flatnonzero(lvals & rvals)
            if len(hits):
                return d1, d2, j_lo + int(hits[0])
    return None


class _Extractor:
    def __init__(self, ladder: CountLadder, witness: Optional[WitnessIndex], ops):
        self.ladder = ladder
        self.witness = witness
        self.ops = ops

    def descend(self, length: int, a: int, b: int, energy: int, out: List[int]):
        if length == 1:
            out.append(a)
            return
        if self.witness is not None:
            tally(self.ops, 1)
            split = self.witness.lookup(length, a, b, energy)
        else:
            split = _scan_split(self.ladder, length, a, b, energy, self.ops)
        if split is None:
            raise EnergyNotAchievableError(
                f"No split for energy {energy} at length {length}", energy=energy
            )
        d1, d2, j = split
        lo, hi = split_lengths(length)
        self.descend(lo, a, d1, j, out)
        self.descend(hi, d2, b, energy - j - int(self.ladder.gamma[d1, d2]), out)


def extract(
    energy: int,
    ladder: CountLadder,
    witness: Optional[WitnessIndex] = None,
    start_pair: Optional[Tuple[int, int]] = None,
    ops=None,
) -> Word:
    """A length-L DNA word whose free energy is exactly `energy`"""
    top = ladder.support(ladder.L)
    pairs = [start_pair] if start_pair is not None else [(a, b) for a in range(4) for b in range(4)]
    chosen = None
    if 0 <= energy < top.shape[-1]:
        for a, b in pairs:
            if top[a, b, energy]:
                chosen = (a, b)
                break
    if chosen is None:
        raise EnergyNotAchievableError(f"Energy {energy} is not achievable at length {ladder.L}", energy=energy)

    codes: List[int] = []
    _Extractor(ladder, witness, ops).descend(ladder.L, chosen[0], chosen[1], energy, codes)
    word = Word.from_codes(Alphabet.DNA, codes)
    if ladder.L >= 2 and free_energy(word, ladder.table) != energy:
        raise InternalError(f"Extracted word {word} does not have energy {energy}")
    return word


# ==================== CONSTRUCT STRINGS ====================

class EnergyBounds(BaseModel):
    """Per-string energy intervals [A_i, B_i] for strings of length L"""

    model_config = ConfigDict(frozen=True)

    lower: Tuple[int, ...]
    upper: Tuple[int, ...]
    length: int

    @model_validator(mode="after")
    def check_intervals(self):
        if self.length < 1:
            raise ValueError(f"Target length must be >= 1, got {self.length}")
        if len(self.lower) != len(self.upper):
            raise ValueError("Lower and upper bounds must have the same count")
        if not self.lower:
            raise ValueError("At least one interval is required")
        for i, (lo, hi) in enumerate(zip(self.lower, self.upper), start=1):
            if lo > hi:
                raise ValueError(f"Interval {i} is empty: A={lo} > B={hi}")
        return self

    @property
    def n(self) -> int:
        return len(self.lower)


def fork_threshold(L: int, scale: float = None) -> float:
    """n at or above which building the witness index pays off"""
    scale = config.FORK_SCALE if scale is None else scale
    if L < 3:
        return 0.0
    return scale * math.sqrt(L / math.log(L))


def should_slow_build(n: int, L: int, scale: float = None) -> bool:
    return n >= fork_threshold(L, scale)


def select_energies(bounds: EnergyBounds, ladder: CountLadder) -> List[int]:
    """Smallest achievable energy inside each interval"""
    achievable = ladder.achievable(bounds.length)
    chosen = []
    for i, (lo, hi) in enumerate(zip(bounds.lower, bounds.upper), start=1):
        pos = int(np.searchsorted(achievable, lo, side="left"))
        if pos >= len(achievable) or achievable[pos] > hi:
            raise EnergyNotAchievableError(
                f"No achievable energy in [{lo}, {hi}] for string {i} at length {bounds.length}",
                index=i,
            )
        chosen.append(int(achievable[pos]))
    return chosen


def construct_strings(
    bounds: EnergyBounds,
    ladder: CountLadder,
    witness: Optional[WitnessIndex] = None,
    use_witness: Optional[bool] = None,
    ops=None,
) -> List[Word]:
    """
    One length-L word per interval with A_i <= FE <= B_i.

    Without a supplied index, slow_build runs only when n is large enough
    for it to pay off (or when `use_witness` forces the choice).
    """
    if bounds.length != ladder.L:
        raise InternalError(f"Bounds are for length {bounds.length}, ladder is for {ladder.L}")
    energies = select_energies(bounds, ladder)
    if witness is None:
        build_index = should_slow_build(bounds.n, ladder.L) if use_witness is None else use_witness
        if build_index:
            logger.info(f"🔄 Building witness index (n={bounds.n}, L={ladder.L})")
            witness = slow_build(ladder, ops)

    cache: Dict[int, Word] = {}
    words = []
    for i, energy in enumerate(energies, start=1):
        if energy not in cache:
            try:
                cache[energy] = extract(energy, ladder, witness, ops=ops)
            except EnergyNotAchievableError as e:
                raise EnergyNotAchievableError(f"String {i}: {e}", index=i, energy=energy) from e
        words.append(cache[energy])
    logger.info(f"✓ Constructed {len(words)} strings of length {ladder.L}")
    return words
