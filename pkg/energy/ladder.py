# energy/ladder.py

"""
Counting polynomials and the halving ladder.

f[len][a][b] has coefficient z equal to the number of length-len DNA strings
starting with a, ending with b, whose free energy is z. A level of the ladder
holds all 16 of them as one array shaped (channels, 4, 4, size) with
size = (len - 1) * Γmax + 1, indexed directly by energy.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Tuple

import numpy as np

from core.exceptions import InternalError, InvalidInputError
from core.instrument import tally
from energy.ring import Ring, crt_combine, exact_multiply, mulmod, ntt, transform_size
from energy.table import DNA, GammaTable

logger = logging.getLogger(__name__)


def level_size(length: int, table: GammaTable) -> int:
    return (length - 1) * table.gamma_max + 1


def halving_lengths(L: int) -> List[int]:
    """Every length reachable from L by floor/ceil halving, ascending"""
    if L < 1:
        raise InvalidInputError(f"Length must be >= 1, got {L}")
    seen = set()
    stack = [L]
    while stack:
        length = stack.pop()
        if length in seen:
            continue
        seen.add(length)
        if length > 1:
            stack.extend((length // 2, length - length // 2))
    return sorted(seen)


def split_lengths(length: int) -> Tuple[int, int]:
    return length // 2, length - length // 2


@dataclass(frozen=True)
class EnergyPolynomial:
    """One counting polynomial f[length][first][last] as a sparse energy -> coefficient map"""

    length: int
    first: str
    last: str
    coeffs: Dict[int, int] = field(default_factory=dict)

    def __getitem__(self, energy: int) -> int:
        return self.coeffs.get(energy, 0)

    def energies(self) -> List[int]:
        return sorted(self.coeffs)


@dataclass(frozen=True)
class AchievableProfile:
    e_min: int
    e_max: int
    delta: int


@dataclass(frozen=True)
class CountLadder:
    """The counting polynomials for every length of the halving ladder of L"""

    L: int
    table: GammaTable
    ring: Ring
    levels: Dict[int, np.ndarray]

    @property
    def gamma(self) -> np.ndarray:
        return self.table.array()

    @property
    def lengths(self) -> List[int]:
        return sorted(self.levels)

    def level(self, length: int) -> np.ndarray:
        if length not in self.levels:
            raise InvalidInputError(f"Length {length} is not a level of the ladder for L={self.L}")
        return self.levels[length]

    @cached_property
    def _supports(self) -> Dict[int, np.ndarray]:
        return {}

    def support(self, length: int) -> np.ndarray:
        """(4, 4, size) boolean mask of nonzero coefficients; OR over residue channels"""
        cached = self._supports.get(length)
        if cached is None:
            cached = np.any(self.level(length) != 0, axis=0)
            cached.setflags(write=False)
            self._supports[length] = cached
        return cached

    def aggregate(self, length: int) -> np.ndarray:
        """Σ over (a, b) of f[length][a][b], shaped (channels, size)"""
        total = self.level(length).sum(axis=(1, 2))
        return self.ring.reduce(total)

    def polynomial(self, length: int, first: str, last: str) -> EnergyPolynomial:
        a, b = DNA.index(first), DNA.index(last)
        level = self.level(length)
        coeffs = {}
        for e in np.flatnonzero(np.any(level[:, a, b] != 0, axis=0)):
            coeffs[int(e)] = self._value(level[:, a, b, e])
        return EnergyPolynomial(length=length, first=first, last=last, coeffs=coeffs)

    def counts(self, length: Optional[int] = None) -> List[Tuple[int, int]]:
        """(energy, count) for every achievable energy, ascending; counts live in the ring"""
        length = self.L if length is None else length
        agg = self.aggregate(length)
        return [(int(e), self._value(agg[:, e])) for e in np.flatnonzero(np.any(agg != 0, axis=0))]

    def achievable(self, length: Optional[int] = None) -> np.ndarray:
        length = self.L if length is None else length
        return np.flatnonzero(self.support(length).any(axis=(0, 1)))

    def _value(self, residues) -> int:
        if self.ring.is_exact:
            return int(residues[0])
        if len(self.ring.primes) == 1:
            return int(residues[0])
        return crt_combine(residues, self.ring.primes)


# ==================== BUILD ====================

def base_level(ring: Ring) -> np.ndarray:
    level = ring.zeros((4, 4, 1))
    for a in range(4):
        level[:, a, a, 0] = 1
    return level


def _junction(right: np.ndarray, gamma: np.ndarray, ring: Ring) -> np.ndarray:
    """T[d1][b] = Σ_d2 x^Γ[d1][d2] · f_right[d2][b]"""
    channels, _, _, size = right.shape
    shift = int(gamma.max())
    out = ring.zeros((4, 4, size + shift))
    for d1 in range(4):
        for d2 in range(4):
            g = int(gamma[d1, d2])
            out[:, d1, :, g:g + size] += right[:, d2, :, :]
    return ring.reduce(out)


def _trim(vec) -> Tuple[int, list]:
    nz = np.flatnonzero(vec)
    if len(nz) == 0:
        return 0, []
    return int(nz[0]), list(vec[nz[0]:nz[-1] + 1])


def _combine_exact(left: np.ndarray, junction: np.ndarray, size: int, ring: Ring, ops) -> np.ndarray:
    out = ring.zeros((4, 4, size))
    trimmed_left = [[_trim(left[0, a, d]) for d in range(4)] for a in range(4)]
    trimmed_junction = [[_trim(junction[0, d, b]) for b in range(4)] for d in range(4)]
    for a in range(4):
        for b in range(4):
            for d1 in range(4):
                lo_l, p = trimmed_left[a][d1]
                lo_t, q = trimmed_junction[d1][b]
                if not p or not q:
                    continue
                prod = exact_multiply(p, q, ops)
                start = lo_l + lo_t
                out[0, a, b, start:start + len(prod)] += np.array(prod, dtype=object)
    return out


def _combine_modular(left: np.ndarray, junction: np.ndarray, size: int, ring: Ring, ops) -> np.ndarray:
    n = transform_size(size)
    out = np.zeros((ring.channels, 4, 4, size), dtype=np.int64)
    for c, p in enumerate(ring.primes):
        fl = np.zeros((4, 4, n), dtype=np.int64)
        ft = np.zeros((4, 4, n), dtype=np.int64)
        fl[:, :, :left.shape[-1]] = left[c]
        ft[:, :, :junction.shape[-1]] = junction[c]
        fl = ntt(fl, p, ops=ops)
        ft = ntt(ft, p, ops=ops)
        # products over (a, d1, b), summed over the middle character d1
        prod = mulmod(fl[:, :, None, :], ft[None, :, :, :], p)
        tally(ops, prod.size)
        spectrum = prod.sum(axis=1) % p
        out[c] = ntt(spectrum, p, invert=True, ops=ops)[:, :, :size]
    return out


def combine(left: np.ndarray, right: np.ndarray, length: int, table: GammaTable, ring: Ring, ops=None) -> np.ndarray:
    """Assemble level `length` from its two children"""
    gamma = table.array()
    junction = _junction(right, gamma, ring)
    tally(ops, 16 * right.shape[-1] * ring.channels)
    size = level_size(length, table)
    if ring.is_exact:
        return _combine_exact(left, junction, size, ring, ops)
    return _combine_modular(left, junction, size, ring, ops)


def build(L: int, table: GammaTable, ring: Optional[Ring] = None, ops=None) -> CountLadder:
    """Every halving level of L, bottom-up, by fast polynomial multiplication"""
    ring = ring or Ring.exact()
    levels = {1: base_level(ring)}
    for length in halving_lengths(L)[1:]:
        lo, hi = split_lengths(length)
        levels[length] = combine(levels[lo], levels[hi], length, table, ring, ops)
    logger.debug(f"✓ Built ladder for L={L} with {len(levels)} levels ({ring.describe()})")
    return CountLadder(L=L, table=table, ring=ring, levels=levels)


def check_level(ladder: CountLadder, length: int) -> bool:
    """Recompute a non-leaf level from its children and compare"""
    if length == 1:
        return bool(np.array_equal(ladder.level(1), base_level(ladder.ring)))
    lo, hi = split_lengths(length)
    again = combine(ladder.level(lo), ladder.level(hi), length, ladder.table, ladder.ring)
    return bool(np.array_equal(again, ladder.level(length)))


# ==================== DP BASELINE ====================

def count_dp(L: int, table: GammaTable, ring: Optional[Ring] = None, ops=None) -> np.ndarray:
    """
    Counting polynomials at length L by extending strings one character at a
    time. Returns the same (channels, 4, 4, size) layout as a ladder level.
    """
    if L < 1:
        raise InvalidInputError(f"Length must be >= 1, got {L}")
    ring = ring or Ring.exact()
    gamma = table.array()
    state = base_level(ring)
    for length in range(2, L + 1):
        size = level_size(length, table)
        prev = state.shape[-1]
        nxt = ring.zeros((4, 4, size))
        for e in range(4):
            for b in range(4):
                g = int(gamma[e, b])
                nxt[:, :, b, g:g + prev] += state[:, :, e, :]
        tally(ops, 16 * 4 * prev * ring.channels)
        state = ring.reduce(nxt)
    return state


def dp_ladder(L: int, table: GammaTable, ring: Optional[Ring] = None, ops=None) -> CountLadder:
    """A one-level ladder holding only length L, for callers that just need counts"""
    ring = ring or Ring.exact()
    return CountLadder(L=L, table=table, ring=ring, levels={L: count_dp(L, table, ring, ops)})


# ==================== PROFILE ====================

def achievable_profile(ladder: CountLadder, length: Optional[int] = None) -> AchievableProfile:
    """(E_min, E_max, Δ) of the aggregate polynomial at `length`"""
    energies = ladder.achievable(length)
    if len(energies) == 0:
        raise InternalError(f"No achievable energy at length {length or ladder.L}")
    delta = int(np.diff(energies).max()) if len(energies) > 1 else 0
    return AchievableProfile(e_min=int(energies[0]), e_max=int(energies[-1]), delta=delta)
