# energy/ring.py

"""
Coefficient rings and polynomial multiplication.

Counting polynomials have coefficients up to 4**L, so beyond small lengths
they are computed modulo one or two ~50-bit primes of the form c*2**30 + 1.
The number-theoretic transform is vectorized with numpy: residues stay
below 2**50, and a*b mod p is recovered exactly from a float64 estimate of
the quotient plus wrapping int64 arithmetic.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np

from core.config import config
from core.exceptions import InternalError, InvalidInputError
from core.instrument import tally
from words.operations import substream

logger = logging.getLogger(__name__)

# deterministic Miller-Rabin witnesses for every n < 2**64
_MR_BASES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)


class RingKind(str, Enum):
    EXACT = "exact"
    MODULAR = "mod"


@dataclass(frozen=True)
class Ring:
    kind: RingKind
    primes: Tuple[int, ...] = ()

    @classmethod
    def exact(cls) -> "Ring":
        return cls(RingKind.EXACT)

    @classmethod
    def modular(cls, count: int = None, seed: int = None) -> "Ring":
        count = config.DEFAULT_PRIME_COUNT if count is None else count
        seed = config.DEFAULT_PRIME_SEED if seed is None else seed
        if count not in (1, 2):
            raise InvalidInputError(f"Modular ring uses one or two primes, got {count}")
        return cls(RingKind.MODULAR, select_primes(count, seed))

    @property
    def is_exact(self) -> bool:
        return self.kind is RingKind.EXACT

    @property
    def channels(self) -> int:
        return 1 if self.is_exact else len(self.primes)

    @property
    def modulus(self) -> Optional[int]:
        if self.is_exact:
            return None
        m = 1
        for p in self.primes:
            m *= p
        return m

    @property
    def dtype(self):
        return object if self.is_exact else np.int64

    def zeros(self, shape) -> np.ndarray:
        shape = (self.channels,) + tuple(shape)
        if self.is_exact:
            out = np.empty(shape, dtype=object)
            out.fill(0)
            return out
        return np.zeros(shape, dtype=np.int64)

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        """Reduce an array whose leading axis is the channel axis"""
        if self.is_exact:
            return arr
        mods = np.array(self.primes, dtype=np.int64).reshape((-1,) + (1,) * (arr.ndim - 1))
        return arr % mods

    def describe(self) -> str:
        if self.is_exact:
            return "exact"
        return "mod " + ",".join(str(p) for p in self.primes)


def resolve_ring(length: int, choice: str = "auto", prime_count: int = None, prime_seed: int = None) -> Ring:
    """'auto' keeps exact integers up to Config.EXACT_RING_MAX_LENGTH"""
    if choice == "exact":
        return Ring.exact()
    if choice == "mod":
        return Ring.modular(prime_count, prime_seed)
    if choice != "auto":
        raise InvalidInputError(f"Unknown ring {choice!r}; expected auto, exact or mod")
    if length <= config.EXACT_RING_MAX_LENGTH:
        return Ring.exact()
    return Ring.modular(prime_count, prime_seed)


# ==================== PRIMES ====================

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    s, t = n - 1, 0
    while s % 2 == 0:
        s, t = s // 2, t + 1
    for a in _MR_BASES:
        x = pow(a % n, s, n)
        if x in (0, 1, n - 1):
            continue
        for _ in range(t - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def select_primes(count: int, seed: int) -> Tuple[int, ...]:
    """`count` distinct primes p = c*2**A + 1 with exactly PRIME_BITS bits, drawn from `seed`"""
    adicity = config.NTT_TWO_ADICITY
    lo = 1 << (config.PRIME_BITS - 1 - adicity)
    hi = 1 << (config.PRIME_BITS - adicity)
    rng = substream((seed, 0))
    found = []
    while len(found) < count:
        c = int(rng.integers(lo, hi))
        p = c * (1 << adicity) + 1
        if p not in found and is_prime(p):
            found.append(p)
    logger.debug(f"✓ Selected NTT primes {found}")
    return tuple(found)


@lru_cache(maxsize=None)
def _two_adic_root(p: int) -> int:
    """A primitive 2**A-th root of unity modulo p"""
    adicity = config.NTT_TWO_ADICITY
    cofactor = (p - 1) >> adicity
    for x in range(2, 1000):
        w = pow(x, cofactor, p)
        if pow(w, 1 << (adicity - 1), p) != 1:
            return w
    raise InternalError(f"No 2**{adicity}-th root of unity found modulo {p}")


# ==================== MODULAR KERNELS ====================

def mulmod(a: np.ndarray, b, p: int) -> np.ndarray:
    """Elementwise a*b mod p for residues in [0, p), p < 2**51"""
    q = np.floor(a.astype(np.float64) * np.asarray(b, dtype=np.float64) / float(p)).astype(np.int64)
    r = a * b - q * p  # wraps mod 2**64; the true value lies in [-p, 2p)
    r = np.where(r < 0, r + p, r)
    return np.where(r >= p, r - p, r)


@lru_cache(maxsize=None)
def _bit_reverse(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n, dtype=np.int64)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


@lru_cache(maxsize=64)
def _twiddles(p: int, n: int, invert: bool) -> np.ndarray:
    """Powers w^0 .. w^(n/2 - 1) of a primitive n-th root (or its inverse)"""
    w = pow(_two_adic_root(p), (1 << config.NTT_TWO_ADICITY) // n, p)
    if invert:
        w = pow(w, p - 2, p)
    table = np.ones(1, dtype=np.int64)
    while len(table) < n // 2:
        step = np.full(len(table), pow(w, len(table), p), dtype=np.int64)
        table = np.concatenate([table, mulmod(table, step, p)])
    return table


def ntt(a: np.ndarray, p: int, invert: bool = False, ops=None) -> np.ndarray:
    """Iterative radix-2 NTT along the last axis; batched over leading axes"""
    n = a.shape[-1]
    if n & (n - 1):
        raise InternalError(f"Transform size {n} is not a power of two")
    if n > (1 << config.NTT_TWO_ADICITY):
        raise InternalError(f"Transform size {n} exceeds 2**{config.NTT_TWO_ADICITY}")
    a = a[..., _bit_reverse(n)]
    table = _twiddles(p, n, invert)
    batch = a.size // n
    half = 1
    while half < n:
        tw = table[:: n // (2 * half)][:half]
        blocks = a.reshape(a.shape[:-1] + (n // (2 * half), 2, half))
        u = blocks[..., 0, :]
        v = mulmod(blocks[..., 1, :], tw, p)
        s = u + v
        s = np.where(s >= p, s - p, s)
        d = u - v
        d = np.where(d < 0, d + p, d)
        a = np.stack((s, d), axis=-2).reshape(a.shape)
        tally(ops, batch * (n // 2))
        half *= 2
    if invert:
        a = mulmod(a, np.int64(pow(n, p - 2, p)), p)
    return a


def transform_size(terms: int) -> int:
    size = 1
    while size < terms:
        size *= 2
    return size


# ==================== EXACT KERNELS ====================

def schoolbook(p: Sequence[int], q: Sequence[int], ops=None) -> list:
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    tally(ops, len(p) * len(q))
    return out


def kronecker(p: Sequence[int], q: Sequence[int], ops=None) -> list:
    """Exact product of non-negative integer polynomials via one big-integer multiply"""
    bound = max(p) * max(q) * min(len(p), len(q))
    width = bound.bit_length() // 8 + 1
    packed_p = int.from_bytes(b"".join(int(c).to_bytes(width, "little") for c in p), "little")
    packed_q = int.from_bytes(b"".join(int(c).to_bytes(width, "little") for c in q), "little")
    terms = len(p) + len(q) - 1
    raw = (packed_p * packed_q).to_bytes(width * terms, "little")
    tally(ops, (len(p) + len(q)) * (width // 8 + 1))
    return [int.from_bytes(raw[k * width:(k + 1) * width], "little") for k in range(terms)]


def exact_multiply(p: Sequence[int], q: Sequence[int], ops=None) -> list:
    p = [int(x) for x in p]
    q = [int(x) for x in q]
    if min(len(p), len(q)) <= config.SCHOOLBOOK_MAX_TERMS:
        return schoolbook(p, q, ops)
    return kronecker(p, q, ops)


def modular_multiply(p: Sequence[int], q: Sequence[int], prime: int, ops=None) -> np.ndarray:
    terms = len(p) + len(q) - 1
    n = transform_size(terms)
    fp = np.zeros(n, dtype=np.int64)
    fq = np.zeros(n, dtype=np.int64)
    fp[:len(p)] = [int(x) % prime for x in p]
    fq[:len(q)] = [int(x) % prime for x in q]
    prod = mulmod(ntt(fp, prime, ops=ops), ntt(fq, prime, ops=ops), prime)
    tally(ops, n)
    return ntt(prod, prime, invert=True, ops=ops)[:terms]


def poly_multiply(p: Sequence[int], q: Sequence[int], ring: Ring, ops=None) -> np.ndarray:
    """
    Convolution of two coefficient vectors in the active ring.

    Returns an array of shape (channels, len(p) + len(q) - 1): one row for
    the exact ring, one row of residues per prime for the modular ring.
    """
    if len(p) == 0 or len(q) == 0:
        raise InvalidInputError("Cannot multiply empty coefficient vectors")
    if ring.is_exact:
        out = ring.zeros((len(p) + len(q) - 1,))
        out[0, :] = exact_multiply(p, q, ops)
        return out
    return np.stack([modular_multiply(p, q, prime, ops) for prime in ring.primes])


def crt_combine(residues: Sequence[int], primes: Sequence[int]) -> int:
    """The value modulo prod(primes) matching every residue"""
    value, modulus = 0, 1
    for r, p in zip(residues, primes):
        t = (int(r) - value) * pow(modulus, -1, p) % p
        value += modulus * t
        modulus *= p
    return value % modulus
