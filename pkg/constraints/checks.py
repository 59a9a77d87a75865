# constraints/checks.py

"""
Naive verifiers for C1..C9.

Pairwise Hamming distances come from one-hot matrix products, so the
O(n²ℓ) and O(n²ℓ²) quantifier expansions run as a handful of BLAS calls.
Offsets whose relaxed threshold k - (ℓ - i) is <= 0 cannot fail and are
skipped.
"""

import logging
from itertools import groupby
from typing import Iterable, List, Optional

import numpy as np

from constraints.params import ConstraintParams, gc_target
from constraints.report import ConstraintId, Offender, ViolationReport
from core.exceptions import InvalidInputError
from energy.table import GammaTable, free_energies
from words.schemas import Alphabet, WordSet

logger = logging.getLogger(__name__)


def _one_hot(codes: np.ndarray, size: int) -> np.ndarray:
    n, m = codes.shape
    return (codes[:, :, None] == np.arange(size)).reshape(n, m * size).astype(np.float64)


def mismatch_matrix(left: np.ndarray, right: np.ndarray, size: int) -> np.ndarray:
    """M[y, x] = H(left[y], right[x]) for two (n, m) code arrays"""
    m = left.shape[1]
    matches = _one_hot(left, size) @ _one_hot(right, size).T
    return m - np.rint(matches).astype(np.int64)


def _rc(codes: np.ndarray, alphabet: Alphabet) -> np.ndarray:
    return alphabet.complement_codes(codes[:, ::-1])


def _pair_offenders(dist: np.ndarray, threshold: int, offset=None, side=None, diagonal=False, symmetric=False):
    """Pairs (y, x) with dist < threshold; a symmetric distance reports each pair once as y < x"""
    mask = dist < threshold
    if symmetric:
        mask = np.triu(mask)
    if not diagonal:
        np.fill_diagonal(mask, False)
    for y, x in np.argwhere(mask):
        yield Offender(
            pair=(int(y) + 1, int(x) + 1),
            offset=offset,
            observed=int(dist[y, x]),
            required=int(threshold),
            side=side,
        )


def _word_offenders(dist: np.ndarray, threshold: int, offset=None, side=None):
    for y in np.flatnonzero(dist < threshold):
        yield Offender(word=int(y) + 1, offset=offset, observed=int(dist[y]), required=int(threshold), side=side)


def _active_offsets(length: int, k: int) -> Iterable[int]:
    """Offsets i in 1..ℓ where k - (ℓ - i) > 0"""
    return range(max(1, length - k + 1), length + 1)


# ==================== HAMMING FAMILY ====================

def verify_basic_hamming(ws: WordSet, k1: int) -> ViolationReport:
    """C1 over unordered pairs of distinct members"""
    dist = mismatch_matrix(ws.codes(), ws.codes(), ws.alphabet.size)
    return ViolationReport.of(ConstraintId.C1, _pair_offenders(dist, k1, symmetric=True))


def verify_rc_hamming(ws: WordSet, k2: int, include_diagonal: bool = False) -> ViolationReport:
    """
    C2: H(Y, X^RC) >= k2 for pairs of distinct members; Y = X only when asked.
    H(Y, X^RC) = H(X, Y^RC), so each pair is reported once.
    """
    codes = ws.codes()
    dist = mismatch_matrix(codes, _rc(codes, ws.alphabet), ws.alphabet.size)
    return ViolationReport.of(ConstraintId.C2, _pair_offenders(dist, k2, diagonal=include_diagonal, symmetric=True))


def verify_self_complementary(ws: WordSet, k3: int) -> ViolationReport:
    codes = ws.codes()
    dist = (codes != _rc(codes, ws.alphabet)).sum(axis=1)
    return ViolationReport.of(ConstraintId.C3, _word_offenders(dist, k3))


def verify_shifting_hamming(ws: WordSet, k4: int) -> ViolationReport:
    """C4: H(Y[1..i], X[ℓ-i+1..ℓ]) >= k4 - (ℓ - i) for ordered pairs and every i"""
    codes, length, size = ws.codes(), ws.length, ws.alphabet.size
    offenders: List[Offender] = []
    for i in _active_offsets(length, k4):
        dist = mismatch_matrix(codes[:, :i], codes[:, length - i:], size)
        offenders.extend(_pair_offenders(dist, k4 - (length - i), offset=i))
    return ViolationReport.of(ConstraintId.C4, offenders)


def verify_shifting_rc(ws: WordSet, k5: int) -> ViolationReport:
    """C5: prefix and suffix alignments against the reverse complement of the same span of X"""
    codes, length, size = ws.codes(), ws.length, ws.alphabet.size
    offenders: List[Offender] = []
    for i in _active_offsets(length, k5):
        required = k5 - (length - i)
        prefix, suffix = codes[:, :i], codes[:, length - i:]
        dist = mismatch_matrix(prefix, _rc(prefix, ws.alphabet), size)
        offenders.extend(_pair_offenders(dist, required, offset=i, side="prefix", symmetric=True))
        dist = mismatch_matrix(suffix, _rc(suffix, ws.alphabet), size)
        offenders.extend(_pair_offenders(dist, required, offset=i, side="suffix", symmetric=True))
    return ViolationReport.of(ConstraintId.C5, offenders)


def verify_shifting_self(ws: WordSet, k6: int) -> ViolationReport:
    codes, length = ws.codes(), ws.length
    offenders: List[Offender] = []
    for i in _active_offsets(length, k6):
        required = k6 - (length - i)
        for side, span in (("prefix", codes[:, :i]), ("suffix", codes[:, length - i:])):
            dist = (span != _rc(span, ws.alphabet)).sum(axis=1)
            offenders.extend(_word_offenders(dist, required, offset=i, side=side))
    return ViolationReport.of(ConstraintId.C6, offenders)


# ==================== COMPOSITION ====================

def verify_gc_content(ws: WordSet, gamma: float) -> ViolationReport:
    """C7: every member has exactly ⌈γ·ℓ⌉ characters in {G, C}"""
    if ws.alphabet is not Alphabet.DNA:
        raise InvalidInputError("GC content is defined on DNA words only")
    if not 0 <= gamma <= 1:
        raise InvalidInputError(f"gamma must lie in [0, 1], got {gamma}")
    target = gc_target(gamma, ws.length)
    codes = ws.codes()
    gc = ((codes == 1) | (codes == 2)).sum(axis=1)
    offenders = [
        Offender(word=int(y) + 1, observed=int(gc[y]), required=target)
        for y in np.flatnonzero(gc != target)
    ]
    return ViolationReport.of(ConstraintId.C7, offenders)


def verify_runs(ws: WordSet, d: int) -> ViolationReport:
    """C8: no run of one repeated character longer than d; reports each run with its start"""
    if d is None or d < 2:
        raise InvalidInputError(f"d must be >= 2, got {d}")
    offenders = []
    for index, word in enumerate(ws.words, start=1):
        start = 1
        for _, group in groupby(word.symbols):
            run = len(list(group))
            if run > d:
                offenders.append(Offender(word=index, offset=start, observed=run, required=d))
            start += run
    return ViolationReport.of(ConstraintId.C8, offenders)


def verify_free_energy(ws: WordSet, sigma: int, table: GammaTable) -> ViolationReport:
    """C9: max FE - min FE <= sigma; a violation names (argmax, argmin)"""
    if ws.alphabet is not Alphabet.DNA:
        raise InvalidInputError("Free energy is defined on DNA words only")
    energies = free_energies(ws.codes(), table)
    hi, lo = int(np.argmax(energies)), int(np.argmin(energies))
    spread = int(energies[hi] - energies[lo])
    offenders = []
    if spread > sigma:
        offenders.append(Offender(pair=(hi + 1, lo + 1), observed=spread, required=int(sigma)))
    return ViolationReport.of(ConstraintId.C9, offenders)


# ==================== AGGREGATE ====================

def verify_all(
    ws: WordSet,
    params: ConstraintParams,
    table: Optional[GammaTable] = None,
    selection: Iterable = (),
    include_diagonal: bool = False,
) -> List[ViolationReport]:
    """One report per selected constraint, in C1..C9 order"""
    selected = sorted({ConstraintId(c) for c in selection}, key=lambda c: int(c.value[1:]))
    if not selected:
        raise InvalidInputError("Select at least one constraint to verify")

    reports = []
    for cid in selected:
        if cid is ConstraintId.C1:
            reports.append(verify_basic_hamming(ws, params.k1))
        elif cid is ConstraintId.C2:
            reports.append(verify_rc_hamming(ws, params.k2, include_diagonal))
        elif cid is ConstraintId.C3:
            reports.append(verify_self_complementary(ws, params.k3))
        elif cid is ConstraintId.C4:
            reports.append(verify_shifting_hamming(ws, params.k4))
        elif cid is ConstraintId.C5:
            reports.append(verify_shifting_rc(ws, params.k5))
        elif cid is ConstraintId.C6:
            reports.append(verify_shifting_self(ws, params.k6))
        elif cid is ConstraintId.C7:
            if params.gamma is None:
                raise InvalidInputError("C7 needs gamma")
            reports.append(verify_gc_content(ws, params.gamma))
        elif cid is ConstraintId.C8:
            reports.append(verify_runs(ws, params.d))
        else:
            if params.sigma is None or table is None:
                raise InvalidInputError("C9 needs sigma and a Γ table")
            reports.append(verify_free_energy(ws, params.sigma, table))

    failed = [r for r in reports if not r.passed]
    for r in failed:
        logger.info(f"⚠️ {r.constraint_id.value} ({r.label}): {len(r.offenders)} violation(s)")
    if not failed:
        logger.info(f"✓ {len(reports)} constraint(s) hold over {ws.n} words")
    return reports


def passes(reports: List[ViolationReport]) -> bool:
    return all(r.passed for r in reports)
