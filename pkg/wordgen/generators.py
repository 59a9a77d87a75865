# wordgen/generators.py

"""
One-shot randomized generators.

Word i is always drawn from substream (master_seed, i), so the result is the
same for any thread count. Nothing is repaired or regenerated here; the
verify-and-retry loop lives in generate_verified.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional

from constraints.checks import passes, verify_all
from constraints.params import ConstraintParams
from core.config import config
from core.exceptions import InvalidInputError
from core.instrument import tally
from energy.extract import EnergyBounds, construct_strings
from energy.ladder import achievable_profile, build
from energy.ring import resolve_ring
from energy.table import GammaTable, free_energies
from wordgen.mapping import break_runs, gc_map, wrap
from wordgen.schemas import (
    EnergyDerived,
    GcPolicy,
    GenRequest,
    GenResult,
    Problem,
    binary_length,
    dna_length,
    runs_length,
)
from words.operations import derive_seed, seeded_word, substream
from words.schemas import Alphabet, Word, WordSet

logger = logging.getLogger(__name__)


def _draw(n: int, make: Callable[[int], Word], threads: int) -> List[Word]:
    if threads <= 1 or n == 1:
        return [make(i) for i in range(1, n + 1)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(make, range(1, n + 1)))


def fast_dwd_basic(n: int, params: ConstraintParams, seed: int, threads: int = 1, ops=None) -> GenResult:
    """n uniform DNA words of length 9·max{k, ⌈log₄ n⌉}"""
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    length = dna_length(n, params.k)

    def make(i: int) -> Word:
        tally(ops, length)
        return seeded_word(Alphabet.DNA, length, (seed, i))

    words = _draw(n, make, threads)
    return GenResult(
        problem=Problem.DWD123456,
        words=WordSet(words=tuple(words)),
        ell_base=length,
        final_length=length,
        k=params.k,
    )


def fast_dwd_gc(
    n: int,
    params: ConstraintParams,
    seed: int,
    policy: GcPolicy = GcPolicy.FIRST,
    threads: int = 1,
    ops=None,
) -> GenResult:
    """Binary words of length 10·max{k, ⌈log₂ n⌉}, GC-mapped to exactly ⌈γ·ℓ⌉ G/C"""
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    if params.gamma is None:
        raise InvalidInputError("fast_dwd_gc needs gamma")
    length = binary_length(n, params.k)

    def make(i: int) -> Word:
        tally(ops, 2 * length)
        binary = seeded_word(Alphabet.BINARY, length, (seed, i))
        return gc_map(binary, params.gamma, policy, substream((seed, i, 1)))

    words = _draw(n, make, threads)
    return GenResult(
        problem=Problem.DWD1234567,
        words=WordSet(words=tuple(words)),
        ell_base=length,
        final_length=length,
        k=params.k,
    )


def fast_dwd_runs(
    n: int,
    params: ConstraintParams,
    seed: int,
    policy: GcPolicy = GcPolicy.RUN_PRESERVING,
    threads: int = 1,
    ops=None,
) -> GenResult:
    """Binary words, break_runs, then GC mapping on the final length"""
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    if params.gamma is None or params.d is None:
        raise InvalidInputError("fast_dwd_runs needs gamma and d")
    k = max(params.k1, params.k2, params.k3)
    length = binary_length(n, k)
    final = runs_length(length, params.d)

    def make(i: int) -> Word:
        tally(ops, length + 2 * final)
        binary = seeded_word(Alphabet.BINARY, length, (seed, i))
        return gc_map(break_runs(binary, params.d), params.gamma, policy, substream((seed, i, 1)))

    words = _draw(n, make, threads)
    return GenResult(
        problem=Problem.DWD12378,
        words=WordSet(words=tuple(words)),
        ell_base=length,
        final_length=final,
        k=k,
    )


def fast_dwd_free_energy(
    n: int,
    params: ConstraintParams,
    table: GammaTable,
    seed: int,
    ring: str = "auto",
    prime_count: int = None,
    prime_seed: int = None,
    threads: int = 1,
    ops=None,
) -> GenResult:
    """
    Basic words, padded with ⊗ to a common energy band when their free
    energies spread more than 3D. Output passes C9 with σ = 4D + Γmax.
    """
    base = fast_dwd_basic(n, params, seed, threads, ops)
    ws = base.words
    length = base.ell_base
    energies = free_energies(ws.codes(), table)
    w_max, w_min = int(energies.max()), int(energies.min())
    D, gamma_max = table.D, table.gamma_max
    sigma = 4 * D + gamma_max

    if D == 0 or w_max - w_min <= 3 * D:
        logger.info(f"✓ Energy spread {w_max - w_min} <= 3D={3 * D}; no padding needed")
        derived = EnergyDerived(padded=False, D=D, gamma_max=gamma_max, w_max=w_max, w_min=w_min, sigma=sigma)
        return base.model_copy(update={"problem": Problem.DWD1234569, "derived": derived})

    m = 2 * length
    active = resolve_ring(m, ring, prime_count, prime_seed)
    logger.info(f"🔄 Energy spread {w_max - w_min} > 3D={3 * D}; padding with length-{m} strings ({active.describe()})")
    ladder = build(m, table, active, ops)
    profile = achievable_profile(ladder)
    alpha = w_max + profile.e_min
    beta = alpha + profile.delta
    bounds = EnergyBounds(
        lower=tuple(int(alpha - e) for e in energies),
        upper=tuple(int(beta - e) for e in energies),
        length=m,
    )
    pads = construct_strings(bounds, ladder, ops=ops)
    words = [wrap(s, pad) for s, pad in zip(ws.words, pads)]
    tally(ops, n * 3 * length)

    derived = EnergyDerived(
        padded=True,
        D=D,
        gamma_max=gamma_max,
        w_max=w_max,
        w_min=w_min,
        sigma=sigma,
        m=m,
        e_min=profile.e_min,
        delta=profile.delta,
        alpha=alpha,
        beta=beta,
        ring=active.describe(),
    )
    return GenResult(
        problem=Problem.DWD1234569,
        words=WordSet(words=tuple(words)),
        ell_base=length,
        final_length=3 * length,
        k=params.k,
        derived=derived,
    )


def generate(request: GenRequest, threads: int = None, ops=None) -> GenResult:
    """Dispatch a request to its generator"""
    threads = config.DEFAULT_THREADS if threads is None else threads
    p, seed = request.params, request.master_seed
    if request.problem is Problem.DWD123456:
        result = fast_dwd_basic(request.n, p, seed, threads, ops)
    elif request.problem is Problem.DWD1234567:
        result = fast_dwd_gc(request.n, p, seed, request.gc_policy or GcPolicy.FIRST, threads, ops)
    elif request.problem is Problem.DWD12378:
        result = fast_dwd_runs(request.n, p, seed, request.gc_policy or GcPolicy.RUN_PRESERVING, threads, ops)
    else:
        result = fast_dwd_free_energy(
            request.n, p, request.table, seed,
            ring=request.ring,
            prime_count=request.prime_count,
            prime_seed=request.prime_seed,
            threads=threads,
            ops=ops,
        )
    logger.info(f"✓ Generated {result.words.n} words: {result.summary()}")
    return result


def verification_params(request: GenRequest, result: GenResult) -> ConstraintParams:
    """Request thresholds, with σ filled in from the energy path"""
    if result.derived is None:
        return request.params
    return request.params.model_copy(update={"sigma": result.derived.sigma})


def verify_result(request: GenRequest, result: GenResult, include_diagonal: bool = False):
    return verify_all(
        result.words,
        verification_params(request, result),
        request.table,
        result.advertised(),
        include_diagonal=include_diagonal,
    )


def generate_verified(request: GenRequest, retries: int = 0, threads: int = None, ops=None):
    """
    Generate, verify the advertised constraints, and on failure retry with
    derived seeds. Returns (result, reports, attempts); the last attempt is
    returned even when it fails.
    """
    attempt = 0
    current = request
    while True:
        result = generate(current, threads, ops)
        reports = verify_result(current, result)
        if passes(reports) or attempt >= retries:
            if not passes(reports):
                logger.warning(f"⚠️ Constraints still violated after {attempt + 1} attempt(s)")
            return result, reports, attempt + 1
        attempt += 1
        seed = derive_seed(request.master_seed, attempt)
        logger.info(f"🔄 Retry {attempt}/{retries} with derived seed {seed}")
        current = request.model_copy(update={"master_seed": seed})
