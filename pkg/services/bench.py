# services/bench.py

"""
Benchmark suites. Each returns a DataFrame with the fixed columns
suite, param1, param2, engine, ops, nanos; `ops` comes from OpCounter so
growth rates can be fitted without relying on wall time.
"""

import logging
import time
from typing import Iterable, List, Optional

import numpy as np
import pandas as pd

from constraints.params import ConstraintParams
from core.config import config
from core.instrument import OpCounter
from energy.extract import extract, slow_build
from energy.ladder import build, count_dp
from energy.ring import Ring
from energy.table import GammaTable
from wordgen.generators import generate
from wordgen.schemas import GenRequest, Problem

logger = logging.getLogger(__name__)

COLUMNS = ["suite", "param1", "param2", "engine", "ops", "nanos"]


def powers_of_two(min_exp: int = None, max_exp: int = None) -> List[int]:
    min_exp = config.BENCH_MIN_EXP if min_exp is None else min_exp
    max_exp = config.BENCH_MAX_EXP if max_exp is None else max_exp
    return [1 << e for e in range(min_exp, max_exp + 1)]


def _timed(fn):
    ops = OpCounter()
    start = time.perf_counter_ns()
    fn(ops)
    return ops.total, time.perf_counter_ns() - start


def run_counting(lengths: Iterable[int], table: GammaTable, ring: Optional[Ring] = None) -> pd.DataFrame:
    """Ladder build against the one-character-at-a-time DP, in the same ring"""
    ring = ring or Ring.modular()
    rows = []
    for L in lengths:
        ops, nanos = _timed(lambda c: build(L, table, ring, c))
        rows.append(("counting", L, table.gamma_max, "fft", ops, nanos))
        ops, nanos = _timed(lambda c: count_dp(L, table, ring, c))
        rows.append(("counting", L, table.gamma_max, "dp", ops, nanos))
        logger.info(f"✓ counting L={L}")
    return pd.DataFrame(rows, columns=COLUMNS)


def run_generation(
    sizes: Iterable[int],
    ks: Iterable[int],
    problems: Iterable[Problem],
    table: GammaTable,
    seed: int = 0,
    gamma: float = 0.5,
    d: int = 3,
) -> pd.DataFrame:
    """Every (n, k) per problem; param1 = n, param2 = final word length"""
    rows = []
    sizes, ks = list(sizes), list(ks)
    for problem in problems:
        for k in ks:
            params = ConstraintParams.uniform(k, gamma=gamma, d=d)
            for n in sizes:
                request = GenRequest(n=n, params=params, master_seed=seed, problem=problem, table=table)
                holder = {}
                ops, nanos = _timed(lambda c: holder.setdefault("result", generate(request, ops=c)))
                rows.append(("generation", n, holder["result"].final_length, problem.value, ops, nanos))
        logger.info(f"✓ generation {problem.value}")
    return pd.DataFrame(rows, columns=COLUMNS)


def sample_energies(ladder, calls: int) -> List[int]:
    achievable = ladder.achievable()
    picks = np.linspace(0, len(achievable) - 1, num=min(calls, len(achievable))).round().astype(int)
    return [int(achievable[i]) for i in picks]


def run_extraction(lengths: Iterable[int], table: GammaTable, calls: int = None, ring: Optional[Ring] = None) -> pd.DataFrame:
    """Mean ops and nanos per extract call, with and without the witness index"""
    calls = config.BENCH_EXTRACT_CALLS if calls is None else calls
    ring = ring or Ring.modular()
    rows = []
    for L in lengths:
        ladder = build(L, table, ring)
        witness = slow_build(ladder)
        energies = sample_energies(ladder, calls)
        for engine, index in (("witness", witness), ("scan", None)):
            ops, nanos = _timed(lambda c: [extract(e, ladder, index, ops=c) for e in energies])
            rows.append(("extraction", L, len(energies), engine, ops // len(energies), nanos // len(energies)))
        logger.info(f"✓ extraction L={L}")
    return pd.DataFrame(rows, columns=COLUMNS)


def fit_slopes(frame: pd.DataFrame) -> pd.DataFrame:
    """
    Log-log slope of ops per (suite, engine). Generation is fitted against
    n·ℓ, the other suites against param1.
    """
    out = []
    for (suite, engine), group in frame.groupby(["suite", "engine"], sort=True):
        x = group["param1"].astype(float)
        if suite == "generation":
            x = x * group["param2"].astype(float)
        if len(group) < 2 or x.nunique() < 2:
            continue
        slope, _ = np.polyfit(np.log(x), np.log(group["ops"].astype(float)), 1)
        out.append((suite, engine, float(slope)))
    return pd.DataFrame(out, columns=["suite", "engine", "slope"])
