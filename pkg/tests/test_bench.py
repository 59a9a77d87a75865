# tests/test_bench.py

import pandas as pd
import pytest

from energy.ring import Ring
from energy.table import GammaTable
from services.bench import (
    COLUMNS,
    fit_slopes,
    powers_of_two,
    run_counting,
    run_extraction,
    run_generation,
    sample_energies,
)
from energy.ladder import build
from wordgen.schemas import Problem


@pytest.mark.unit
class TestBenchSuites:
    """Shape of the benchmark frames"""

    def test_powers_of_two(self):
        """Inclusive exponent range"""
        assert powers_of_two(3, 6) == [8, 16, 32, 64]

    def test_counting_frame(self, synthetic_table):
        """One fft and one dp row per L, positive op counts"""
        frame = run_counting([8, 16], synthetic_table)
        assert list(frame.columns) == COLUMNS
        assert len(frame) == 4
        assert (frame["ops"] > 0).all()
        assert set(frame["param2"]) == {synthetic_table.gamma_max}

    def test_generation_frame(self, synthetic_table):
        """param2 is the final word length"""
        frame = run_generation([4, 16], [2], [Problem.DWD123456, Problem.DWD12378], synthetic_table)
        basic = frame[frame["engine"] == "basic"]
        runs = frame[frame["engine"] == "runs"]
        assert basic["param2"].tolist() == [18, 18]
        assert runs["param2"].tolist() == [29, 59]

    def test_generation_sweeps_k(self, synthetic_table):
        """Rows for every (k, n) pair, k outermost"""
        frame = run_generation([4, 16], [1, 3], [Problem.DWD123456], synthetic_table)
        assert frame["param1"].tolist() == [4, 16, 4, 16]
        assert frame["param2"].tolist() == [9, 18, 27, 27]

    def test_sample_energies_spread(self, synthetic_table):
        """Samples cover the achievable range end to end"""
        ladder = build(12, synthetic_table)
        picks = sample_energies(ladder, 5)
        achievable = ladder.achievable()
        assert len(picks) == 5
        assert picks[0] == achievable[0] and picks[-1] == achievable[-1]

    def test_extraction_frame(self, synthetic_table):
        """param2 is the number of extract calls"""
        frame = run_extraction([16], synthetic_table, calls=6)
        assert sorted(frame["engine"]) == ["scan", "witness"]
        assert set(frame["param2"]) == {6}


@pytest.mark.unit
class TestSlopes:
    """Log-log fitting"""

    def test_exact_power_law(self):
        """ops = L^2 fits slope 2"""
        rows = [("counting", L, 4, "dp", L * L, 1) for L in (16, 32, 64, 128)]
        slopes = fit_slopes(pd.DataFrame(rows, columns=COLUMNS))
        assert slopes["slope"].iloc[0] == pytest.approx(2.0)

    def test_generation_uses_total_symbols(self):
        """Generation is fitted against n·ℓ"""
        rows = [("generation", n, 9 * n, "basic", n * 9 * n, 1) for n in (2, 4, 8, 16)]
        slopes = fit_slopes(pd.DataFrame(rows, columns=COLUMNS))
        assert slopes["slope"].iloc[0] == pytest.approx(1.0)

    def test_single_point_skipped(self):
        """A lone row has no slope"""
        frame = pd.DataFrame([("counting", 8, 4, "fft", 100, 1)], columns=COLUMNS)
        assert fit_slopes(frame).empty


@pytest.mark.slow
class TestGrowthRates:
    """Instrumented operation counts grow at the expected rates"""

    def test_build_against_dp(self, synthetic_table):
        """Build stays near L log L while the DP is quadratic"""
        frame = run_counting(powers_of_two(8, 14), synthetic_table, Ring.modular())
        fitted = fit_slopes(frame)
        slopes = dict(zip(fitted["engine"], fitted["slope"]))
        assert slopes["fft"] <= 1.25
        assert slopes["dp"] >= 1.8

    def test_witness_beats_scan(self, synthetic_table):
        """Indexed extraction is cheaper at L = 1024"""
        frame = run_extraction([1024], synthetic_table, calls=8)
        ops = dict(zip(frame["engine"], frame["ops"]))
        assert ops["witness"] < ops["scan"]

    def test_generation_near_linear(self):
        """Basic generation ops grow linearly in n·ℓ"""
        frame = run_generation(powers_of_two(4, 10), [2], [Problem.DWD123456], GammaTable.synthetic())
        slope = fit_slopes(frame)["slope"].iloc[0]
        assert 0.9 <= slope <= 1.1
