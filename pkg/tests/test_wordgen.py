# tests/test_wordgen.py

from itertools import product

import numpy as np
import pytest
from pydantic import ValidationError

from constraints.checks import verify_free_energy, verify_gc_content, verify_runs
from constraints.params import ConstraintParams, gc_target
from core.exceptions import InvalidInputError
from energy.table import free_energies
from tests import oracles
from tests.conftest import aa_table
from wordgen.generators import fast_dwd_basic, fast_dwd_free_energy, fast_dwd_gc, fast_dwd_runs, generate
from wordgen.mapping import break_runs, gc_map, wrap
from wordgen.schemas import (
    GcPolicy,
    GenRequest,
    Problem,
    binary_length,
    break_runs_inserts,
    ceil_log,
    dna_length,
    runs_length,
)
from words.operations import hamming, reverse_complement, seeded_word
from words.schemas import Alphabet, Word


def bits(text: str) -> Word:
    return Word(alphabet=Alphabet.BINARY, symbols=text)


def all_binary(length: int) -> np.ndarray:
    return np.array(list(product((0, 1), repeat=length)), dtype=np.uint8)


def broken(codes: np.ndarray, d: int) -> np.ndarray:
    return np.stack([break_runs(Word.from_codes(Alphabet.BINARY, row), d).codes() for row in codes])


def pair_distances(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    return (left[:, None, :] != right[None, :, :]).sum(axis=-1)


@pytest.mark.unit
class TestLengthFormulas:
    """ℓ = 9·max{k, ⌈log₄ n⌉} and 10·max{k, ⌈log₂ n⌉}"""

    def test_ceil_log_conventions(self):
        """⌈log 1⌉ = 0 and exact powers are not rounded up"""
        assert ceil_log(4, 1) == 0
        assert ceil_log(2, 1) == 0
        assert ceil_log(4, 16) == 2
        assert ceil_log(4, 17) == 3
        assert ceil_log(2, 1024) == 10

    def test_documented_values(self):
        """Values quoted for the generators"""
        assert dna_length(1, 1) == 9
        assert dna_length(16, 2) == 18
        assert dna_length(100, 4) == 36
        assert binary_length(2, 1) == 10
        assert binary_length(1024, 3) == 100
        assert runs_length(20, 2) == 39

    def test_formula_grid(self):
        """Every (n, k) in {2^0..2^20} x {0..64}"""
        for j in range(21):
            n = 1 << j
            for k in range(65):
                assert dna_length(n, k) == 9 * max(k, (j + 1) // 2, 1)
                assert binary_length(n, k) == 10 * max(k, j, 1)

    def test_runs_length_formula(self):
        """ℓ + 2(⌈ℓ/(2(d-1))⌉ - 1) + 1"""
        for length in range(1, 80):
            for d in range(2, 7):
                t = -(-length // (2 * (d - 1))) - 1
                assert break_runs_inserts(length, d) == t
                assert runs_length(length, d) == length + 2 * t + 1


@pytest.mark.unit
class TestGcMap:
    """Binary to DNA with an exact GC count"""

    def test_first_policy(self):
        """0101 at γ = 0.5 maps the first two positions to G/C"""
        assert gc_map(bits("0101"), 0.5).symbols == "GCAT"

    def test_all_gc(self):
        """γ = 1 maps everything to G/C"""
        assert gc_map(bits("0000"), 1).symbols == "GGGG"

    def test_no_gc(self):
        """γ = 0 maps everything to A/T"""
        assert gc_map(bits("0101"), 0).symbols == "ATAT"

    def test_run_preserving_choice(self):
        """Every other character of a run goes to G/C first"""
        assert gc_map(bits("0011"), 0.5, GcPolicy.RUN_PRESERVING).symbols == "GACT"

    @pytest.mark.parametrize("policy", list(GcPolicy))
    def test_exact_gc_count(self, policy, rng):
        """Every policy hits ⌈γ·ℓ⌉ exactly"""
        for gamma in (0.0, 0.1, 0.35, 0.5, 0.77, 1.0):
            word = Word.from_codes(Alphabet.BINARY, rng.integers(0, 2, 31))
            mapped = gc_map(word, gamma, policy, np.random.default_rng(1))
            assert sum(c in "GC" for c in mapped.symbols) == gc_target(gamma, 31)

    def test_random_policy_needs_stream(self):
        """The random policy cannot run without a generator"""
        with pytest.raises(InvalidInputError):
            gc_map(bits("0101"), 0.5, GcPolicy.RANDOM)

    @pytest.mark.parametrize("policy", list(GcPolicy))
    def test_mismatch_preservation(self, policy, rng):
        """Different bits always map to different bases"""
        for _ in range(200):
            x = Word.from_codes(Alphabet.BINARY, rng.integers(0, 2, 24))
            y = Word.from_codes(Alphabet.BINARY, rng.integers(0, 2, 24))
            mx = gc_map(x, 0.5, policy, np.random.default_rng(3))
            my = gc_map(y, 0.5, policy, np.random.default_rng(4))
            assert hamming(mx, my) >= hamming(x, y)
            assert hamming(mx, reverse_complement(my)) >= hamming(x, reverse_complement(y))


@pytest.mark.unit
class TestBreakRuns:
    """Run breaking by complement insertion"""

    def test_all_zero_d2(self):
        """000000 with d = 2"""
        assert break_runs(bits("000000"), 2).symbols == "01010101010"

    def test_mid_insert_only(self):
        """t = 0 leaves only the middle insert"""
        assert break_runs(bits("0000"), 4).symbols == "00100"

    def test_length_one(self):
        """A single character gets one complement next to it"""
        assert break_runs(bits("0"), 2).symbols == "10"

    def test_rejects_dna(self):
        """Only binary words are accepted"""
        with pytest.raises(InvalidInputError):
            break_runs(Word.parse("ACGT"), 2)

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_exhaustive_runs_and_length(self, d):
        """Every binary word of length <= 12: max run <= d and the length formula"""
        for length in range(1, 13):
            for row in all_binary(length):
                out = break_runs(Word.from_codes(Alphabet.BINARY, row), d).symbols
                assert len(out) == runs_length(length, d)
                assert oracles.max_run(out) <= d, (row, d, out)

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_exhaustive_monotonicity(self, d):
        """H(X,Y) <= H(X',Y') for every pair; H(X,Y^RC) <= H(X',Y'^RC) for even ℓ"""
        for length in range(1, 11):
            x = all_binary(length)
            xb = broken(x, d)
            assert np.all(pair_distances(x, x) <= pair_distances(xb, xb))
            if length % 2 == 0:
                rc, rcb = 1 - x[:, ::-1], 1 - xb[:, ::-1]
                assert np.all(pair_distances(x, rc) <= pair_distances(xb, rcb))

    @pytest.mark.slow
    @pytest.mark.parametrize("length", [16, 32, 64])
    def test_random_pairs(self, length, rng):
        """10^4 random pairs per even length"""
        for d in (2, 3, 4):
            x = rng.integers(0, 2, size=(10_000, length)).astype(np.uint8)
            y = rng.integers(0, 2, size=(10_000, length)).astype(np.uint8)
            xb, yb = broken(x, d), broken(y, d)
            assert np.all((x != y).sum(1) <= (xb != yb).sum(1))
            assert np.all((x != 1 - y[:, ::-1]).sum(1) <= (xb != 1 - yb[:, ::-1]).sum(1))

    @pytest.mark.parametrize("policy", list(GcPolicy))
    def test_gc_map_keeps_runs_bounded(self, policy, rng):
        """DNA runs never exceed the binary runs gc_map starts from"""
        for _ in range(300):
            d = int(rng.integers(2, 5))
            x = Word.from_codes(Alphabet.BINARY, rng.integers(0, 2, int(rng.integers(1, 40))))
            mapped = gc_map(break_runs(x, d), float(rng.random()), policy, np.random.default_rng(9))
            assert oracles.max_run(mapped.symbols) <= d


@pytest.mark.unit
class TestWrap:
    """X⊗Y"""

    def test_examples(self):
        """Halves of Y around X"""
        assert wrap(Word.parse("AA"), Word.parse("CG")).symbols == "CAAG"
        assert wrap(Word.parse("T"), Word.parse("AAAA")).symbols == "AATAA"

    def test_odd_outer_rejected(self):
        """Y must have even length"""
        with pytest.raises(InvalidInputError):
            wrap(Word.parse("ACGT"), Word.parse("ACG"))

    def test_empty_outer_rejected(self):
        """An empty Y cannot even be constructed"""
        with pytest.raises(ValidationError):
            wrap(Word.parse("ACGT"), Word(alphabet=Alphabet.DNA, symbols=""))


@pytest.mark.unit
class TestGenerators:
    """Shapes, determinism and construction guarantees"""

    def test_basic_single_word(self):
        """n = 1, k = 1 gives one word of length 9"""
        result = fast_dwd_basic(1, ConstraintParams.uniform(1), seed=0)
        assert result.words.n == 1 and result.final_length == 9 and len(result.words[0]) == 9

    def test_basic_sixteen_words(self):
        """n = 16, k = 2 gives length 18"""
        result = fast_dwd_basic(16, ConstraintParams.uniform(2), seed=7)
        assert result.words.n == 16 and result.words.length == 18

    def test_basic_uses_word_substreams(self):
        """Word i is seeded_word(DNA, ℓ, (seed, i))"""
        result = fast_dwd_basic(3, ConstraintParams.uniform(2), seed=5)
        assert result.words[2] == seeded_word(Alphabet.DNA, 18, (5, 3))

    @pytest.mark.parametrize("gamma", [0.0, 0.3, 0.5, 1.0])
    def test_gc_exact_count(self, gamma):
        """n = 2, k = 1: length 10 and exactly ⌈10γ⌉ G/C"""
        result = fast_dwd_gc(2, ConstraintParams.uniform(1, gamma=gamma), seed=3)
        assert result.words.length == 10
        assert verify_gc_content(result.words, gamma).passed

    def test_gc_length_for_large_n(self):
        """n = 1024, k = 3 gives length 100"""
        result = fast_dwd_gc(1024, ConstraintParams.uniform(3, gamma=0.5), seed=1)
        assert result.words.length == 100

    def test_runs_shape_and_guarantees(self):
        """n = 2, k = 2, d = 2: binary 20, final 39, C7 and C8 hold"""
        result = fast_dwd_runs(2, ConstraintParams(k1=2, k2=2, k3=2, gamma=0.5, d=2), seed=11)
        assert result.ell_base == 20 and result.final_length == 39
        assert verify_runs(result.words, 2).passed
        assert verify_gc_content(result.words, 0.5).passed

    @pytest.mark.parametrize("policy", list(GcPolicy))
    def test_runs_every_policy(self, policy):
        """C8 survives GC mapping with any position policy"""
        params = ConstraintParams(k1=3, k2=3, k3=3, gamma=0.4, d=3)
        result = fast_dwd_runs(40, params, seed=2, policy=policy)
        assert verify_runs(result.words, 3).passed
        assert verify_gc_content(result.words, 0.4).passed

    @pytest.mark.parametrize("problem", list(Problem))
    def test_deterministic_across_threads(self, problem, synthetic_table):
        """Same request, same words, for 1 and 8 threads"""
        request = GenRequest(
            n=30,
            params=ConstraintParams.uniform(3, gamma=0.5, d=3),
            master_seed=99,
            problem=problem,
            table=synthetic_table,
        )
        one = generate(request, threads=1)
        again = generate(request, threads=1)
        eight = generate(request, threads=8)
        assert one.words.strings() == again.words.strings() == eight.words.strings()

    def test_request_needs_table_for_energy(self):
        """The energy problem requires a Γ table"""
        with pytest.raises(ValidationError):
            GenRequest(n=2, params=ConstraintParams.uniform(1), master_seed=0, problem=Problem.DWD1234569)

    def test_request_needs_d_for_runs(self):
        """The runs problem requires d"""
        with pytest.raises(ValidationError):
            GenRequest(n=2, params=ConstraintParams.uniform(1, gamma=0.5), master_seed=0, problem=Problem.DWD12378)


@pytest.mark.integration
class TestFreeEnergyPath:
    """Padding with ⊗ to a common energy band"""

    def test_degenerate_table_short_circuits(self, equal_table):
        """D = 0: words returned unchanged"""
        params = ConstraintParams.uniform(2)
        basic = fast_dwd_basic(16, params, seed=4)
        result = fast_dwd_free_energy(16, params, equal_table, seed=4)
        assert result.words.strings() == basic.words.strings()
        assert result.final_length == 18
        assert result.derived.padded is False
        assert result.derived.sigma == 1

    def test_padding_branch_bounds(self, synthetic_table):
        """Padded words satisfy α - D <= FE <= β + D + Γmax and C9(4D + Γmax)"""
        result = fast_dwd_free_energy(100, ConstraintParams.uniform(4), synthetic_table, seed=8)
        e = result.derived
        assert e.padded is True
        assert result.final_length == 3 * result.ell_base == 108
        assert e.m == 72
        energies = free_energies(result.words.codes(), synthetic_table)
        assert energies.min() >= e.alpha - e.D
        assert energies.max() <= e.beta + e.D + e.gamma_max
        assert energies.max() - energies.min() <= e.delta + 2 * e.D + e.gamma_max
        assert e.delta < 2 * e.D
        assert verify_free_energy(result.words, e.sigma, synthetic_table).passed

    @pytest.mark.parametrize("seed", range(5))
    def test_aa_table_passes_c9(self, seed):
        """n = 50, k = 3 with Γ[A][A] = 4, else 1"""
        table = aa_table(4)
        result = fast_dwd_free_energy(50, ConstraintParams.uniform(3), table, seed=seed)
        sigma = 4 * table.D + table.gamma_max
        assert result.derived.sigma == sigma
        assert verify_free_energy(result.words, sigma, table).passed
        if result.derived.padded:
            energies = free_energies(result.words.codes(), table)
            assert energies.min() >= result.derived.alpha - table.D
            assert energies.max() <= result.derived.beta + table.D + table.gamma_max
