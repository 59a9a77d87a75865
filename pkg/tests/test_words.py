# tests/test_words.py

import json

import numpy as np
import pytest
from pydantic import ValidationError

from core.exceptions import InvalidInputError
from words.io import WordListReader, format_words, parse_word_list
from words.operations import complement, derive_seed, hamming, reverse, reverse_complement, seeded_word
from words.schemas import Alphabet, Word, WordSet


def w(text: str) -> Word:
    return Word.parse(text)


@pytest.mark.unit
class TestWordOperations:
    """Reverse, complement, reverse complement and Hamming distance"""

    @pytest.mark.parametrize("src,expected", [("ACGT", "TGCA"), ("AAAA", "AAAA"), ("01", "10")])
    def test_reverse(self, src, expected):
        """Reverse reads the word back to front"""
        assert reverse(w(src)).symbols == expected

    @pytest.mark.parametrize("src,expected", [("ACGT", "TGCA"), ("0011", "1100"), ("GGGG", "CCCC")])
    def test_complement(self, src, expected):
        """Complement maps A<->T, C<->G and 0<->1"""
        assert complement(w(src)).symbols == expected

    @pytest.mark.parametrize("src,expected", [("ACGT", "ACGT"), ("TTTT", "AAAA"), ("0011", "0011")])
    def test_reverse_complement(self, src, expected):
        """Reverse complement equals complement of the reverse"""
        assert reverse_complement(w(src)).symbols == expected
        assert reverse_complement(w(src)) == complement(reverse(w(src)))

    @pytest.mark.parametrize("x,y,expected", [("AAAA", "AAAA", 0), ("ACGT", "AGGT", 1), ("AAA", "TTT", 3)])
    def test_hamming(self, x, y, expected):
        """Hamming distance counts differing positions"""
        assert hamming(w(x), w(y)) == expected
        assert hamming(w(y), w(x)) == expected

    def test_hamming_length_mismatch(self):
        """Different lengths are rejected"""
        with pytest.raises(InvalidInputError):
            hamming(w("AAA"), w("AAAA"))

    def test_hamming_alphabet_mismatch(self):
        """Different alphabets are rejected"""
        with pytest.raises(InvalidInputError):
            hamming(w("0101"), w("ACGT"))

    @pytest.mark.parametrize("alphabet", [Alphabet.BINARY, Alphabet.DNA], ids=["binary", "dna"])
    def test_hamming_invariant_under_transforms(self, alphabet, rng):
        """Reverse, complement and reverse complement preserve distances"""
        for _ in range(200):
            length = int(rng.integers(1, 65))
            x = Word.from_codes(alphabet, rng.integers(0, alphabet.size, length))
            y = Word.from_codes(alphabet, rng.integers(0, alphabet.size, length))
            d = hamming(x, y)
            assert hamming(reverse(x), reverse(y)) == d
            assert hamming(complement(x), complement(y)) == d
            assert hamming(reverse_complement(x), reverse_complement(y)) == d
            assert reverse_complement(reverse_complement(x)) == x
            assert complement(complement(x)) == x


@pytest.mark.unit
class TestWordSchema:
    """Parsing and validation of words and word sets"""

    def test_lowercase_normalized(self):
        """Lowercase input is accepted and uppercased"""
        assert Word.parse("acgt").symbols == "ACGT"

    def test_alphabet_inferred(self):
        """0/1 strings are binary, everything else DNA"""
        assert Word.parse("0110").alphabet is Alphabet.BINARY
        assert Word.parse("GATC").alphabet is Alphabet.DNA

    def test_stray_character_rejected(self):
        """Characters outside the alphabet fail validation"""
        with pytest.raises(ValidationError):
            Word.parse("ACGN")

    def test_empty_word_rejected(self):
        """Empty words are not allowed"""
        with pytest.raises(ValidationError):
            Word(alphabet=Alphabet.DNA, symbols="")

    def test_word_is_frozen(self):
        """Words are immutable"""
        word = w("ACGT")
        with pytest.raises(ValidationError):
            word.symbols = "TTTT"

    def test_word_set_uniform_length(self):
        """Mixed lengths are rejected"""
        with pytest.raises(ValidationError):
            WordSet.from_strings(["ACGT", "ACG"])

    def test_word_set_uniform_alphabet(self):
        """Mixed alphabets are rejected"""
        with pytest.raises(ValidationError):
            WordSet(words=(w("0101"), w("ACGT")))

    def test_word_set_codes(self):
        """codes() stacks canonical character codes"""
        ws = WordSet.from_strings(["ACGT", "TTAA"])
        assert ws.codes().tolist() == [[0, 1, 2, 3], [3, 3, 0, 0]]
        assert ws.n == 2 and ws.length == 4


@pytest.mark.unit
class TestSeededWords:
    """Deterministic random streams"""

    def test_same_seed_same_word(self):
        """Identical inputs give identical words"""
        assert seeded_word(Alphabet.DNA, 9, (7, 3)) == seeded_word(Alphabet.DNA, 9, (7, 3))

    def test_substreams_are_independent_of_order(self):
        """Stream (s, i) does not depend on which streams were drawn before"""
        later = seeded_word(Alphabet.DNA, 32, (11, 5))
        for i in range(5):
            seeded_word(Alphabet.DNA, 32, (11, i))
        assert seeded_word(Alphabet.DNA, 32, (11, 5)) == later

    def test_length_must_be_positive(self):
        """Length 0 is rejected"""
        with pytest.raises(InvalidInputError):
            seeded_word(Alphabet.DNA, 0, 1)

    def test_symbol_frequencies_uniform(self):
        """Symbol counts over 10^5 draws stay within 5σ of uniform"""
        word = seeded_word(Alphabet.DNA, 100_000, 42)
        counts = np.bincount(word.codes(), minlength=4)
        expected = 100_000 / 4
        sigma = np.sqrt(100_000 * 0.25 * 0.75)
        assert np.all(np.abs(counts - expected) < 5 * sigma)
        chi2 = float(((counts - expected) ** 2 / expected).sum())
        assert chi2 < 30  # 3 degrees of freedom

    def test_derive_seed_is_stable(self):
        """Derived seeds depend only on (master, key)"""
        assert derive_seed(5, 1) == derive_seed(5, 1)
        assert derive_seed(5, 1) != derive_seed(5, 2)


@pytest.mark.unit
class TestWordListIO:
    """Word-list parsing and output formats"""

    def test_comments_and_blank_lines_ignored(self):
        """'#' lines and blank lines are skipped"""
        ws = parse_word_list("# header\nacgt\n\nTTAA\n")
        assert ws.strings() == ["ACGT", "TTAA"]

    def test_empty_list_rejected(self):
        """A file with no words is invalid"""
        with pytest.raises(InvalidInputError):
            parse_word_list("# nothing here\n\n")

    def test_bad_line_reports_line_number(self):
        """Errors name the offending line"""
        with pytest.raises(InvalidInputError, match="Line 2"):
            parse_word_list("ACGT\nACXT\n")

    def test_reader_missing_file(self, tmp_path):
        """Missing files raise FileNotFoundError"""
        with pytest.raises(FileNotFoundError):
            WordListReader(str(tmp_path / "missing.txt")).read()

    def test_reader_rejects_bad_encoding(self, tmp_path):
        """Non-UTF-8 bytes are invalid input naming the file"""
        path = tmp_path / "latin.txt"
        path.write_bytes(b"ACGT\n\xff\xfeAC\n")
        with pytest.raises(InvalidInputError, match="latin.txt"):
            WordListReader(str(path)).read()

    def test_reader_reads_file(self, word_file):
        """Reader returns a WordSet"""
        ws = WordListReader(word_file(["AAAA", "TTTT"])).read()
        assert ws.strings() == ["AAAA", "TTTT"]

    def test_fasta_format(self):
        """FASTA records are >w{i} with 1-based indices"""
        ws = WordSet.from_strings(["AAAA", "CCCC"])
        assert format_words(ws, "fasta") == ">w1\nAAAA\n>w2\nCCCC\n"

    def test_json_lines_format(self):
        """json-lines wraps each word with its index"""
        ws = WordSet.from_strings(["AAAA", "CCCC"])
        lines = format_words(ws, "json-lines").splitlines()
        assert [json.loads(line) for line in lines] == [{"index": 1, "word": "AAAA"}, {"index": 2, "word": "CCCC"}]

    def test_unknown_format(self):
        """Unknown formats are invalid input"""
        with pytest.raises(InvalidInputError):
            format_words(WordSet.from_strings(["AAAA"]), "xml")
