# words/io.py

import json
import logging
import os
from typing import List, TextIO

from core.exceptions import InvalidInputError
from words.schemas import Word, WordSet

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("plain", "fasta", "json-lines")


def parse_word_list(text: str) -> WordSet:
    """
    Parse the word-list format: one word per line, '#' lines and blank
    lines ignored, lowercase accepted.
    """
    words: List[Word] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            words.append(Word.parse(line))
        except ValueError as e:
            raise InvalidInputError(f"Line {lineno}: {e}") from e

    if not words:
        raise InvalidInputError("Word list contains no words")
    try:
        return WordSet(words=tuple(words))
    except ValueError as e:
        raise InvalidInputError(str(e)) from e


class WordListReader:
    """
    Reader for word-list files
    """

    def __init__(self, file_path: str):
        self.file_path = file_path

    def read(self) -> WordSet:
        logger.info(f"🔄 Reading word list: {self.file_path}")

        if not os.path.exists(self.file_path):
            raise FileNotFoundError(f"Word list not found: {self.file_path}")

        try:
            with open(self.file_path, encoding="utf-8") as fh:
                text = fh.read()
        except UnicodeDecodeError as e:
            raise InvalidInputError(f"Word list is not valid UTF-8: {self.file_path} ({e.reason} at byte {e.start})") from e
        word_set = parse_word_list(text)

        logger.info(f"✓ Read {word_set.n} words of length {word_set.length}")
        return word_set


def format_words(word_set: WordSet, fmt: str = "plain") -> str:
    if fmt == "plain":
        lines = [w.symbols for w in word_set.words]
    elif fmt == "fasta":
        lines = []
        for i, w in enumerate(word_set.words, start=1):
            lines.append(f">w{i}")
            lines.append(w.symbols)
    elif fmt == "json-lines":
        lines = [
            json.dumps({"index": i, "word": w.symbols}, separators=(",", ":"))
            for i, w in enumerate(word_set.words, start=1)
        ]
    else:
        raise InvalidInputError(f"Unknown output format {fmt!r}; expected one of {OUTPUT_FORMATS}")
    return "\n".join(lines) + "\n"


def write_words(word_set: WordSet, out: TextIO, fmt: str = "plain"):
    out.write(format_words(word_set, fmt))
