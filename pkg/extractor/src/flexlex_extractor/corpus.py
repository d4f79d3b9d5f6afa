"""Minimal CoNLL-U reading: just the word tokens the extractor needs.

Only FORM, LEMMA, and UPOS are kept. Comment lines, multiword-token
ranges, and empty nodes are skipped; the words they cover still appear as
ordinary rows. A LEMMA of "_" falls back to the surface form so lookups
always have a key.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .errors import InputDataError


@dataclass(frozen=True, slots=True)
class Word:
    """One syntactic word of a sentence."""

    form: str
    lemma: str
    upos: str

    @property
    def lemma_key(self) -> str:
        return self.form if self.lemma == "_" else self.lemma


def parse_sentences(lines: Iterable[str]) -> Iterator[list[Word]]:
    """Yield sentences as lists of words, validating row structure."""
    sentence: list[Word] = []
    for line_number, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        if not line:
            if sentence:
                yield sentence
                sentence = []
            continue
        if line.startswith("#"):
            continue
        columns = line.split("\t")
        if len(columns) < 10:
            raise InputDataError(
                f"expected 10 tab-separated columns, got {len(columns)}", line_number
            )
        token_id, form, lemma, upos = columns[0], columns[1], columns[2], columns[3]
        if "-" in token_id or "." in token_id:
            continue
        if not token_id.isdigit():
            raise InputDataError(f"unparseable token id {token_id!r}", line_number)
        if not form:
            raise InputDataError("empty FORM column", line_number)
        sentence.append(Word(form, lemma, upos))
    if sentence:
        yield sentence


def load_corpus(paths: Iterable[str | Path]) -> list[list[Word]]:
    """Concatenate files in file-name order into one sentence list."""
    ordered = sorted((Path(p) for p in paths), key=lambda p: (p.name, str(p)))
    sentences: list[list[Word]] = []
    for path in ordered:
        with open(path, encoding="utf-8") as handle:
            sentences.extend(parse_sentences(handle))
    return sentences
