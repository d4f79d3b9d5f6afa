"""CoNLL-U parsing into an immutable tagged-corpus representation.

Only FORM, LEMMA and UPOS are retained. Comment lines start with '#',
blank lines separate sentences, multiword-range lines ("3-4") and empty
nodes ("5.1") are skipped without dropping the word lines they span.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import EncodingError, MalformedRecordError

UD_UPOS_TAGS = frozenset({
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
})


@dataclass(frozen=True, slots=True)
class Token:
    """One word line: surface form, annotated lemma, universal POS tag."""

    form: str
    lemma: str
    upos: str
    sentence_index: int
    token_index: int

    @property
    def lemma_key(self) -> str:
        """Lemma used for clustering; an absent lemma ('_') falls back to the form."""
        return self.form if self.lemma == "_" else self.lemma


@dataclass(frozen=True, slots=True)
class TaggedCorpus:
    """Sentences of tokens in document order, tagged with a language code."""

    sentences: tuple[tuple[Token, ...], ...]
    language_code: str = "und"

    @property
    def token_count(self) -> int:
        return sum(len(sentence) for sentence in self.sentences)

    def tokens(self) -> Iterator[Token]:
        for sentence in self.sentences:
            yield from sentence


def parse_conllu(lines: Iterable[str], language_code: str = "und") -> TaggedCorpus:
    """Parse CoNLL-U text (any iterable of lines) into a TaggedCorpus."""
    sentences: list[tuple[Token, ...]] = []
    current: list[Token] = []
    previous_index = 0
    for line_number, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if line.strip() == "":
            if current:
                sentences.append(tuple(current))
                current = []
            previous_index = 0
            continue
        if line.startswith("#"):
            continue
        columns = line.split("\t")
        if len(columns) < 10:
            raise MalformedRecordError(
                f"expected 10 tab-separated columns, got {len(columns)}", line_number
            )
        token_id, form, lemma, upos = columns[0], columns[1], columns[2], columns[3]
        if "-" in token_id or "." in token_id:
            continue  # multiword range or empty node
        try:
            index = int(token_id)
        except ValueError:
            raise MalformedRecordError(f"unparseable token id {token_id!r}", line_number) from None
        if index <= previous_index:
            raise MalformedRecordError(
                f"token id {index} does not increase within the sentence", line_number
            )
        if not form:
            raise MalformedRecordError("empty FORM column", line_number)
        if upos != "_" and upos not in UD_UPOS_TAGS:
            raise MalformedRecordError(f"unknown UPOS tag {upos!r}", line_number)
        current.append(Token(form, lemma, upos, len(sentences), index))
        previous_index = index
    if current:
        sentences.append(tuple(current))
    return TaggedCorpus(tuple(sentences), language_code)


def parse_conllu_file(path: str | Path, language_code: str = "und") -> TaggedCorpus:
    """Parse one CoNLL-U file; invalid UTF-8 raises EncodingError."""
    path = Path(path)
    try:
        with path.open(encoding="utf-8") as handle:
            return parse_conllu(handle, language_code)
    except UnicodeDecodeError as exc:
        raise EncodingError(f"{path}: not valid UTF-8 ({exc})") from exc


def write_conllu(corpus: TaggedCorpus) -> str:
    """Serialize a corpus back to minimal 10-column CoNLL-U."""
    blocks = []
    for sentence in corpus.sentences:
        lines = [
            f"{token.token_index}\t{token.form}\t{token.lemma}\t{token.upos}\t_\t_\t_\t_\t_\t_"
            for token in sentence
        ]
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


def concatenate(corpora: Sequence[TaggedCorpus], language_code: str) -> TaggedCorpus:
    """Join corpora in the given order, renumbering sentence ordinals."""
    sentences: list[tuple[Token, ...]] = []
    for corpus in corpora:
        for sentence in corpus.sentences:
            renumbered = tuple(
                dataclasses.replace(token, sentence_index=len(sentences)) for token in sentence
            )
            sentences.append(renumbered)
    return TaggedCorpus(tuple(sentences), language_code)


def load_language_corpus(paths: Sequence[str | Path], language_code: str) -> TaggedCorpus:
    """Parse and concatenate treebank files in file-name lexicographic order."""
    ordered = sorted((Path(p) for p in paths), key=lambda p: (p.name, str(p)))
    return concatenate([parse_conllu_file(p, language_code) for p in ordered], language_code)


def count_tokens(corpus: TaggedCorpus) -> int:
    """Number of word tokens in the corpus (ranges and empty nodes excluded)."""
    return corpus.token_count
