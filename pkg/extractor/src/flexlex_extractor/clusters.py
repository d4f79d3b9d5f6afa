"""Cluster tables from the census tool, and target-token selection.

The census dumps two TSV files per language: a cluster table mapping each
representative to its comma-joined members, and a record table with
per-cluster noun/verb counts, a flexibility flag, and the dominant class.
The extractor reads both, then walks a corpus selecting every NOUN or
VERB token whose folded lemma resolves to a selected cluster.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .corpus import Word, load_corpus
from .errors import InputDataError

RECORDS_HEADER = ("cluster", "noun_count", "verb_count", "flexible", "dominant")

EXTRACTED_CLASSES = ("NOUN", "VERB")


def fold(key: str) -> str:
    """Case folding shared with the census tool's cluster keys."""
    return key.lower()


@dataclass(frozen=True, slots=True)
class ClusterRecord:
    """One census row: counts, flexibility, and dominant class."""

    cluster: str
    noun_count: int
    verb_count: int
    flexible: bool
    dominant: str


@dataclass(frozen=True, slots=True)
class Target:
    """One corpus occurrence scheduled for extraction."""

    sentence_index: int
    word_index: int
    form: str
    cluster: str
    upos: str


def load_cluster_map(path: str | Path) -> dict[str, str]:
    """Member-to-representative mapping from a cluster TSV dump."""
    mapping: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            columns = line.split("\t")
            if len(columns) != 2 or not columns[0] or not columns[1]:
                raise InputDataError(
                    f"expected representative<TAB>members, got {line!r}", line_number
                )
            for member in columns[1].split(","):
                mapping[member] = columns[0]
    return mapping


def _parse_count(value: str, line_number: int) -> int:
    if not value.isdigit():
        raise InputDataError(f"expected a count, got {value!r}", line_number)
    return int(value)


def load_records(path: str | Path) -> dict[str, ClusterRecord]:
    """Per-cluster census records keyed by cluster representative."""
    records: dict[str, ClusterRecord] = {}
    with open(path, encoding="utf-8") as handle:
        lines = iter(enumerate(handle, start=1))
        try:
            _, header = next(lines)
        except StopIteration:
            raise InputDataError("record table is empty") from None
        if tuple(header.rstrip("\n").split("\t")) != RECORDS_HEADER:
            raise InputDataError(
                f"expected header {chr(9).join(RECORDS_HEADER)!r}", 1
            )
        for line_number, line in lines:
            line = line.rstrip("\n")
            if not line:
                continue
            columns = line.split("\t")
            if len(columns) != len(RECORDS_HEADER):
                raise InputDataError(
                    f"expected {len(RECORDS_HEADER)} columns, got {len(columns)}",
                    line_number,
                )
            if columns[3] not in ("true", "false"):
                raise InputDataError(f"bad flexible flag {columns[3]!r}", line_number)
            record = ClusterRecord(
                cluster=columns[0],
                noun_count=_parse_count(columns[1], line_number),
                verb_count=_parse_count(columns[2], line_number),
                flexible=columns[3] == "true",
                dominant=columns[4],
            )
            if record.cluster in records:
                raise InputDataError(f"duplicate cluster {record.cluster!r}", line_number)
            records[record.cluster] = record
    return records


def select_clusters(records: dict[str, ClusterRecord], selection: str) -> frozenset[str]:
    """The cluster keys to extract: every record, or the flexible ones."""
    if selection == "all":
        return frozenset(records)
    if selection == "flexible":
        return frozenset(key for key, record in records.items() if record.flexible)
    raise InputDataError(f"unknown selection {selection!r}")


def collect_targets(
    corpus_paths: Iterable[str | Path],
    clusters_path: str | Path,
    records_path: str | Path,
    selection: str,
) -> tuple[list[Target], list[list[Word]]]:
    """Load all three inputs and return the targets with their sentences."""
    sentences = load_corpus(corpus_paths)
    cluster_map = load_cluster_map(clusters_path)
    records = load_records(records_path)
    selected = select_clusters(records, selection)
    return select_targets(sentences, cluster_map, selected), sentences


def select_targets(
    sentences: Iterable[list[Word]],
    cluster_map: dict[str, str],
    selected: frozenset[str],
) -> list[Target]:
    """All NOUN/VERB occurrences of selected clusters, in corpus order."""
    targets: list[Target] = []
    for sentence_index, sentence in enumerate(sentences):
        for word_index, word in enumerate(sentence):
            if word.upos not in EXTRACTED_CLASSES:
                continue
            key = fold(word.lemma_key)
            cluster = cluster_map.get(key, key)
            if cluster in selected:
                targets.append(
                    Target(sentence_index, word_index, word.form, cluster, word.upos)
                )
    return targets
