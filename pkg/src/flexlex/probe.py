"""Probe layer stores against human judgments of noun/verb meaning similarity.

Each rated word gets a model score (cosine distance between its noun-mean
and verb-mean vectors) which is rank-correlated with the human similarity
ratings; words missing from a store are dropped pairwise.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Sequence

from .errors import (
    EmptyClassError,
    InsufficientDataError,
    MalformedRecordError,
    UndefinedCosineError,
)
from .metrics import cosine_distance, prototype
from .stats import spearman
from .store import EmbeddingRecord, EmbeddingStore

logger = logging.getLogger(__name__)

RATINGS_HEADER = ("word", "noun_count", "verb_count", "human_sim")


@dataclass(frozen=True, slots=True)
class HumanRating:
    """One rated word with its class occurrence counts and 0-2 similarity."""

    word: str
    noun_count: int
    verb_count: int
    human_sim: float


def load_ratings(lines: Iterable[str]) -> list[HumanRating]:
    """Parse a ratings TSV (word, noun_count, verb_count, human_sim)."""
    ratings: list[HumanRating] = []
    header_seen = False
    for line_number, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            continue
        columns = line.split("\t")
        if not header_seen:
            if tuple(columns) != RATINGS_HEADER:
                raise MalformedRecordError(
                    f"expected header {RATINGS_HEADER}, got {tuple(columns)}", line_number
                )
            header_seen = True
            continue
        if len(columns) != 4:
            raise MalformedRecordError(f"expected 4 columns, got {len(columns)}", line_number)
        word = columns[0]
        try:
            noun_count = int(columns[1])
            verb_count = int(columns[2])
            human_sim = float(columns[3])
        except ValueError as exc:
            raise MalformedRecordError(f"unparseable numeric field: {exc}", line_number) from None
        if noun_count <= 0 or verb_count <= 0:
            raise MalformedRecordError(
                f"occurrence counts must be positive, got ({noun_count}, {verb_count})",
                line_number,
            )
        if not 0.0 <= human_sim <= 2.0:
            raise MalformedRecordError(
                f"human_sim must lie in [0, 2], got {human_sim}", line_number
            )
        ratings.append(HumanRating(word, noun_count, verb_count, human_sim))
    if not header_seen:
        raise MalformedRecordError("ratings file is empty", 1)
    return ratings


def load_bundled_ratings() -> list[HumanRating]:
    """The 138-word English similarity-rating set shipped with the package."""
    text = resources.files("flexlex").joinpath("data/human_ratings.tsv").read_text("utf-8")
    return load_ratings(text.splitlines())


def model_similarity(record: EmbeddingRecord) -> float:
    """Cosine distance between the noun-mean and verb-mean vectors of a record."""
    if record.noun_count == 0 or record.verb_count == 0:
        raise EmptyClassError(f"record {record.cluster_key!r} needs vectors in both classes")
    return cosine_distance(prototype(record.noun_vectors), prototype(record.verb_vectors))


@dataclass(frozen=True, slots=True)
class ProbeCurve:
    """Per-layer signed and absolute rank correlations against the ratings."""

    layer_labels: tuple[str, ...]
    correlations: tuple[float, ...]
    abs_correlations: tuple[float, ...]
    n_words: tuple[int, ...]
    baseline: float | None
    baseline_abs: float | None
    baseline_n: int | None


def _score_store(store: EmbeddingStore, ratings: Sequence[HumanRating]) -> tuple[float, int]:
    by_key = {record.cluster_key: record for record in store.records}
    distances: list[float] = []
    similarities: list[float] = []
    dropped: list[str] = []
    for rating in ratings:
        record = by_key.get(rating.word)
        if record is None or record.noun_count == 0 or record.verb_count == 0:
            dropped.append(rating.word)
            continue
        try:
            distances.append(model_similarity(record))
        except UndefinedCosineError:
            dropped.append(rating.word)
            continue
        similarities.append(rating.human_sim)
    if dropped:
        logger.warning(
            "probe: dropped %d of %d rated words from layer %r: %s",
            len(dropped), len(ratings), store.layer_label, ", ".join(dropped),
        )
    if len(distances) < 3:
        raise InsufficientDataError(
            f"layer {store.layer_label!r}: only {len(distances)} rated words matched, need 3"
        )
    return spearman(distances, similarities).statistic, len(distances)


def probe(
    layer_stores: Sequence[EmbeddingStore],
    ratings: Sequence[HumanRating],
    baseline_store: EmbeddingStore | None = None,
) -> ProbeCurve:
    """Correlate every layer store (and an optional static baseline) with ratings."""
    ordered = sorted(layer_stores, key=lambda store: store.layer_label)
    labels: list[str] = []
    correlations: list[float] = []
    n_words: list[int] = []
    for store in ordered:
        rho, matched = _score_store(store, ratings)
        labels.append(store.layer_label)
        correlations.append(rho)
        n_words.append(matched)
    baseline = baseline_abs = None
    baseline_n = None
    if baseline_store is not None:
        baseline, baseline_n = _score_store(baseline_store, ratings)
        baseline_abs = abs(baseline)
    return ProbeCurve(
        layer_labels=tuple(labels),
        correlations=tuple(correlations),
        abs_correlations=tuple(abs(rho) for rho in correlations),
        n_words=tuple(n_words),
        baseline=baseline,
        baseline_abs=baseline_abs,
        baseline_n=baseline_n,
    )
