"""Prototype vectors, within-class variation, and cross-class shift metrics.

Per lemma: the noun and verb prototypes are componentwise means, variation
is the mean Euclidean distance of a class's vectors to their prototype, and
the shift is the cosine distance between the two prototypes. Before the
variations are computed the larger class is downsampled to the smaller
class's size (uniform, without replacement, seeded per lemma); prototypes
and shift default to the full sets.

Per language: NVS (noun-to-verb shift) averages the shift over
noun-dominant lemmas and VNS over verb-dominant ones; variation means are
paired per lemma, both as noun/verb and as dominant/minority class.
"""
from __future__ import annotations

import hashlib
import logging
import struct
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import census
from .errors import DegenerateInputError, EmptyClassError, UndefinedCosineError
from .stats import TestResult, paired_t, unpaired_t
from .store import EmbeddingRecord

logger = logging.getLogger(__name__)

MIN_PROTOTYPE_NORM = 1e-12


def prototype(vectors: Sequence | np.ndarray) -> np.ndarray:
    """Componentwise mean of a non-empty vector set, accumulated in float64."""
    matrix = np.asarray(vectors, dtype=np.float64)
    if matrix.ndim != 2 or len(matrix) == 0:
        raise EmptyClassError("prototype needs at least one vector")
    return matrix.mean(axis=0)


def variation(vectors: Sequence | np.ndarray) -> float:
    """Mean Euclidean distance of the vectors to their own prototype."""
    matrix = np.asarray(vectors, dtype=np.float64)
    if matrix.ndim != 2 or len(matrix) == 0:
        raise EmptyClassError("variation needs at least one vector")
    center = matrix.mean(axis=0)
    return float(np.linalg.norm(matrix - center, axis=1).mean())


def cosine_distance(a: np.ndarray, b: np.ndarray) -> float:
    """1 - cos(a, b), clamped into [0, 2]; raises when a norm falls below 1e-12.

    Bitwise-equal inputs return exactly 0 rather than accumulating rounding
    error through the norm product.
    """
    norm_a = float(np.linalg.norm(a))
    norm_b = float(np.linalg.norm(b))
    if norm_a < MIN_PROTOTYPE_NORM or norm_b < MIN_PROTOTYPE_NORM:
        raise UndefinedCosineError(
            f"cosine undefined for near-zero norms ({norm_a:.3e}, {norm_b:.3e})"
        )
    if np.array_equal(a, b):
        return 0.0
    cosine = float(np.dot(a, b) / (norm_a * norm_b))
    return 1.0 - max(-1.0, min(1.0, cosine))


def lemma_rng(seed: int, cluster_key: str) -> np.random.Generator:
    """Deterministic per-lemma generator derived from the global seed and key."""
    digest = hashlib.sha256(cluster_key.encode("utf-8")).digest()
    words = struct.unpack("<8I", digest)
    return np.random.default_rng(np.random.SeedSequence([seed & 0xFFFFFFFFFFFFFFFF, *words]))


def downsample_indices(seed: int, cluster_key: str, population: int, size: int) -> np.ndarray:
    """Sorted sample of row indices, uniform without replacement."""
    rng = lemma_rng(seed, cluster_key)
    return np.sort(rng.choice(population, size=size, replace=False))


@dataclass(frozen=True, slots=True)
class LemmaSemantics:
    """Per-lemma prototypes, class variations, shift, and dominance label."""

    cluster_key: str
    prototype_noun: np.ndarray
    prototype_verb: np.ndarray
    noun_variation: float
    verb_variation: float
    shift: float
    dominant: str


def lemma_semantics(
    record: EmbeddingRecord,
    dominant: str,
    seed: int = 0,
    downsample_prototypes: bool = False,
) -> LemmaSemantics:
    """Compute prototypes, variations, and shift for one record.

    With unequal class sizes the larger class is downsampled to the smaller
    one before the variations; equal sizes draw nothing from the generator,
    so the result is seed-independent. Setting downsample_prototypes also
    computes prototypes and shift on the downsampled sets.
    """
    if record.noun_count == 0 or record.verb_count == 0:
        raise EmptyClassError(
            f"record {record.cluster_key!r} needs vectors in both classes"
        )
    noun = np.asarray(record.noun_vectors, dtype=np.float64)
    verb = np.asarray(record.verb_vectors, dtype=np.float64)
    if record.noun_count == record.verb_count:
        noun_sampled, verb_sampled = noun, verb
    elif record.noun_count > record.verb_count:
        indices = downsample_indices(seed, record.cluster_key, len(noun), len(verb))
        noun_sampled, verb_sampled = noun[indices], verb
    else:
        indices = downsample_indices(seed, record.cluster_key, len(verb), len(noun))
        noun_sampled, verb_sampled = noun, verb[indices]
    if downsample_prototypes:
        prototype_noun = prototype(noun_sampled)
        prototype_verb = prototype(verb_sampled)
    else:
        prototype_noun = prototype(noun)
        prototype_verb = prototype(verb)
    shift = cosine_distance(prototype_noun, prototype_verb)
    return LemmaSemantics(
        cluster_key=record.cluster_key,
        prototype_noun=prototype_noun,
        prototype_verb=prototype_verb,
        noun_variation=variation(noun_sampled),
        verb_variation=variation(verb_sampled),
        shift=shift,
        dominant=dominant,
    )


@dataclass(frozen=True, slots=True)
class LanguageSemantics:
    """Language-level shift and variation aggregates with test results.

    Means over an empty group are None (absent, not zero); the same goes
    for tests whose input is missing or degenerate.
    """

    nvs: float | None
    vns: float | None
    noun_variation: float | None
    verb_variation: float | None
    majority_variation: float | None
    minority_variation: float | None
    shift_test: TestResult | None
    variation_test: TestResult | None
    dominance_test: TestResult | None
    nvs_samples: tuple[float, ...]
    vns_samples: tuple[float, ...]
    variation_pairs: tuple[tuple[float, float], ...]
    dominance_pairs: tuple[tuple[float, float], ...]
    n_lemmas: int


def _mean(values: Sequence[float]) -> float | None:
    if not values:
        return None
    return float(np.mean(np.asarray(values, dtype=np.float64)))


def language_semantics(lemmas: Sequence[LemmaSemantics]) -> LanguageSemantics:
    """Aggregate per-lemma semantics into language-level metrics.

    Lemmas are processed in sorted cluster-key order so the aggregation is
    independent of input order. Tie-dominant lemmas count toward the
    noun/verb variation means but are excluded from NVS/VNS and from the
    majority/minority pairing.
    """
    ordered = sorted(lemmas, key=lambda lemma: lemma.cluster_key)
    nvs_samples = tuple(l.shift for l in ordered if l.dominant == census.NOUN)
    vns_samples = tuple(l.shift for l in ordered if l.dominant == census.VERB)
    variation_pairs = tuple((l.noun_variation, l.verb_variation) for l in ordered)
    dominance_pairs = tuple(
        (l.noun_variation, l.verb_variation)
        if l.dominant == census.NOUN
        else (l.verb_variation, l.noun_variation)
        for l in ordered
        if l.dominant in (census.NOUN, census.VERB)
    )

    def try_test(runner, *args) -> TestResult | None:
        try:
            return runner(*args)
        except DegenerateInputError as exc:
            logger.warning("significance test skipped: %s", exc)
            return None

    shift_test = (
        try_test(unpaired_t, nvs_samples, vns_samples)
        if len(nvs_samples) >= 2 and len(vns_samples) >= 2
        else None
    )
    variation_test = try_test(paired_t, variation_pairs) if len(variation_pairs) >= 2 else None
    dominance_test = try_test(paired_t, dominance_pairs) if len(dominance_pairs) >= 2 else None
    return LanguageSemantics(
        nvs=_mean(nvs_samples),
        vns=_mean(vns_samples),
        noun_variation=_mean([pair[0] for pair in variation_pairs]),
        verb_variation=_mean([pair[1] for pair in variation_pairs]),
        majority_variation=_mean([pair[0] for pair in dominance_pairs]),
        minority_variation=_mean([pair[1] for pair in dominance_pairs]),
        shift_test=shift_test,
        variation_test=variation_test,
        dominance_test=dominance_test,
        nvs_samples=nvs_samples,
        vns_samples=vns_samples,
        variation_pairs=variation_pairs,
        dominance_pairs=dominance_pairs,
        n_lemmas=len(ordered),
    )
