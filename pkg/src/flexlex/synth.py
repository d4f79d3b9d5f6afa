"""Deterministic synthetic embedding stores with controllable class separation.

Every lemma gets a unit base direction (first component zero) shared by
both classes; each occurrence adds standard-normal noise, and verb vectors
additionally get class_offset on the first component. The offset therefore
moves the verb prototype along an axis orthogonal to the shared base, so
the expected shift runs from 0 (offset 0) toward 1 (offset >> 1) as counts
grow. Every draw is seeded per (lemma, class, occurrence), so stores are
reproducible record by record.
"""
from __future__ import annotations

import hashlib
import struct

import numpy as np

from .errors import ConfigurationError
from .store import EmbeddingStore, make_record

_CLASS_TAGS = {"base": 0, "noun": 1, "verb": 2}


def _rng(seed: int, lemma: str, class_tag: str, index: int) -> np.random.Generator:
    digest = hashlib.sha256(lemma.encode("utf-8")).digest()
    words = struct.unpack("<8I", digest)
    entropy = [seed & 0xFFFFFFFFFFFFFFFF, *words, _CLASS_TAGS[class_tag], index]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def _base_direction(seed: int, lemma: str, dimension: int) -> np.ndarray:
    direction = _rng(seed, lemma, "base", 0).standard_normal(dimension)
    direction[0] = 0.0
    norm = np.linalg.norm(direction)
    if norm == 0.0:
        if dimension > 1:
            direction[1] = 1.0
        return direction
    return direction / norm


def synth_store(
    lemma_count: int,
    noun_count: int,
    verb_count: int,
    dimension: int,
    class_offset: float = 0.0,
    seed: int = 0,
    layer_label: str = "synthetic",
    key_prefix: str = "lemma",
) -> EmbeddingStore:
    """Generate an embedding store of lemma_count synthetic clusters."""
    if lemma_count < 1 or noun_count < 1 or verb_count < 1:
        raise ConfigurationError(
            "lemma_count, noun_count, and verb_count must all be >= 1"
        )
    if dimension < 1:
        raise ConfigurationError(f"dimension must be >= 1, got {dimension}")
    records = []
    for lemma_index in range(lemma_count):
        key = f"{key_prefix}{lemma_index:04d}"
        base = _base_direction(seed, key, dimension)
        noun_vectors = np.empty((noun_count, dimension), dtype=np.float64)
        for i in range(noun_count):
            noun_vectors[i] = base + _rng(seed, key, "noun", i).standard_normal(dimension)
        verb_vectors = np.empty((verb_count, dimension), dtype=np.float64)
        for i in range(verb_count):
            verb_vectors[i] = base + _rng(seed, key, "verb", i).standard_normal(dimension)
            verb_vectors[i, 0] += class_offset
        records.append(
            make_record(
                key,
                noun_vectors.astype(np.float32),
                verb_vectors.astype(np.float32),
                dimension,
            )
        )
    return EmbeddingStore(dimension, layer_label, records)
