"""WCF1 store writing, the output contract of every extraction.

Layout, all integers little-endian:

    magic "WCF1" | version u32 (= 1) | dimension u32 |
    layer label (u16 byte length + UTF-8) | record count u64

then per record:

    cluster key (u16 byte length + UTF-8) | noun count u32 | verb count u32 |
    noun vectors then verb vectors, each vector as `dimension` IEEE-754
    binary32 components.

The builder accumulates vectors per cluster and class in occurrence order
and writes records sorted by cluster key, so traversal order never shows
up in the output bytes.
"""
from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import InputDataError

MAGIC = b"WCF1"
VERSION = 1
_FLOAT = np.dtype("<f4")


class StoreBuilder:
    """Collects per-cluster vectors and serializes them as one WCF1 file."""

    def __init__(self, dimension: int, layer_label: str):
        if dimension < 1:
            raise InputDataError(f"dimension must be >= 1, got {dimension}")
        if len(layer_label.encode("utf-8")) > 0xFFFF:
            raise InputDataError("layer label too long")
        self.dimension = dimension
        self.layer_label = layer_label
        self._vectors: dict[str, tuple[list[np.ndarray], list[np.ndarray]]] = {}

    def add(self, cluster: str, upos: str, vector: np.ndarray) -> None:
        """Append one occurrence vector to a cluster's NOUN or VERB list."""
        vector = np.asarray(vector, dtype=_FLOAT).reshape(-1)
        if vector.shape != (self.dimension,):
            raise InputDataError(
                f"cluster {cluster!r}: expected a vector of dimension "
                f"{self.dimension}, got shape {vector.shape}"
            )
        if not np.isfinite(vector).all():
            raise InputDataError(f"non-finite component in cluster {cluster!r}")
        if len(cluster.encode("utf-8")) > 0xFFFF:
            raise InputDataError(f"cluster key too long: {cluster[:40]!r}...")
        noun, verb = self._vectors.setdefault(cluster, ([], []))
        if upos == "NOUN":
            noun.append(vector)
        elif upos == "VERB":
            verb.append(vector)
        else:
            raise InputDataError(f"cluster {cluster!r}: unextractable class {upos!r}")

    @property
    def cluster_count(self) -> int:
        return len(self._vectors)

    def counts(self) -> dict[str, tuple[int, int]]:
        """Per-cluster (noun, verb) vector counts accumulated so far."""
        return {
            cluster: (len(noun), len(verb))
            for cluster, (noun, verb) in self._vectors.items()
        }

    def write(self, path: str | Path) -> None:
        """Serialize all records, sorted by cluster key."""
        with open(path, "wb") as sink:
            label = self.layer_label.encode("utf-8")
            sink.write(MAGIC)
            sink.write(struct.pack("<I", VERSION))
            sink.write(struct.pack("<I", self.dimension))
            sink.write(struct.pack("<H", len(label)))
            sink.write(label)
            sink.write(struct.pack("<Q", len(self._vectors)))
            for cluster in sorted(self._vectors):
                noun, verb = self._vectors[cluster]
                key = cluster.encode("utf-8")
                sink.write(struct.pack("<H", len(key)))
                sink.write(key)
                sink.write(struct.pack("<I", len(noun)))
                sink.write(struct.pack("<I", len(verb)))
                for vector in noun:
                    sink.write(vector.tobytes())
                for vector in verb:
                    sink.write(vector.tobytes())
