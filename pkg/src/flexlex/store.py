"""WCF1 binary store for per-cluster embedding vectors.

Layout, all integers little-endian:

    magic "WCF1" | version u32 (= 1) | dimension u32 |
    layer label (u16 byte length + UTF-8) | record count u64

then per record, sorted or not (order is preserved verbatim):

    cluster key (u16 byte length + UTF-8) | noun count u32 | verb count u32 |
    noun vectors then verb vectors, each vector as `dimension` IEEE-754
    binary32 components.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import BinaryIO, Sequence

import numpy as np

from .errors import (
    ConfigurationError,
    CorruptStoreError,
    DataError,
    StoreFormatError,
    UnrecognizedFormatError,
)

MAGIC = b"WCF1"
VERSION = 1
_FLOAT = np.dtype("<f4")


@dataclass(eq=False, slots=True)
class EmbeddingRecord:
    """Vectors for one cluster, split by word class; arrays are (n, d) float32."""

    cluster_key: str
    noun_vectors: np.ndarray
    verb_vectors: np.ndarray

    @property
    def noun_count(self) -> int:
        return len(self.noun_vectors)

    @property
    def verb_count(self) -> int:
        return len(self.verb_vectors)


@dataclass(eq=False, slots=True)
class EmbeddingStore:
    """All records extracted from one model layer (or a static table)."""

    dimension: int
    layer_label: str
    records: list[EmbeddingRecord]


def empty_matrix(dimension: int) -> np.ndarray:
    return np.zeros((0, dimension), dtype=_FLOAT)


def as_matrix(vectors: Sequence | np.ndarray, dimension: int) -> np.ndarray:
    """Coerce a vector list to a (n, dimension) float32 matrix, validating shape."""
    if isinstance(vectors, np.ndarray) and vectors.size == 0:
        return empty_matrix(dimension)
    if not isinstance(vectors, np.ndarray) and len(vectors) == 0:
        return empty_matrix(dimension)
    matrix = np.asarray(vectors, dtype=_FLOAT)
    if matrix.ndim != 2 or matrix.shape[1] != dimension:
        raise StoreFormatError(
            f"expected vectors of dimension {dimension}, got array of shape {matrix.shape}"
        )
    return matrix


def make_record(
    cluster_key: str,
    noun_vectors: Sequence | np.ndarray,
    verb_vectors: Sequence | np.ndarray,
    dimension: int,
) -> EmbeddingRecord:
    """Build a record from raw vector lists, coercing empties to (0, d)."""
    return EmbeddingRecord(
        cluster_key,
        as_matrix(noun_vectors, dimension),
        as_matrix(verb_vectors, dimension),
    )


def _validate_store(store: EmbeddingStore) -> None:
    if store.dimension < 1:
        raise StoreFormatError(f"dimension must be >= 1, got {store.dimension}")
    seen: set[str] = set()
    for record in store.records:
        if record.cluster_key in seen:
            raise StoreFormatError(f"duplicate cluster key {record.cluster_key!r}")
        seen.add(record.cluster_key)
        for matrix in (record.noun_vectors, record.verb_vectors):
            if matrix.ndim != 2 or (len(matrix) > 0 and matrix.shape[1] != store.dimension):
                raise StoreFormatError(
                    f"record {record.cluster_key!r}: vector shape {matrix.shape} does not "
                    f"match store dimension {store.dimension}"
                )
        if len(record.cluster_key.encode("utf-8")) > 0xFFFF:
            raise StoreFormatError(f"cluster key too long: {record.cluster_key[:40]!r}...")


def write_store(store: EmbeddingStore, sink: BinaryIO) -> None:
    """Serialize a store; validation happens before any byte is written."""
    _validate_store(store)
    label = store.layer_label.encode("utf-8")
    if len(label) > 0xFFFF:
        raise StoreFormatError("layer label too long")
    sink.write(MAGIC)
    sink.write(struct.pack("<I", VERSION))
    sink.write(struct.pack("<I", store.dimension))
    sink.write(struct.pack("<H", len(label)))
    sink.write(label)
    sink.write(struct.pack("<Q", len(store.records)))
    for record in store.records:
        key = record.cluster_key.encode("utf-8")
        sink.write(struct.pack("<H", len(key)))
        sink.write(key)
        sink.write(struct.pack("<I", record.noun_count))
        sink.write(struct.pack("<I", record.verb_count))
        sink.write(np.ascontiguousarray(record.noun_vectors, dtype=_FLOAT).tobytes())
        sink.write(np.ascontiguousarray(record.verb_vectors, dtype=_FLOAT).tobytes())


class _Reader:
    """Tracks the byte offset so truncation errors can point at it."""

    def __init__(self, source: BinaryIO):
        self._source = source
        self.offset = 0

    def read(self, count: int, what: str) -> bytes:
        data = self._source.read(count)
        if len(data) != count:
            raise CorruptStoreError(
                f"truncated store: expected {count} bytes for {what}, got {len(data)}",
                offset=self.offset + len(data),
            )
        self.offset += count
        return data


def read_store(source: BinaryIO) -> EmbeddingStore:
    """Parse a WCF1 stream, checking magic, version, and payload integrity."""
    reader = _Reader(source)
    magic = source.read(len(MAGIC))
    if magic != MAGIC:
        raise UnrecognizedFormatError(f"not a WCF1 store (magic {magic!r})")
    reader.offset = len(MAGIC)
    (version,) = struct.unpack("<I", reader.read(4, "version"))
    if version != VERSION:
        raise UnrecognizedFormatError(f"unsupported WCF1 version {version}")
    (dimension,) = struct.unpack("<I", reader.read(4, "dimension"))
    (label_length,) = struct.unpack("<H", reader.read(2, "layer label length"))
    layer_label = reader.read(label_length, "layer label").decode("utf-8")
    (record_count,) = struct.unpack("<Q", reader.read(8, "record count"))
    records: list[EmbeddingRecord] = []
    vector_bytes = dimension * _FLOAT.itemsize
    for _ in range(record_count):
        (key_length,) = struct.unpack("<H", reader.read(2, "cluster key length"))
        cluster_key = reader.read(key_length, "cluster key").decode("utf-8")
        (noun_count,) = struct.unpack("<I", reader.read(4, "noun count"))
        (verb_count,) = struct.unpack("<I", reader.read(4, "verb count"))
        noun = np.frombuffer(
            reader.read(noun_count * vector_bytes, f"noun vectors of {cluster_key!r}"),
            dtype=_FLOAT,
        ).reshape(noun_count, dimension)
        verb = np.frombuffer(
            reader.read(verb_count * vector_bytes, f"verb vectors of {cluster_key!r}"),
            dtype=_FLOAT,
        ).reshape(verb_count, dimension)
        for matrix in (noun, verb):
            if not np.isfinite(matrix).all():
                raise DataError(f"non-finite component in record {cluster_key!r}")
        records.append(EmbeddingRecord(cluster_key, noun.copy(), verb.copy()))
    return EmbeddingStore(dimension, layer_label, records)


def filter_eligible(store: EmbeddingStore, min_each: int = 30) -> EmbeddingStore:
    """Keep records with at least min_each vectors in both classes."""
    if min_each < 1:
        raise ConfigurationError(f"min_each must be >= 1, got {min_each}")
    kept = [
        record
        for record in store.records
        if record.noun_count >= min_each and record.verb_count >= min_each
    ]
    return EmbeddingStore(store.dimension, store.layer_label, kept)


def stores_equal(a: EmbeddingStore, b: EmbeddingStore) -> bool:
    """Bit-level equality of two stores (dtype, shapes, values, order)."""
    if (a.dimension, a.layer_label, len(a.records)) != (b.dimension, b.layer_label, len(b.records)):
        return False
    for ra, rb in zip(a.records, b.records):
        if ra.cluster_key != rb.cluster_key:
            return False
        for ma, mb in ((ra.noun_vectors, rb.noun_vectors), (ra.verb_vectors, rb.verb_vectors)):
            if ma.shape != mb.shape or ma.dtype != mb.dtype:
                return False
            if ma.tobytes() != mb.tobytes():
                return False
    return True
