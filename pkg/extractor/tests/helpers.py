"""Test utilities: job-file writing and an independent store parser.

The parser here is written directly against the documented byte layout with
struct, so store tests do not depend on the production reader they are meant
to check.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

MAGIC = b"WCF1"


def write_job(path: Path, **values) -> Path:
    """Write a flat key=value job file; sequences join with commas."""
    lines = []
    for key, value in values.items():
        if isinstance(value, (list, tuple)):
            value = ",".join(str(item) for item in value)
        lines.append(f"{key}={value}")
    path = Path(path)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_corpus(path: Path, sentences) -> Path:
    """Write sentences of (form, lemma, upos) triples as CoNLL-U rows."""
    lines = []
    for sentence in sentences:
        for index, (form, lemma, upos) in enumerate(sentence, start=1):
            lines.append("\t".join([str(index), form, lemma, upos] + ["_"] * 6))
        lines.append("")
    path = Path(path)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_clusters(path: Path, members_by_representative) -> Path:
    path = Path(path)
    path.write_text(
        "".join(
            f"{representative}\t{','.join(members)}\n"
            for representative, members in members_by_representative.items()
        ),
        encoding="utf-8",
    )
    return path


def write_records(path: Path, rows) -> Path:
    """Write (cluster, noun_count, verb_count, flexible, dominant) rows."""
    header = "cluster\tnoun_count\tverb_count\tflexible\tdominant"
    body = [
        f"{cluster}\t{noun}\t{verb}\t{str(flexible).lower()}\t{dominant}"
        for cluster, noun, verb, flexible, dominant in rows
    ]
    path = Path(path)
    path.write_text("\n".join([header] + body) + "\n", encoding="utf-8")
    return path


def parse_store(path: Path):
    """Parse a store file byte by byte.

    Returns (dimension, label, records) where records is a list of
    (key, noun_matrix, verb_matrix) tuples in file order.
    """
    blob = Path(path).read_bytes()
    offset = 0

    def take(count: int) -> bytes:
        nonlocal offset
        piece = blob[offset : offset + count]
        if len(piece) != count:
            raise AssertionError("store file ended early")
        offset += count
        return piece

    if take(4) != MAGIC:
        raise AssertionError("bad magic")
    (version,) = struct.unpack("<I", take(4))
    if version != 1:
        raise AssertionError(f"unexpected version {version}")
    (dimension,) = struct.unpack("<I", take(4))
    (label_length,) = struct.unpack("<H", take(2))
    label = take(label_length).decode("utf-8")
    (count,) = struct.unpack("<Q", take(8))

    records = []
    for _ in range(count):
        (key_length,) = struct.unpack("<H", take(2))
        key = take(key_length).decode("utf-8")
        noun_count, verb_count = struct.unpack("<II", take(8))
        noun = np.frombuffer(take(4 * noun_count * dimension), dtype="<f4")
        verb = np.frombuffer(take(4 * verb_count * dimension), dtype="<f4")
        records.append(
            (
                key,
                noun.reshape(noun_count, dimension),
                verb.reshape(verb_count, dimension),
            )
        )
    if offset != len(blob):
        raise AssertionError("trailing bytes after last record")
    return dimension, label, records
