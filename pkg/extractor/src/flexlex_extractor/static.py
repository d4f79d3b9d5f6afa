"""Static baseline extraction from a plain-text vector table.

The table uses one line per word: the word, then its components, all
space-separated (the common distribution format of static embeddings).
Every target occurrence receives the vector of its folded surface form,
so two inflected forms of one cluster may map to different vectors while
repeated occurrences of one form share theirs. Forms missing from the
table are skipped and counted in a log line.
"""
from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from .clusters import collect_targets, fold
from .errors import InputDataError, JobConfigError
from .job import ExtractionJob
from .store import StoreBuilder

logger = logging.getLogger(__name__)


def load_vector_table(path: str | Path) -> tuple[dict[str, np.ndarray], int]:
    """Read a word-to-vector table; the first row fixes the dimension."""
    table: dict[str, np.ndarray] = {}
    dimension: int | None = None
    with open(path, encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split(" ")
            if len(parts) < 2:
                raise InputDataError("row has a word but no components", line_number)
            if dimension is None:
                dimension = len(parts) - 1
            elif len(parts) - 1 != dimension:
                raise InputDataError(
                    f"expected {dimension} components, got {len(parts) - 1}", line_number
                )
            try:
                vector = np.asarray([float(part) for part in parts[1:]], dtype="<f4")
            except ValueError:
                raise InputDataError(
                    f"unparseable component for {parts[0]!r}", line_number
                ) from None
            table[parts[0]] = vector
    if dimension is None:
        raise InputDataError(f"vector table {path} is empty")
    return table, dimension


def extract_static(job: ExtractionJob) -> Path:
    """Run one static job; returns the written store path."""
    job.validate()
    if job.static_vectors is None:
        raise JobConfigError("job has no static vector table")
    targets, _ = collect_targets(job.corpus, job.clusters, job.records, job.selection)
    table, dimension = load_vector_table(job.static_vectors)
    builder = StoreBuilder(dimension, "static")
    skipped = 0
    for target in targets:
        vector = table.get(fold(target.form))
        if vector is None:
            skipped += 1
            logger.warning(
                "out-of-vocabulary form %r (sentence %d); occurrence skipped",
                target.form,
                target.sentence_index,
            )
            continue
        builder.add(target.cluster, target.upos, vector)
    job.out_dir.mkdir(parents=True, exist_ok=True)
    path = job.out_dir / "static.wcf"
    builder.write(path)
    logger.info(
        "wrote %d occurrences (%d skipped) for %d cluster(s) to %s",
        len(targets) - skipped,
        skipped,
        builder.cluster_count,
        path,
    )
    return path
