"""Contextual extraction: transformer hidden states for target tokens.

Sentences containing targets run through the model in batches with the
tokenizer's word alignment; each target word's subword states are pooled
(arithmetic mean by default, first subword optionally) and appended to
its cluster's class list at every requested layer. Layer 0 is the
embedding output, layer N the N-th encoder block. The model runs in
evaluation mode, so repeating a job writes identical files.

Target words the tokenizer cannot align (no surviving subword unit, for
example past the model's position limit) are skipped and counted in a
log line, matching the census-count reconciliation contract: store counts
equal corpus occurrence counts minus logged skips.
"""
from __future__ import annotations

import logging
from pathlib import Path

import torch
from transformers import AutoModel, AutoTokenizer

from .clusters import Target, collect_targets
from .errors import JobConfigError, ModelError
from .job import ExtractionJob
from .store import StoreBuilder

logger = logging.getLogger(__name__)


def load_model(path: str | Path):
    """Load a tokenizer/model pair from a local directory or model id."""
    try:
        tokenizer = AutoTokenizer.from_pretrained(path)
        model = AutoModel.from_pretrained(path)
    except Exception as error:
        raise ModelError(f"cannot load model from {path}: {error}") from error
    if not tokenizer.is_fast:
        raise ModelError(f"model at {path} lacks a fast tokenizer (needed for word alignment)")
    model.eval()
    return tokenizer, model


def _validated_layers(job: ExtractionJob, model) -> tuple[int, ...]:
    top = model.config.num_hidden_layers
    bad = sorted(layer for layer in job.layers if layer > top)
    if bad:
        raise JobConfigError(
            f"layer indices {bad} out of range for a {top}-layer model (valid: 0..{top})"
        )
    return job.layers


def extract(job: ExtractionJob) -> dict[int, Path]:
    """Run one contextual job; returns the written path per layer index."""
    job.validate()
    if job.model is None:
        raise JobConfigError("job has no model to extract from")
    targets, sentences = collect_targets(
        job.corpus, job.clusters, job.records, job.selection
    )
    tokenizer, model = load_model(job.model)
    layers = _validated_layers(job, model)
    dimension = model.config.hidden_size
    builders = {layer: StoreBuilder(dimension, f"layer{layer}") for layer in layers}

    by_sentence: dict[int, list[Target]] = {}
    for target in targets:
        by_sentence.setdefault(target.sentence_index, []).append(target)
    needed = sorted(by_sentence)
    max_length = min(tokenizer.model_max_length, model.config.max_position_embeddings)
    skipped = 0

    with torch.no_grad():
        for start in range(0, len(needed), job.batch_size):
            batch = needed[start:start + job.batch_size]
            encoding = tokenizer(
                [[word.form for word in sentences[index]] for index in batch],
                is_split_into_words=True,
                padding=True,
                truncation=True,
                max_length=max_length,
                return_tensors="pt",
            )
            hidden = model(**encoding, output_hidden_states=True).hidden_states
            for row, sentence_index in enumerate(batch):
                positions: dict[int, list[int]] = {}
                for position, word_id in enumerate(encoding.word_ids(row)):
                    if word_id is not None:
                        positions.setdefault(word_id, []).append(position)
                for target in by_sentence[sentence_index]:
                    where = positions.get(target.word_index)
                    if not where:
                        skipped += 1
                        logger.warning(
                            "no subword alignment for %r (sentence %d); occurrence skipped",
                            target.form,
                            target.sentence_index,
                        )
                        continue
                    for layer, builder in builders.items():
                        states = hidden[layer][row, where]
                        pooled = states.mean(dim=0) if job.pooling == "mean" else states[0]
                        builder.add(target.cluster, target.upos, pooled.numpy())

    job.out_dir.mkdir(parents=True, exist_ok=True)
    written: dict[int, Path] = {}
    for layer, builder in builders.items():
        path = job.out_dir / f"layer{layer}.wcf"
        builder.write(path)
        written[layer] = path
    logger.info(
        "wrote %d occurrences (%d skipped) for %d cluster(s) at %d layer(s) to %s",
        len(targets) - skipped,
        skipped,
        next(iter(builders.values())).cluster_count if builders else 0,
        len(builders),
        job.out_dir,
    )
    return written
