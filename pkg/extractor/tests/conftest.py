"""Shared fixtures: a tiny randomly initialised BERT saved to disk once per session.

The model is small enough (hidden size 16, two layers) that forward passes
run in milliseconds, while still exercising real tokenisation, wordpiece
alignment, and hidden-state extraction.
"""

from __future__ import annotations

import os
from pathlib import Path

import pytest

os.environ.setdefault("HF_HUB_OFFLINE", "1")
os.environ.setdefault("TRANSFORMERS_OFFLINE", "1")

DATA_DIR = Path(__file__).parent / "data"

# Wordpiece vocabulary covering the fixture corpus.  Inflected forms split
# into stem + suffix (rings -> ring ##s, watched -> watch ##ed) so pooling
# over several subwords is exercised; anything absent maps to [UNK].
VOCAB = [
    "[PAD]",
    "[UNK]",
    "[CLS]",
    "[SEP]",
    "[MASK]",
    "the",
    "a",
    "i",
    "we",
    "they",
    "was",
    "were",
    "ring",
    "bell",
    "dog",
    "watch",
    "saw",
    "kept",
    "broke",
    "fell",
    "old",
    "new",
    "loud",
    "down",
    "##s",
    "##ing",
    "##ed",
]

MAX_POSITIONS = 24
HIDDEN_SIZE = 16
NUM_LAYERS = 2


@pytest.fixture(scope="session")
def model_dir(tmp_path_factory) -> Path:
    import torch
    from transformers import BertConfig, BertModel, BertTokenizerFast

    directory = tmp_path_factory.mktemp("tiny-bert")
    vocab_file = directory / "vocab.txt"
    vocab_file.write_text("\n".join(VOCAB) + "\n", encoding="utf-8")
    tokenizer = BertTokenizerFast(
        str(vocab_file), do_lower_case=True, model_max_length=MAX_POSITIONS
    )
    config = BertConfig(
        vocab_size=len(VOCAB),
        hidden_size=HIDDEN_SIZE,
        num_hidden_layers=NUM_LAYERS,
        num_attention_heads=2,
        intermediate_size=32,
        max_position_embeddings=MAX_POSITIONS,
    )
    torch.manual_seed(0)
    model = BertModel(config)
    tokenizer.save_pretrained(directory)
    model.save_pretrained(directory)
    return directory


@pytest.fixture()
def corpus_path() -> Path:
    return DATA_DIR / "en_fixture.conllu"


@pytest.fixture()
def clusters_path() -> Path:
    return DATA_DIR / "en_clusters.tsv"


@pytest.fixture()
def records_path() -> Path:
    return DATA_DIR / "en_records.tsv"


@pytest.fixture()
def vectors_path() -> Path:
    return DATA_DIR / "glove_fixture.txt"
