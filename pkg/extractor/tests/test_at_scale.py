"""Optional at-scale checks against a real model and a real English corpus.

Set FLEXLEX_MODEL_DIR to a local transformer checkpoint (nine or more
hidden layers) and FLEXLEX_EN_CORPUS to an English CoNLL-U file or a
directory of them to enable these; they are skipped otherwise.
"""

import os
import subprocess
from pathlib import Path

import pytest

MODEL_DIR = os.environ.get("FLEXLEX_MODEL_DIR")
EN_CORPUS = os.environ.get("FLEXLEX_EN_CORPUS")

pytestmark = pytest.mark.skipif(
    not (MODEL_DIR and EN_CORPUS),
    reason="set FLEXLEX_MODEL_DIR and FLEXLEX_EN_CORPUS for at-scale checks",
)

LAYERS = tuple(range(9))


def corpus_files():
    path = Path(EN_CORPUS)
    return sorted(path.glob("**/*.conllu")) if path.is_dir() else [path]


@pytest.fixture(scope="module")
def stores(tmp_path_factory):
    from flexlex.store import read_store

    from flexlex_extractor.cli import main

    from helpers import write_job

    tmp = tmp_path_factory.mktemp("at-scale")
    census = [
        "flexlex",
        "census",
        "--out",
        str(tmp / "census.tsv"),
        "--records-out",
        str(tmp),
        "--clusters-out",
        str(tmp),
    ]
    for path in corpus_files():
        census += ["--corpus", f"en={path}"]
    result = subprocess.run(census, capture_output=True, text=True)
    assert result.returncode == 0, result.stderr

    job = write_job(
        tmp / "run.job",
        corpus=corpus_files(),
        clusters=tmp / "en.clusters.tsv",
        records=tmp / "en.records.tsv",
        out_dir=tmp / "stores",
        model=MODEL_DIR,
        layers=list(LAYERS),
        batch_size=32,
    )
    assert main([str(job)]) == 0
    loaded = {}
    for layer in LAYERS:
        with open(tmp / "stores" / f"layer{layer}.wcf", "rb") as source:
            loaded[layer] = read_store(source)
    return tmp, loaded


def test_probe_magnitude_rises_to_mid_layers_then_holds(stores):
    from flexlex.probe import load_bundled_ratings, probe

    _, loaded = stores
    curve = probe([loaded[layer] for layer in LAYERS], load_bundled_ratings())
    by_layer = dict(zip(curve.layer_labels, curve.abs_correlations))
    abs_rho = [by_layer[f"layer{layer}"] for layer in LAYERS]
    assert abs_rho[4] > abs_rho[0]
    assert min(abs_rho[4:]) > abs_rho[0]
    assert min(abs_rho[4:]) >= 0.8 * abs_rho[4]


def test_english_noun_to_verb_shift_exceeds_verb_to_noun(stores):
    from flexlex.metrics import language_semantics, lemma_semantics
    from flexlex.store import filter_eligible

    from flexlex_extractor.clusters import load_records

    tmp, loaded = stores
    dominance = {
        key: record.dominant
        for key, record in load_records(tmp / "en.records.tsv").items()
    }
    store = filter_eligible(loaded[4], min_each=30)
    assert store.records, "no cluster reached 30 vectors per class"
    lemmas = [
        lemma_semantics(record, dominance[record.cluster_key])
        for record in store.records
        if dominance[record.cluster_key] in ("noun", "verb")
    ]
    language = language_semantics(lemmas)
    assert language.nvs is not None and language.vns is not None
    assert language.nvs > language.vns
