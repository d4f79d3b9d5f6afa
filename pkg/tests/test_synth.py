import numpy as np
import pytest

from flexlex.errors import ConfigurationError
from flexlex.metrics import lemma_semantics
from flexlex.store import stores_equal
from flexlex.synth import synth_store
from helpers import lemma_semantics_oracle


def test_synth_store_shape_and_keys():
    store = synth_store(3, 5, 4, 8, seed=0)
    assert store.dimension == 8
    assert store.layer_label == "synthetic"
    assert [r.cluster_key for r in store.records] == ["lemma0000", "lemma0001", "lemma0002"]
    for record in store.records:
        assert record.noun_vectors.shape == (5, 8)
        assert record.verb_vectors.shape == (4, 8)
        assert record.noun_vectors.dtype == np.float32


def test_synth_store_is_deterministic():
    assert stores_equal(synth_store(4, 6, 3, 5, 1.5, seed=9), synth_store(4, 6, 3, 5, 1.5, seed=9))
    assert not stores_equal(synth_store(4, 6, 3, 5, 1.5, seed=9), synth_store(4, 6, 3, 5, 1.5, seed=10))


def test_synth_records_are_seeded_per_occurrence():
    small = synth_store(2, 4, 4, 6, 0.5, seed=3)
    large = synth_store(5, 4, 4, 6, 0.5, seed=3)
    for a, b in zip(small.records, large.records[:2]):
        assert a.cluster_key == b.cluster_key
        assert np.array_equal(a.noun_vectors, b.noun_vectors)
        assert np.array_equal(a.verb_vectors, b.verb_vectors)


def test_zero_offset_shift_tends_to_zero_with_many_samples():
    store = synth_store(4, 400, 400, 8, class_offset=0.0, seed=2)
    shifts = [lemma_semantics(r, "noun", seed=2).shift for r in store.records]
    assert all(shift < 0.1 for shift in shifts)


def test_huge_offset_shift_approaches_one_and_matches_oracle():
    store = synth_store(3, 60, 50, 8, class_offset=1e3, seed=5)
    for record in store.records:
        result = lemma_semantics(record, "noun", seed=5)
        oracle = lemma_semantics_oracle(record, seed=5)
        assert result.shift == pytest.approx(oracle["shift"], rel=1e-9)
        assert 0.9 < result.shift <= 1.1


def test_offset_moves_only_first_component():
    store = synth_store(1, 300, 300, 6, class_offset=4.0, seed=7)
    record = store.records[0]
    noun_mean = np.asarray(record.noun_vectors, dtype=np.float64).mean(axis=0)
    verb_mean = np.asarray(record.verb_vectors, dtype=np.float64).mean(axis=0)
    assert abs(noun_mean[0]) < 0.2  # base direction has no first component
    assert verb_mean[0] == pytest.approx(4.0, abs=0.2)
    assert np.allclose(noun_mean[1:], verb_mean[1:], atol=0.25)


def test_key_prefix_controls_record_keys():
    store = synth_store(2, 3, 3, 4, key_prefix="nd")
    assert [r.cluster_key for r in store.records] == ["nd0000", "nd0001"]


def test_synth_rejects_bad_parameters():
    with pytest.raises(ConfigurationError):
        synth_store(0, 3, 3, 4)
    with pytest.raises(ConfigurationError):
        synth_store(2, 0, 3, 4)
    with pytest.raises(ConfigurationError):
        synth_store(2, 3, 3, 0)
