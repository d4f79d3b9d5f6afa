"""Cluster tables, record tables, and target selection."""

import pytest

from flexlex_extractor.clusters import (
    collect_targets,
    fold,
    load_cluster_map,
    load_records,
    select_clusters,
    select_targets,
)
from flexlex_extractor.corpus import Word
from flexlex_extractor.errors import InputDataError


def counts_by_cluster_and_class(targets):
    counted = {}
    for target in targets:
        slot = counted.setdefault(target.cluster, {"NOUN": 0, "VERB": 0})
        slot[target.upos] += 1
    return counted


def test_cluster_map_maps_every_member_to_its_representative(clusters_path):
    mapping = load_cluster_map(clusters_path)
    assert mapping["rings"] == "ring"
    assert mapping["ringing"] == "ring"
    assert mapping["watched"] == "watch"
    assert mapping["ring"] == "ring"


def test_cluster_map_rejects_malformed_rows(tmp_path):
    path = tmp_path / "bad.tsv"
    path.write_text("ring\tring,rings\nonly-one-column\n", encoding="utf-8")
    with pytest.raises(InputDataError, match="line 2: expected representative"):
        load_cluster_map(path)


def test_records_parse_counts_flags_and_dominance(records_path):
    records = load_records(records_path)
    assert len(records) == 9
    ring = records["ring"]
    assert (ring.noun_count, ring.verb_count) == (8, 5)
    assert ring.flexible and ring.dominant == "noun"
    watch = records["watch"]
    assert (watch.noun_count, watch.verb_count) == (3, 9)
    assert watch.flexible and watch.dominant == "verb"
    assert not records["dog"].flexible


def write_records(tmp_path, rows, header="cluster\tnoun_count\tverb_count\tflexible\tdominant"):
    path = tmp_path / "records.tsv"
    path.write_text("\n".join([header] + rows) + "\n", encoding="utf-8")
    return path


def test_records_reject_a_wrong_header(tmp_path):
    path = write_records(tmp_path, [], header="cluster\tnouns\tverbs\tflexible\tdominant")
    with pytest.raises(InputDataError, match="expected header"):
        load_records(path)


def test_records_reject_an_empty_file(tmp_path):
    path = tmp_path / "records.tsv"
    path.write_text("", encoding="utf-8")
    with pytest.raises(InputDataError, match="empty"):
        load_records(path)


def test_records_reject_bad_counts_flags_and_duplicates(tmp_path):
    with pytest.raises(InputDataError, match="line 2: expected a count, got '-3'"):
        load_records(write_records(tmp_path, ["ring\t-3\t5\ttrue\tnoun"]))
    with pytest.raises(InputDataError, match="line 2: bad flexible flag 'yes'"):
        load_records(write_records(tmp_path, ["ring\t8\t5\tyes\tnoun"]))
    with pytest.raises(InputDataError, match="line 3: duplicate cluster 'ring'"):
        load_records(
            write_records(
                tmp_path, ["ring\t8\t5\ttrue\tnoun", "ring\t8\t5\ttrue\tnoun"]
            )
        )
    with pytest.raises(InputDataError, match="line 2: expected 5 columns, got 4"):
        load_records(write_records(tmp_path, ["ring\t8\t5\ttrue"]))


def test_select_clusters_filters_on_the_flexible_flag(records_path):
    records = load_records(records_path)
    assert select_clusters(records, "flexible") == frozenset({"ring", "watch"})
    assert select_clusters(records, "all") == frozenset(records)
    with pytest.raises(InputDataError, match="unknown selection"):
        select_clusters(records, "dominant")


def test_fixture_targets_match_the_census_counts(
    corpus_path, clusters_path, records_path
):
    targets, sentences = collect_targets(
        [corpus_path], clusters_path, records_path, "flexible"
    )
    assert len(sentences) == 23
    assert counts_by_cluster_and_class(targets) == {
        "ring": {"NOUN": 8, "VERB": 5},
        "watch": {"NOUN": 3, "VERB": 9},
    }
    order = [(target.sentence_index, target.word_index) for target in targets]
    assert order == sorted(order)
    for target in targets:
        word = sentences[target.sentence_index][target.word_index]
        assert word.form == target.form
        assert word.upos == target.upos


def test_selection_all_adds_the_inflexible_clusters(
    corpus_path, clusters_path, records_path
):
    targets, _ = collect_targets([corpus_path], clusters_path, records_path, "all")
    counted = counts_by_cluster_and_class(targets)
    assert counted["dog"] == {"NOUN": 7, "VERB": 0}
    assert counted["bell"] == {"NOUN": 7, "VERB": 0}
    assert counted["saw"] == {"NOUN": 0, "VERB": 2}
    assert len(targets) == 46


def test_select_targets_folds_lemmas_and_falls_back_to_the_key():
    sentences = [
        [
            Word("The", "the", "DET"),
            Word("Rings", "Ring", "NOUN"),
            Word("glow", "_", "VERB"),
        ]
    ]
    targets = select_targets(sentences, {"ring": "ring"}, frozenset({"ring", "glow"}))
    assert [(t.cluster, t.form, t.word_index) for t in targets] == [
        ("ring", "Rings", 1),
        ("glow", "glow", 2),
    ]


def test_fold_matches_the_census_keying():
    assert fold("Ring") == "ring"
    assert fold("VOYAGE") == "voyage"
