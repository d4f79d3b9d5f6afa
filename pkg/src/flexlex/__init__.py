"""Quantify noun/verb flexibility across languages from tagged corpora,
and measure how contextual embeddings separate the two uses."""

from .census import ClassCounts, FlexibilityRecord, LanguageCensus, classify, count_classes, language_census
from .conllu import TaggedCorpus, Token, count_tokens, load_language_corpus, parse_conllu, parse_conllu_file
from .merge import ClusterSet, UnionFind, build_clusters
from .metrics import LanguageSemantics, LemmaSemantics, language_semantics, lemma_semantics, prototype, variation
from .pipeline import CensusOutput, RunConfig, Thresholds, emit_pca_plot, run_census, run_metrics
from .probe import HumanRating, ProbeCurve, load_bundled_ratings, load_ratings, model_similarity, probe
from .stats import Projection2D, TestResult, paired_t, pca2, spearman, star_level, unpaired_t
from .store import EmbeddingRecord, EmbeddingStore, filter_eligible, read_store, write_store
from .synth import synth_store

__version__ = "0.1.0"
