"""End-to-end runs: census tables, semantic-metric tables, and PCA plots.

Per-language work runs on a thread pool capped by the FLEXLEX_THREADS
environment variable (or an explicit thread count); all aggregation and
rendering is sorted, and sampling is seeded per lemma, so outputs are
byte-identical regardless of thread count.
"""
from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .census import (
    FlexibilityRecord,
    LanguageCensus,
    NOUN,
    TIE,
    VERB,
    classify,
    count_classes,
    language_census,
)
from .conllu import TaggedCorpus, load_language_corpus
from .errors import ConfigurationError, UndefinedCosineError
from .merge import ClusterSet, build_clusters
from .metrics import LanguageSemantics, LemmaSemantics, language_semantics, lemma_semantics
from .stats import Projection2D, TestResult, pca2
from .store import EmbeddingRecord, EmbeddingStore, filter_eligible, read_store

logger = logging.getLogger(__name__)

THREADS_ENV_VAR = "FLEXLEX_THREADS"

CENSUS_COLUMNS = ("language", "nouns", "verbs", "noun_flexibility", "verb_flexibility", "included")
RECORDS_COLUMNS = ("cluster", "noun_count", "verb_count", "flexible", "dominant")
METRICS_COLUMNS = (
    "language", "nvs", "vns", "noun_var", "verb_var", "majority_var", "minority_var",
    "shift_p", "shift_stars", "variation_p", "variation_stars",
    "dominance_p", "dominance_stars", "n_lemmas",
)
PROBE_COLUMNS = ("layer", "rho", "abs_rho", "n_words")


@dataclass(frozen=True, slots=True)
class Thresholds:
    """All tunable gates of the census and metric pipelines."""

    min_total: int = 10
    min_minority_frac: float = 0.05
    min_class_count: int = 30
    token_gate: int = 100_000
    flexibility_gate: float = 0.025

    def validate(self) -> None:
        if self.min_total < 1:
            raise ConfigurationError(f"min_total must be >= 1, got {self.min_total}")
        if not 0.0 <= self.min_minority_frac <= 0.5:
            raise ConfigurationError(
                f"min_minority_frac must lie in [0, 0.5], got {self.min_minority_frac}"
            )
        if self.min_class_count < 1:
            raise ConfigurationError(
                f"min_class_count must be >= 1, got {self.min_class_count}"
            )
        if self.token_gate < 0:
            raise ConfigurationError(f"token_gate must be >= 0, got {self.token_gate}")
        if not 0.0 <= self.flexibility_gate <= 1.0:
            raise ConfigurationError(
                f"flexibility_gate must lie in [0, 1], got {self.flexibility_gate}"
            )


@dataclass(frozen=True, slots=True)
class RunConfig:
    """Corpus and store wiring plus thresholds, seed, and output options."""

    corpora: Mapping[str, tuple[Path, ...]] = field(default_factory=dict)
    stores: Mapping[str, Path] = field(default_factory=dict)
    thresholds: Thresholds = field(default_factory=Thresholds)
    seed: int = 0
    out_dir: Path | None = None
    full_precision: bool = False
    downsample_prototypes: bool = False
    threads: int | None = None

    def validate(self) -> None:
        self.thresholds.validate()
        if self.threads is not None and self.threads < 1:
            raise ConfigurationError(f"threads must be >= 1, got {self.threads}")

    def resolve_threads(self) -> int:
        if self.threads is not None:
            return self.threads
        env = os.environ.get(THREADS_ENV_VAR)
        if env is not None:
            try:
                value = int(env)
            except ValueError:
                raise ConfigurationError(
                    f"{THREADS_ENV_VAR} must be an integer, got {env!r}"
                ) from None
            if value < 1:
                raise ConfigurationError(f"{THREADS_ENV_VAR} must be >= 1, got {value}")
            return value
        return os.cpu_count() or 1


@dataclass(frozen=True, slots=True)
class CensusOutput:
    """Everything the census computes for one language."""

    language: str
    census: LanguageCensus
    records: tuple[FlexibilityRecord, ...]
    clusters: ClusterSet
    token_count: int


def census_language(corpus: TaggedCorpus, thresholds: Thresholds) -> CensusOutput:
    """Cluster, count, classify, and aggregate one corpus."""
    clusters = build_clusters(corpus)
    records = tuple(
        classify(counts, thresholds.min_total, thresholds.min_minority_frac)
        for counts in count_classes(corpus, clusters)
    )
    census = language_census(
        records, corpus.token_count, thresholds.token_gate, thresholds.flexibility_gate
    )
    return CensusOutput(corpus.language_code, census, records, clusters, corpus.token_count)


def _map_languages(config: RunConfig, languages: Sequence[str], worker) -> dict:
    ordered = sorted(languages)
    with ThreadPoolExecutor(max_workers=config.resolve_threads()) as pool:
        results = list(pool.map(worker, ordered))
    return dict(zip(ordered, results))


def run_census(config: RunConfig) -> dict[str, CensusOutput]:
    """Run the census for every configured language, in parallel."""
    config.validate()
    if not config.corpora:
        raise ConfigurationError("census needs at least one --corpus language=path")

    def worker(language: str) -> CensusOutput:
        corpus = load_language_corpus(config.corpora[language], language)
        return census_language(corpus, config.thresholds)

    return _map_languages(config, list(config.corpora), worker)


def dominance_by_cluster(records: Sequence[FlexibilityRecord]) -> dict[str, str]:
    return {record.counts.cluster: record.dominant for record in records}


def _record_dominance(record: EmbeddingRecord) -> str:
    if record.noun_count > record.verb_count:
        return NOUN
    if record.verb_count > record.noun_count:
        return VERB
    return TIE


def metrics_language(
    store: EmbeddingStore,
    dominance: Mapping[str, str] | None,
    thresholds: Thresholds,
    seed: int,
    downsample_prototypes: bool = False,
) -> LanguageSemantics:
    """Filter a store to eligible records and aggregate their semantics.

    Dominance labels come from the census mapping when one is given and
    fall back to the store's own vector counts otherwise; records whose
    prototypes have no usable direction are skipped with a warning.
    """
    eligible = filter_eligible(store, thresholds.min_class_count)
    lemmas: list[LemmaSemantics] = []
    for record in sorted(eligible.records, key=lambda r: r.cluster_key):
        if dominance is not None and record.cluster_key in dominance:
            dominant = dominance[record.cluster_key]
        else:
            dominant = _record_dominance(record)
        try:
            lemmas.append(
                lemma_semantics(record, dominant, seed, downsample_prototypes)
            )
        except UndefinedCosineError as exc:
            logger.warning("skipping record %r: %s", record.cluster_key, exc)
    return language_semantics(lemmas)


def run_metrics(config: RunConfig) -> dict[str, LanguageSemantics]:
    """Compute language-level shift/variation metrics for every store."""
    config.validate()
    if not config.stores:
        raise ConfigurationError("metrics needs at least one --store language=path")
    if config.corpora:
        missing = sorted(set(config.stores) - set(config.corpora))
        if missing:
            raise ConfigurationError(
                f"stores configured without a matching corpus: {', '.join(missing)}"
            )

    def worker(language: str) -> LanguageSemantics:
        with open(config.stores[language], "rb") as handle:
            store = read_store(handle)
        dominance = None
        if config.corpora:
            corpus = load_language_corpus(config.corpora[language], language)
            output = census_language(corpus, config.thresholds)
            dominance = dominance_by_cluster(output.records)
        return metrics_language(
            store, dominance, config.thresholds, config.seed, config.downsample_prototypes
        )

    return _map_languages(config, list(config.stores), worker)


def format_value(value: float | None, full_precision: bool = False) -> str:
    """Render one TSV cell: NA for absent, 6 significant digits by default."""
    if value is None:
        return "NA"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value)) if full_precision else f"{float(value):.6g}"


def render_census_tsv(outputs: Mapping[str, CensusOutput], full_precision: bool = False) -> str:
    """The per-language census table, sorted by language code."""
    lines = ["\t".join(CENSUS_COLUMNS)]
    for language in sorted(outputs):
        census = outputs[language].census
        lines.append(
            "\t".join(
                (
                    language,
                    str(census.noun_lemmas),
                    str(census.verb_lemmas),
                    format_value(census.noun_flexibility, full_precision),
                    format_value(census.verb_flexibility, full_precision),
                    "true" if census.included else "false",
                )
            )
        )
    return "\n".join(lines) + "\n"


def render_records_tsv(records: Sequence[FlexibilityRecord]) -> str:
    """Per-cluster counts and classifications, sorted by cluster key."""
    lines = ["\t".join(RECORDS_COLUMNS)]
    for record in sorted(records, key=lambda r: r.counts.cluster):
        lines.append(
            "\t".join(
                (
                    record.counts.cluster,
                    str(record.counts.noun_count),
                    str(record.counts.verb_count),
                    "true" if record.flexible else "false",
                    record.dominant,
                )
            )
        )
    return "\n".join(lines) + "\n"


def _test_cells(test: TestResult | None, full_precision: bool) -> tuple[str, str]:
    if test is None:
        return "NA", ""
    return format_value(test.p_value, full_precision), test.stars


def render_metrics_tsv(
    results: Mapping[str, LanguageSemantics], full_precision: bool = False
) -> str:
    """The per-language metrics table, sorted by language code."""
    lines = ["\t".join(METRICS_COLUMNS)]
    for language in sorted(results):
        semantics = results[language]
        shift_p, shift_stars = _test_cells(semantics.shift_test, full_precision)
        variation_p, variation_stars = _test_cells(semantics.variation_test, full_precision)
        dominance_p, dominance_stars = _test_cells(semantics.dominance_test, full_precision)
        lines.append(
            "\t".join(
                (
                    language,
                    format_value(semantics.nvs, full_precision),
                    format_value(semantics.vns, full_precision),
                    format_value(semantics.noun_variation, full_precision),
                    format_value(semantics.verb_variation, full_precision),
                    format_value(semantics.majority_variation, full_precision),
                    format_value(semantics.minority_variation, full_precision),
                    shift_p,
                    shift_stars,
                    variation_p,
                    variation_stars,
                    dominance_p,
                    dominance_stars,
                    str(semantics.n_lemmas),
                )
            )
        )
    return "\n".join(lines) + "\n"


def render_probe_tsv(curve, full_precision: bool = False) -> str:
    """The per-layer probe table with an optional trailing static row."""
    lines = ["\t".join(PROBE_COLUMNS)]
    for label, rho, abs_rho, n in zip(
        curve.layer_labels, curve.correlations, curve.abs_correlations, curve.n_words
    ):
        lines.append(
            "\t".join(
                (label, format_value(rho, full_precision), format_value(abs_rho, full_precision), str(n))
            )
        )
    if curve.baseline is not None:
        lines.append(
            "\t".join(
                (
                    "static",
                    format_value(curve.baseline, full_precision),
                    format_value(curve.baseline_abs, full_precision),
                    str(curve.baseline_n),
                )
            )
        )
    return "\n".join(lines) + "\n"


def render_projection_tsv(projection: Projection2D, full_precision: bool = False) -> str:
    """Projected points as x, y, class rows."""
    lines = ["\t".join(("x", "y", "class"))]
    labels = projection.class_labels or ("",) * len(projection.points)
    for point, label in zip(projection.points, labels):
        lines.append(
            "\t".join(
                (format_value(point[0], full_precision), format_value(point[1], full_precision), label)
            )
        )
    return "\n".join(lines) + "\n"


_SVG_WIDTH = 480
_SVG_HEIGHT = 360
_SVG_MARGIN = 30
_SVG_STYLE = {NOUN: ("circle", "#1f77b4"), VERB: ("rect", "#d62728")}


def render_projection_svg(projection: Projection2D) -> str:
    """A minimal scatter plot: circles for noun points, squares for verb."""
    points = np.asarray(projection.points, dtype=np.float64)
    labels = projection.class_labels or (NOUN,) * len(points)
    x_min, x_max = float(points[:, 0].min()), float(points[:, 0].max())
    y_min, y_max = float(points[:, 1].min()), float(points[:, 1].max())
    x_span = (x_max - x_min) or 1.0
    y_span = (y_max - y_min) or 1.0

    def scale(point) -> tuple[float, float]:
        x = _SVG_MARGIN + (point[0] - x_min) / x_span * (_SVG_WIDTH - 2 * _SVG_MARGIN)
        y = _SVG_HEIGHT - _SVG_MARGIN - (point[1] - y_min) / y_span * (_SVG_HEIGHT - 2 * _SVG_MARGIN)
        return x, y

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_WIDTH}" height="{_SVG_HEIGHT}" '
        f'viewBox="0 0 {_SVG_WIDTH} {_SVG_HEIGHT}">',
        f'<rect width="{_SVG_WIDTH}" height="{_SVG_HEIGHT}" fill="white"/>',
    ]
    for point, label in zip(points, labels):
        x, y = scale(point)
        shape, color = _SVG_STYLE.get(label, ("circle", "#7f7f7f"))
        if shape == "circle":
            parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="{color}"/>')
        else:
            parts.append(
                f'<rect x="{x - 3:.2f}" y="{y - 3:.2f}" width="6" height="6" fill="{color}"/>'
            )
    parts.append(
        f'<circle cx="{_SVG_MARGIN}" cy="14" r="3" fill="{_SVG_STYLE[NOUN][1]}"/>'
        f'<text x="{_SVG_MARGIN + 8}" y="18" font-size="12">noun</text>'
        f'<rect x="{_SVG_MARGIN + 57}" y="11" width="6" height="6" fill="{_SVG_STYLE[VERB][1]}"/>'
        f'<text x="{_SVG_MARGIN + 68}" y="18" font-size="12">verb</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_pca_plot(
    record: EmbeddingRecord,
    tsv_path: str | Path,
    svg_path: str | Path,
    full_precision: bool = False,
) -> Projection2D:
    """Project one record's vectors to 2-D and write the TSV and SVG files."""
    vectors = np.vstack(
        [
            np.asarray(record.noun_vectors, dtype=np.float64),
            np.asarray(record.verb_vectors, dtype=np.float64),
        ]
    )
    labels = (NOUN,) * record.noun_count + (VERB,) * record.verb_count
    projection = pca2(vectors, labels)
    Path(tsv_path).write_text(render_projection_tsv(projection, full_precision), encoding="utf-8")
    Path(svg_path).write_text(render_projection_svg(projection), encoding="utf-8")
    return projection
