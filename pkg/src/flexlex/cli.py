"""Command-line interface: census, metrics, probe, pca, and synth subcommands.

Exit codes: 0 success, 2 configuration error, 3 data error, 4 I/O error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .errors import ConfigurationError, DataError
from .pipeline import (
    RunConfig,
    Thresholds,
    emit_pca_plot,
    render_census_tsv,
    render_metrics_tsv,
    render_probe_tsv,
    render_records_tsv,
    run_census,
    run_metrics,
)
from .probe import load_bundled_ratings, load_ratings, probe
from .store import read_store, write_store
from .synth import synth_store

EXIT_OK = 0
EXIT_CONFIGURATION = 2
EXIT_DATA = 3
EXIT_IO = 4


def _parse_language_paths(pairs: list[str]) -> dict[str, tuple[Path, ...]]:
    corpora: dict[str, list[Path]] = {}
    for pair in pairs:
        language, separator, path = pair.partition("=")
        if not separator or not language or not path:
            raise ConfigurationError(f"expected LANGUAGE=PATH, got {pair!r}")
        corpora.setdefault(language, []).append(Path(path))
    return {language: tuple(paths) for language, paths in corpora.items()}


def _parse_store_paths(pairs: list[str]) -> dict[str, Path]:
    stores: dict[str, Path] = {}
    for pair in pairs:
        language, separator, path = pair.partition("=")
        if not separator or not language or not path:
            raise ConfigurationError(f"expected LANGUAGE=PATH, got {pair!r}")
        if language in stores:
            raise ConfigurationError(f"duplicate store for language {language!r}")
        stores[language] = Path(path)
    return stores


def _thresholds(args: argparse.Namespace) -> Thresholds:
    return Thresholds(
        min_total=args.min_total,
        min_minority_frac=args.min_minority_frac,
        min_class_count=args.min_class_count,
        token_gate=args.token_gate,
        flexibility_gate=args.flexibility_gate,
    )


def _add_threshold_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--min-total", type=int, default=10,
                        help="minimum cluster occurrences for flexibility (default 10)")
    parser.add_argument("--min-minority-frac", type=float, default=0.05,
                        help="minimum minority-class share (default 0.05)")
    parser.add_argument("--min-class-count", type=int, default=30,
                        help="minimum vectors per class for metric eligibility (default 30)")
    parser.add_argument("--token-gate", type=int, default=100_000,
                        help="minimum corpus tokens for language inclusion (default 100000)")
    parser.add_argument("--flexibility-gate", type=float, default=0.025,
                        help="minimum class flexibility for language inclusion (default 0.025)")


def _write_output(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _cmd_census(args: argparse.Namespace) -> int:
    config = RunConfig(
        corpora=_parse_language_paths(args.corpus),
        thresholds=_thresholds(args),
        full_precision=args.full_precision,
        threads=args.threads,
    )
    outputs = run_census(config)
    _write_output(args.out, render_census_tsv(outputs, args.full_precision))
    if args.clusters_out:
        directory = Path(args.clusters_out)
        directory.mkdir(parents=True, exist_ok=True)
        for language, output in outputs.items():
            (directory / f"{language}.clusters.tsv").write_text(
                output.clusters.dump_tsv(), encoding="utf-8"
            )
    if args.records_out:
        directory = Path(args.records_out)
        directory.mkdir(parents=True, exist_ok=True)
        for language, output in outputs.items():
            (directory / f"{language}.records.tsv").write_text(
                render_records_tsv(output.records), encoding="utf-8"
            )
    return EXIT_OK


def _cmd_metrics(args: argparse.Namespace) -> int:
    config = RunConfig(
        corpora=_parse_language_paths(args.corpus),
        stores=_parse_store_paths(args.store),
        thresholds=_thresholds(args),
        seed=args.seed,
        full_precision=args.full_precision,
        downsample_prototypes=args.downsample_prototypes,
        threads=args.threads,
    )
    results = run_metrics(config)
    _write_output(args.out, render_metrics_tsv(results, args.full_precision))
    return EXIT_OK


def _cmd_probe(args: argparse.Namespace) -> int:
    if args.ratings:
        with open(args.ratings, encoding="utf-8") as handle:
            ratings = load_ratings(handle)
    else:
        ratings = load_bundled_ratings()
    layer_stores = []
    for path in args.store:
        with open(path, "rb") as handle:
            layer_stores.append(read_store(handle))
    baseline = None
    if args.baseline:
        with open(args.baseline, "rb") as handle:
            baseline = read_store(handle)
    curve = probe(layer_stores, ratings, baseline)
    _write_output(args.out, render_probe_tsv(curve, args.full_precision))
    return EXIT_OK


def _cmd_pca(args: argparse.Namespace) -> int:
    with open(args.store, "rb") as handle:
        store = read_store(handle)
    by_key = {record.cluster_key: record for record in store.records}
    if args.key not in by_key:
        raise DataError(f"cluster {args.key!r} not present in {args.store}")
    emit_pca_plot(by_key[args.key], args.out_tsv, args.out_svg, args.full_precision)
    return EXIT_OK


def _cmd_synth(args: argparse.Namespace) -> int:
    store = synth_store(
        lemma_count=args.lemmas,
        noun_count=args.noun_count,
        verb_count=args.verb_count,
        dimension=args.dim,
        class_offset=args.class_offset,
        seed=args.seed,
        layer_label=args.layer_label,
        key_prefix=args.key_prefix,
    )
    with open(args.out, "wb") as handle:
        write_store(store, handle)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flexlex",
        description="Noun/verb flexibility censuses and embedding shift metrics",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    census = subparsers.add_parser("census", help="per-language flexibility census")
    census.add_argument("--corpus", action="append", required=True, metavar="LANG=PATH",
                        help="CoNLL-U file for a language (repeatable)")
    census.add_argument("--out", default=None, help="census TSV path (default stdout)")
    census.add_argument("--clusters-out", default=None,
                        help="directory for per-language cluster TSV dumps")
    census.add_argument("--records-out", default=None,
                        help="directory for per-language cluster-record TSV dumps")
    _add_threshold_flags(census)
    census.add_argument("--full-precision", action="store_true")
    census.add_argument("--threads", type=int, default=None)
    census.set_defaults(handler=_cmd_census)

    metrics = subparsers.add_parser("metrics", help="language-level shift and variation metrics")
    metrics.add_argument("--store", action="append", required=True, metavar="LANG=PATH",
                         help="embedding store for a language (repeatable)")
    metrics.add_argument("--corpus", action="append", default=[], metavar="LANG=PATH",
                         help="CoNLL-U file for dominance labels (repeatable)")
    metrics.add_argument("--out", default=None, help="metrics TSV path (default stdout)")
    metrics.add_argument("--seed", type=int, default=0, help="global sampling seed (default 0)")
    metrics.add_argument("--downsample-prototypes", action="store_true",
                         help="compute prototypes and shift on the downsampled sets too")
    _add_threshold_flags(metrics)
    metrics.add_argument("--full-precision", action="store_true")
    metrics.add_argument("--threads", type=int, default=None)
    metrics.set_defaults(handler=_cmd_metrics)

    probe_cmd = subparsers.add_parser("probe", help="correlate layer stores with human ratings")
    probe_cmd.add_argument("--store", action="append", required=True, metavar="PATH",
                           help="layer store (repeatable; label read from the file)")
    probe_cmd.add_argument("--baseline", default=None, help="static-vector store")
    probe_cmd.add_argument("--ratings", default=None,
                           help="ratings TSV (default: bundled 138-word set)")
    probe_cmd.add_argument("--out", default=None, help="probe TSV path (default stdout)")
    probe_cmd.add_argument("--full-precision", action="store_true")
    probe_cmd.set_defaults(handler=_cmd_probe)

    pca = subparsers.add_parser("pca", help="2-D projection plot for one cluster")
    pca.add_argument("--store", required=True, help="embedding store path")
    pca.add_argument("--key", required=True, help="cluster key to project")
    pca.add_argument("--out-tsv", required=True, help="projected points TSV path")
    pca.add_argument("--out-svg", required=True, help="scatter plot SVG path")
    pca.add_argument("--full-precision", action="store_true")
    pca.set_defaults(handler=_cmd_pca)

    synth = subparsers.add_parser("synth", help="generate a synthetic embedding store")
    synth.add_argument("--out", required=True, help="output store path")
    synth.add_argument("--lemmas", type=int, default=20)
    synth.add_argument("--noun-count", type=int, default=40)
    synth.add_argument("--verb-count", type=int, default=30)
    synth.add_argument("--dim", type=int, default=16)
    synth.add_argument("--class-offset", type=float, default=0.0)
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--layer-label", default="synthetic")
    synth.add_argument("--key-prefix", default="lemma")
    synth.set_defaults(handler=_cmd_synth)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ConfigurationError as error:
        print(f"configuration error: {error}", file=sys.stderr)
        return EXIT_CONFIGURATION
    except DataError as error:
        print(f"data error: {error}", file=sys.stderr)
        return EXIT_DATA
    except OSError as error:
        print(f"i/o error: {error}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
