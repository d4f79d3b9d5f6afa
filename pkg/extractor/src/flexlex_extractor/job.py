"""Extraction jobs: a frozen config dataclass and its key=value file format.

Job files are flat `key=value` lines; blank lines and `#` comments are
ignored. Required keys wire the inputs (corpus, clusters, records,
out_dir); a contextual pass needs `model` and `layers`, a static pass
needs `static_vectors`, and a job must request at least one of the two.

Example:

    corpus=en.conllu
    clusters=en.clusters.tsv
    records=en.records.tsv
    out_dir=stores/
    model=models/bert-tiny
    layers=0,2,4
    static_vectors=glove.txt
    batch_size=16
    pooling=mean
    selection=flexible
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import JobConfigError

POOLING_MODES = ("mean", "first")
SELECTION_MODES = ("flexible", "all")

_REQUIRED_KEYS = ("corpus", "clusters", "records", "out_dir")
_OPTIONAL_KEYS = (
    "model", "layers", "static_vectors", "batch_size", "pooling", "selection",
)


@dataclass(frozen=True, slots=True)
class ExtractionJob:
    """Everything one extraction run needs, validated up front."""

    corpus: tuple[Path, ...]
    clusters: Path
    records: Path
    out_dir: Path
    model: Path | None = None
    layers: tuple[int, ...] = ()
    static_vectors: Path | None = None
    batch_size: int = 16
    pooling: str = "mean"
    selection: str = "flexible"

    def validate(self) -> None:
        if not self.corpus:
            raise JobConfigError("job needs at least one corpus path")
        if self.model is None and self.static_vectors is None:
            raise JobConfigError("job requests nothing: set model or static_vectors")
        if self.model is not None and not self.layers:
            raise JobConfigError("a model extraction needs layers, e.g. layers=0,4,8")
        if self.model is None and self.layers:
            raise JobConfigError("layers given without a model")
        if len(set(self.layers)) != len(self.layers):
            raise JobConfigError(f"duplicate layer indices in {self.layers}")
        if any(layer < 0 for layer in self.layers):
            raise JobConfigError(f"negative layer index in {self.layers}")
        if self.batch_size < 1:
            raise JobConfigError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.pooling not in POOLING_MODES:
            raise JobConfigError(
                f"pooling must be one of {POOLING_MODES}, got {self.pooling!r}"
            )
        if self.selection not in SELECTION_MODES:
            raise JobConfigError(
                f"selection must be one of {SELECTION_MODES}, got {self.selection!r}"
            )


def _parse_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise JobConfigError(f"{key} must be an integer, got {value!r}") from None


def parse_job(lines, base_dir: Path) -> ExtractionJob:
    """Parse key=value lines into a job; paths resolve against base_dir."""
    values: dict[str, str] = {}
    for line_number, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, separator, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not separator or not key or not value:
            raise JobConfigError(f"line {line_number}: expected key=value, got {line!r}")
        if key not in _REQUIRED_KEYS and key not in _OPTIONAL_KEYS:
            raise JobConfigError(f"line {line_number}: unknown key {key!r}")
        if key in values:
            raise JobConfigError(f"line {line_number}: duplicate key {key!r}")
        values[key] = value
    missing = [key for key in _REQUIRED_KEYS if key not in values]
    if missing:
        raise JobConfigError(f"missing required keys: {', '.join(missing)}")

    def path(value: str) -> Path:
        candidate = Path(value)
        return candidate if candidate.is_absolute() else base_dir / candidate

    layers: tuple[int, ...] = ()
    if "layers" in values:
        layers = tuple(
            _parse_int("layers", part.strip()) for part in values["layers"].split(",")
        )
    job = ExtractionJob(
        corpus=tuple(path(part.strip()) for part in values["corpus"].split(",")),
        clusters=path(values["clusters"]),
        records=path(values["records"]),
        out_dir=path(values["out_dir"]),
        model=path(values["model"]) if "model" in values else None,
        layers=layers,
        static_vectors=path(values["static_vectors"]) if "static_vectors" in values else None,
        batch_size=_parse_int("batch_size", values.get("batch_size", "16")),
        pooling=values.get("pooling", "mean"),
        selection=values.get("selection", "flexible"),
    )
    job.validate()
    return job


def load_job(path: str | Path) -> ExtractionJob:
    """Read and validate a job file; relative paths resolve beside it."""
    path = Path(path)
    with open(path, encoding="utf-8") as handle:
        return parse_job(handle, path.parent)
