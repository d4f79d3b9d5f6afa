"""Embedding extraction into WCF1 stores for the flexibility toolkit.

The lightweight pieces (job files, cluster tables, store writing) are
re-exported here; the model-driven passes live in the `extract` and
`static` submodules so importing the package does not pull in torch.
"""
from .clusters import ClusterRecord, Target, collect_targets, fold, load_cluster_map, load_records
from .corpus import Word, load_corpus, parse_sentences
from .errors import ExtractorError, InputDataError, JobConfigError, ModelError
from .job import ExtractionJob, load_job, parse_job
from .store import StoreBuilder

__version__ = "0.1.0"

__all__ = [
    "ClusterRecord",
    "ExtractionJob",
    "ExtractorError",
    "InputDataError",
    "JobConfigError",
    "ModelError",
    "StoreBuilder",
    "Target",
    "Word",
    "collect_targets",
    "fold",
    "load_cluster_map",
    "load_corpus",
    "load_job",
    "load_records",
    "parse_job",
    "parse_sentences",
    "__version__",
]
