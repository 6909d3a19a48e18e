"""Self-indexed top-k document retrieval over wavelet trees."""

__version__ = "0.1.0"

from .corpus import Collection, CollectionStats, Vocabulary, ingest, ingest_lines, ingest_path
from .engine import ConfigError, SearchConfig, TraversalStats, exhaustive_states, top_k
from .index import SearchIndex, build_index, derive_variant
from .ranking import MeasureParams
from .storage import IndexFormatError, load_index, save_index

__all__ = [
    "Collection",
    "CollectionStats",
    "ConfigError",
    "IndexFormatError",
    "MeasureParams",
    "SearchConfig",
    "SearchIndex",
    "TraversalStats",
    "Vocabulary",
    "build_index",
    "derive_variant",
    "exhaustive_states",
    "ingest",
    "ingest_lines",
    "ingest_path",
    "load_index",
    "save_index",
    "top_k",
    "__version__",
]
