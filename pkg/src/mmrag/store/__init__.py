"""Vector index (flat and HNSW) plus the id-addressed object store."""

from .hnsw import HnswGraph
from .index import (
    BACKEND_FLAT,
    BACKEND_HNSW,
    METRIC_COSINE,
    METRIC_INNER_PRODUCT,
    HnswParams,
    ScoredHit,
    VectorIndex,
)
from .objects import ObjectStore

__all__ = [
    "VectorIndex", "ScoredHit", "HnswParams", "HnswGraph", "ObjectStore",
    "METRIC_COSINE", "METRIC_INNER_PRODUCT", "BACKEND_FLAT", "BACKEND_HNSW",
]
