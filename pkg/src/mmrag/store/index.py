"""Vector index with exact and approximate backends.

flat_exact scans the whole matrix and is the correctness oracle; hnsw trades
exactness for sublinear search. Cosine mode stores unit-normalized copies so
both backends reduce to dot products. Flat search is fully deterministic,
ties broken by ascending id.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import FormatError, ShapeError
from .hnsw import HnswGraph

METRIC_COSINE = "cosine"
METRIC_INNER_PRODUCT = "inner_product"
BACKEND_FLAT = "flat_exact"
BACKEND_HNSW = "hnsw"

_MAGIC = b"MMRAGIDX"
_VERSION = 1
_METRIC_CODES = {METRIC_COSINE: 0, METRIC_INNER_PRODUCT: 1}
_BACKEND_CODES = {BACKEND_FLAT: 0, BACKEND_HNSW: 1}


@dataclass(frozen=True)
class ScoredHit:
    id: str
    score: float


@dataclass
class HnswParams:
    m: int = 16
    ef_construction: int = 200
    # 64 is the textbook starting point but lands near recall 0.87 on random
    # isotropic 64-d data; 128 clears 0.95 at ~2x search cost.
    ef_search: int = 128
    seed: int = 42


class VectorIndex:
    def __init__(
        self,
        dim: int,
        metric: str = METRIC_COSINE,
        backend: str = BACKEND_FLAT,
        hnsw_params: HnswParams | None = None,
    ):
        if metric not in _METRIC_CODES:
            raise ValueError(f"unknown metric {metric!r}")
        if backend not in _BACKEND_CODES:
            raise ValueError(f"unknown backend {backend!r}")
        self.dim = dim
        self.metric = metric
        self.backend = backend
        self.hnsw_params = hnsw_params or HnswParams()
        self._entries: dict[str, np.ndarray] = {}
        self._graph: HnswGraph | None = None  # rebuilt lazily after upserts

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, id: str) -> bool:
        return id in self._entries

    def _prepare(self, vector) -> np.ndarray:
        vec = np.asarray(vector, dtype=np.float64).ravel()
        if vec.shape != (self.dim,):
            raise ShapeError(f"index dim is {self.dim}, got vector of length {vec.shape[0]}")
        if self.metric == METRIC_COSINE:
            norm = np.linalg.norm(vec)
            if norm > 0:
                vec = vec / norm
        return vec

    def upsert(self, id: str, vector):
        self._entries[id] = self._prepare(vector)
        self._graph = None

    def ids(self) -> list[str]:
        return list(self._entries)

    def get(self, id: str) -> np.ndarray:
        return self._entries[id]

    def _build_graph(self) -> HnswGraph:
        p = self.hnsw_params
        graph = HnswGraph(self.dim, m=p.m, ef_construction=p.ef_construction, seed=p.seed)
        for vec in self._entries.values():
            graph.add(vec)
        return graph

    def search(self, query, k: int) -> list[ScoredHit]:
        """Top-k by descending score; flat_exact is exact, hnsw approximate."""
        if k < 1:
            raise ValueError("k must be >= 1")
        if not self._entries:
            return []
        q = self._prepare(query)
        ids = list(self._entries)
        if self.backend == BACKEND_FLAT:
            matrix = np.stack([self._entries[i] for i in ids])
            scores = matrix @ q
            order = sorted(range(len(ids)), key=lambda i: (-scores[i], ids[i]))[:k]
            return [ScoredHit(ids[i], float(scores[i])) for i in order]
        if self._graph is None or len(self._graph) != len(self._entries):
            self._graph = self._build_graph()
        hits = self._graph.search(q, k, ef_search=self.hnsw_params.ef_search)
        return [ScoredHit(ids[node], float(sim)) for sim, node in hits]

    # -- persistence -----------------------------------------------------

    def save(self, path: str | Path):
        p = self.hnsw_params
        with open(path, "wb") as fh:
            fh.write(_MAGIC)
            fh.write(struct.pack("<IIBB", _VERSION, self.dim,
                                 _METRIC_CODES[self.metric], _BACKEND_CODES[self.backend]))
            fh.write(struct.pack("<IIIQ", p.m, p.ef_construction, p.ef_search, p.seed))
            fh.write(struct.pack("<Q", len(self._entries)))
            for id, vec in self._entries.items():
                encoded = id.encode("utf-8")
                fh.write(struct.pack("<H", len(encoded)))
                fh.write(encoded)
                fh.write(vec.tobytes())

    @classmethod
    def load(cls, path: str | Path) -> "VectorIndex":
        with open(path, "rb") as fh:
            magic = fh.read(len(_MAGIC))
            if magic != _MAGIC:
                raise FormatError(f"bad magic: expected {_MAGIC!r}, found {magic!r}")
            version, dim, metric_code, backend_code = struct.unpack("<IIBB", fh.read(10))
            if version > _VERSION:
                raise FormatError(f"unsupported format version {version} (newest supported: {_VERSION})")
            m, efc, efs, seed = struct.unpack("<IIIQ", fh.read(20))
            (count,) = struct.unpack("<Q", fh.read(8))
            metric = {v: k for k, v in _METRIC_CODES.items()}[metric_code]
            backend = {v: k for k, v in _BACKEND_CODES.items()}[backend_code]
            index = cls(dim, metric=metric, backend=backend,
                        hnsw_params=HnswParams(m, efc, efs, seed))
            for _ in range(count):
                (id_len,) = struct.unpack("<H", fh.read(2))
                id = fh.read(id_len).decode("utf-8")
                vec = np.frombuffer(fh.read(8 * dim), dtype=np.float64).copy()
                index._entries[id] = vec
            return index
