"""Scaled dot-product attention primitives for cross-modal fusion.

Single-head only. Text items act as queries attending over image items as
keys/values; projections are either identity (for tests) or a seeded random
matrix scaled by 1/sqrt(d), since no training happens in this package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ..errors import ShapeError


class ProjectionInit(str, Enum):
    IDENTITY = "identity"
    SEEDED_RANDOM = "seeded_random"


@dataclass
class ModalityEmbeddings:
    modality: str  # "text" or "image"
    matrix: np.ndarray  # n x d
    ids: list[str]

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=np.float64)
        if self.matrix.ndim != 2:
            self.matrix = self.matrix.reshape(len(self.ids), -1)
        if self.matrix.shape[0] != len(self.ids):
            raise ShapeError(
                f"{self.matrix.shape[0]} rows but {len(self.ids)} ids")
        if self.matrix.size and not np.all(np.isfinite(self.matrix)):
            raise ValueError("embeddings contain non-finite values")

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def d(self) -> int:
        return self.matrix.shape[1]


@dataclass
class ProjectionWeights:
    w_q: np.ndarray
    w_k: np.ndarray
    w_v: np.ndarray
    d_k: int
    init: ProjectionInit = ProjectionInit.SEEDED_RANDOM
    seed: int = 0

    @classmethod
    def identity(cls, d: int) -> "ProjectionWeights":
        eye = np.eye(d)
        return cls(w_q=eye, w_k=eye.copy(), w_v=eye.copy(), d_k=d,
                   init=ProjectionInit.IDENTITY)

    @classmethod
    def seeded(cls, d: int, d_k: int, seed: int = 0) -> "ProjectionWeights":
        # Uniform in [-1, 1] scaled by 1/sqrt(d) keeps projected norms O(1).
        rng = np.random.default_rng(seed)
        scale = 1.0 / math.sqrt(d)
        mats = [rng.uniform(-scale, scale, size=(d, d_k)) for _ in range(3)]
        return cls(w_q=mats[0], w_k=mats[1], w_v=mats[2], d_k=d_k,
                   init=ProjectionInit.SEEDED_RANDOM, seed=seed)


def project(source: ModalityEmbeddings, weights: ProjectionWeights, role: str) -> np.ndarray:
    """Apply the query/key/value projection for the given role."""
    w = {"query": weights.w_q, "key": weights.w_k, "value": weights.w_v}[role]
    if source.d != w.shape[0]:
        raise ShapeError(f"embedding dim {source.d} vs projection rows {w.shape[0]}")
    return source.matrix @ w


def attention_scores(queries: np.ndarray, keys: np.ndarray, d_k: int) -> np.ndarray:
    """scores[i, j] = dot(q_i, k_j) / sqrt(d_k)."""
    if d_k <= 0:
        raise ValueError("d_k must be positive")
    queries = np.atleast_2d(np.asarray(queries, dtype=np.float64))
    keys = np.atleast_2d(np.asarray(keys, dtype=np.float64))
    if queries.shape[1] != d_k or keys.shape[1] != d_k:
        raise ShapeError(
            f"queries have {queries.shape[1]} cols, keys {keys.shape[1]}, expected d_k={d_k}")
    return (queries @ keys.T) / math.sqrt(d_k)


def softmax_rows(scores: np.ndarray) -> np.ndarray:
    """Row-wise softmax with max subtraction for numeric stability."""
    scores = np.atleast_2d(np.asarray(scores, dtype=np.float64))
    shifted = scores - scores.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


def aggregate(weights: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Weighted sum of value rows: (n x m) @ (m x d)."""
    weights = np.atleast_2d(np.asarray(weights, dtype=np.float64))
    values = np.atleast_2d(np.asarray(values, dtype=np.float64))
    if weights.shape[1] != values.shape[0]:
        raise ShapeError(
            f"weights have {weights.shape[1]} cols but values {values.shape[0]} rows")
    return weights @ values


def combine_features(text_aggr: np.ndarray, image_aggr: np.ndarray, combine: str = "concat") -> np.ndarray:
    """Merge per-modality aggregates into one fused vector."""
    text_aggr = np.asarray(text_aggr, dtype=np.float64).ravel()
    image_aggr = np.asarray(image_aggr, dtype=np.float64).ravel()
    if combine == "concat":
        return np.concatenate([text_aggr, image_aggr])
    if combine == "mean":
        if text_aggr.shape != image_aggr.shape:
            raise ShapeError(
                f"mean combine needs equal lengths, got {text_aggr.shape[0]} and {image_aggr.shape[0]}")
        return (text_aggr + image_aggr) / 2.0
    raise ValueError(f"unknown combine mode {combine!r}")
