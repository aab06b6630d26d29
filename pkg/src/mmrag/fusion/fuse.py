"""Fusion strategies: cross-modal attention, naive concatenation, text-only."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import ValidationError
from .attention import (
    ModalityEmbeddings,
    ProjectionWeights,
    aggregate,
    attention_scores,
    combine_features,
    project,
    softmax_rows,
)

logger = logging.getLogger(__name__)

MODE_CROSS_ATTENTION = "cross_attention"
MODE_CONCAT = "concat"
MODE_TEXT_ONLY = "text_only"


@dataclass
class FusionConfig:
    combine: str = "concat"  # "concat" or "mean"
    provenance_threshold: float = 0.1  # min attention weight to credit an image
    symmetric: bool = False  # also run image-as-query and pool the result


@dataclass
class FusedRecord:
    vector: np.ndarray
    text_ids: list[str]
    image_ids: list[str]
    mode: str

    def __post_init__(self):
        self.vector = np.asarray(self.vector, dtype=np.float64).ravel()
        if self.vector.size and not np.all(np.isfinite(self.vector)):
            raise ValueError("fused vector contains non-finite values")
        if not self.text_ids and not self.image_ids:
            raise ValueError("fused record needs at least one provenance id")

    def to_dict(self) -> dict:
        return {
            "vector": self.vector.tolist(),
            "text_ids": self.text_ids,
            "image_ids": self.image_ids,
            "mode": self.mode,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FusedRecord":
        return cls(np.asarray(d["vector"]), d["text_ids"], d["image_ids"], d["mode"])


def text_only_records(text: ModalityEmbeddings) -> list[FusedRecord]:
    return [
        FusedRecord(text.matrix[i].copy(), [text.ids[i]], [], MODE_TEXT_ONLY)
        for i in range(text.n)
    ]


def cross_modal_fuse(
    text: ModalityEmbeddings,
    image: ModalityEmbeddings,
    weights: ProjectionWeights,
    config: FusionConfig | None = None,
) -> list[FusedRecord]:
    """Text queries attend over image keys/values; one record per text item.

    Each record's vector is combine(text embedding, image-attended aggregate)
    and its image provenance lists every image whose attention weight reached
    the configured threshold. An empty image side degrades to text-only.
    """
    config = config or FusionConfig()
    if image.n == 0:
        logger.warning("no image embeddings; emitting text-only records")
        return text_only_records(text)

    queries = project(text, weights, "query")
    keys = project(image, weights, "key")
    values = project(image, weights, "value")
    attn = softmax_rows(attention_scores(queries, keys, weights.d_k))
    aggregated = aggregate(attn, values)

    pooled_i2t = None
    if config.symmetric:
        i_queries = project(image, weights, "query")
        t_keys = project(text, weights, "key")
        t_values = project(text, weights, "value")
        i2t = aggregate(softmax_rows(attention_scores(i_queries, t_keys, weights.d_k)), t_values)
        pooled_i2t = i2t.mean(axis=0)

    records = []
    for i in range(text.n):
        vec = combine_features(text.matrix[i], aggregated[i], config.combine)
        if pooled_i2t is not None:
            vec = np.concatenate([vec, pooled_i2t])
        attended = [
            image.ids[j] for j in range(image.n)
            if attn[i, j] >= config.provenance_threshold
        ]
        records.append(FusedRecord(vec, [text.ids[i]], attended, MODE_CROSS_ATTENTION))
    return records


def naive_concat_fuse(
    text: ModalityEmbeddings,
    image: ModalityEmbeddings,
    pairing: dict[str, str],
) -> list[FusedRecord]:
    """Ablation baseline: concatenate each text vector with its paired image
    vector, or zeros when unpaired. No interaction between modalities."""
    image_rows = {image.ids[j]: image.matrix[j] for j in range(image.n)}
    for text_id, image_id in pairing.items():
        if image_id not in image_rows:
            raise ValidationError(f"pairing references unknown image id {image_id!r}", text_id)
    d_image = image.d if image.n else 0
    records = []
    for i in range(text.n):
        image_id = pairing.get(text.ids[i])
        if image_id is not None:
            image_vec = image_rows[image_id]
            image_ids = [image_id]
        else:
            image_vec = np.zeros(d_image)
            image_ids = []
        records.append(
            FusedRecord(np.concatenate([text.matrix[i], image_vec]),
                        [text.ids[i]], image_ids, MODE_CONCAT)
        )
    return records


def write_fused(records: list[FusedRecord], path: str | Path):
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_dict()) + "\n")


def read_fused(path: str | Path) -> list[FusedRecord]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                records.append(FusedRecord.from_dict(json.loads(line)))
    return records
