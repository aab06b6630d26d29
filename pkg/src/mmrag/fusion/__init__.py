"""Cross-modal attention fusion and its ablation baselines."""

from .attention import (
    ModalityEmbeddings,
    ProjectionInit,
    ProjectionWeights,
    aggregate,
    attention_scores,
    combine_features,
    project,
    softmax_rows,
)
from .fuse import (
    MODE_CONCAT,
    MODE_CROSS_ATTENTION,
    MODE_TEXT_ONLY,
    FusedRecord,
    FusionConfig,
    cross_modal_fuse,
    naive_concat_fuse,
    read_fused,
    text_only_records,
    write_fused,
)

__all__ = [
    "ModalityEmbeddings", "ProjectionWeights", "ProjectionInit",
    "project", "attention_scores", "softmax_rows", "aggregate", "combine_features",
    "FusionConfig", "FusedRecord", "cross_modal_fuse", "naive_concat_fuse",
    "text_only_records", "write_fused", "read_fused",
    "MODE_CROSS_ATTENTION", "MODE_CONCAT", "MODE_TEXT_ONLY",
]
