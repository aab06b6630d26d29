"""Pluggable text/image embedding, captioning and fine-tune job descriptors."""

from .finetune import (
    PRESETS,
    FineTuneSpec,
    emit_finetune_job,
    llama_qlora_preset,
    llava_qlora_preset,
    parse_finetune_job,
)
from .providers import (
    EmbeddingVector,
    ProviderConfig,
    ProviderKind,
    caption_image,
    deterministic_test_embedding,
    embed_images,
    embed_texts,
)

__all__ = [
    "EmbeddingVector", "ProviderConfig", "ProviderKind",
    "embed_texts", "embed_images", "caption_image", "deterministic_test_embedding",
    "FineTuneSpec", "emit_finetune_job", "parse_finetune_job",
    "llama_qlora_preset", "llava_qlora_preset", "PRESETS",
]
