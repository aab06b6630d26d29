"""Serializable fine-tuning job descriptors.

GPU fine-tuning runs elsewhere; this module only describes the jobs. Two
bundled presets carry the QLoRA settings used for the text encoder (a
Llama-2-7b base) and the vision-language captioner (a LLaVA base).
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Optional

from ..errors import ValidationError


@dataclass
class FineTuneSpec:
    base_model: str
    lora_r: int
    lora_alpha: int
    lora_dropout: float
    learning_rate: float
    weight_decay: float
    warmup_ratio: float
    optimizer: str
    scheduler: str
    epochs: int
    per_device_batch: int
    grad_accum_steps: int
    max_grad_norm: float
    quant_bits: int
    gradient_checkpointing: bool
    projector_lr: Optional[float] = None

    def validate(self):
        if not (0 <= self.lora_dropout < 1):
            raise ValidationError("must be in [0, 1)", "lora_dropout")
        if self.quant_bits not in (4, 8, 16):
            raise ValidationError("must be one of 4, 8, 16", "quant_bits")
        if self.learning_rate <= 0:
            raise ValidationError("must be positive", "learning_rate")
        if self.epochs < 1:
            raise ValidationError("must be >= 1", "epochs")
        return self


def llama_qlora_preset() -> FineTuneSpec:
    return FineTuneSpec(
        base_model="llama-2-7b-pubmed",
        lora_r=64,
        lora_alpha=16,
        lora_dropout=0.1,
        learning_rate=2e-4,
        weight_decay=0.001,
        warmup_ratio=0.03,
        optimizer="paged_adamw_32bit",
        scheduler="cosine",
        epochs=1,
        per_device_batch=4,
        grad_accum_steps=1,
        max_grad_norm=0.3,
        quant_bits=4,
        gradient_checkpointing=True,
    )


def llava_qlora_preset() -> FineTuneSpec:
    # Fields beyond the published LLaVA settings reuse the text-encoder values.
    return FineTuneSpec(
        base_model="llava-v1.5-7b",
        lora_r=128,
        lora_alpha=256,
        lora_dropout=0.05,
        learning_rate=2e-4,
        weight_decay=0.001,
        warmup_ratio=0.03,
        optimizer="paged_adamw_32bit",
        scheduler="cosine",
        epochs=1,
        per_device_batch=4,
        grad_accum_steps=1,
        max_grad_norm=0.3,
        quant_bits=4,
        gradient_checkpointing=True,
        projector_lr=2e-5,
    )


PRESETS = {"llama": llama_qlora_preset, "llava": llava_qlora_preset}


def emit_finetune_job(spec: FineTuneSpec) -> str:
    """Round-trippable JSON descriptor with every field present."""
    spec.validate()
    return json.dumps(asdict(spec), indent=2, sort_keys=True) + "\n"


def parse_finetune_job(text: str) -> FineTuneSpec:
    return FineTuneSpec(**json.loads(text)).validate()
