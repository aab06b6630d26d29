import json

import httpx
import numpy as np
import pytest

from mmrag.embed import (
    FineTuneSpec,
    ProviderConfig,
    ProviderKind,
    caption_image,
    deterministic_test_embedding,
    embed_images,
    embed_texts,
    emit_finetune_job,
    llama_qlora_preset,
    llava_qlora_preset,
    parse_finetune_job,
)
from mmrag.errors import ProtocolError, TransportError, ValidationError


def det_provider(dim=8, normalize=True, seed=0):
    return ProviderConfig(kind=ProviderKind.DETERMINISTIC_TEST, dim=dim,
                          normalize=normalize, seed=seed)


def test_deterministic_same_inputs_bitwise_equal():
    a = deterministic_test_embedding(b"hello", 16, 7)
    b = deterministic_test_embedding(b"hello", 16, 7)
    assert np.array_equal(a, b)


def test_deterministic_seed_changes_vector():
    a = deterministic_test_embedding(b"hello", 16, 0)
    b = deterministic_test_embedding(b"hello", 16, 1)
    assert np.any(a != b)


def test_deterministic_unit_norm():
    vec = deterministic_test_embedding(b"content", 32, 0)
    assert abs(np.linalg.norm(vec) - 1.0) < 1e-9


def test_embed_texts_identical_inputs():
    vecs = embed_texts(det_provider(), ["a", "a"])
    assert np.array_equal(vecs[0].values, vecs[1].values)
    assert vecs[0].modality == "text"


def test_embed_texts_normalized():
    for vec in embed_texts(det_provider(dim=8), ["x", "y", "z"]):
        assert abs(np.linalg.norm(vec.values) - 1.0) < 1e-6


def test_embed_images_empty():
    assert embed_images(det_provider(), []) == []


def test_embed_images_deterministic(png_bytes):
    a = embed_images(det_provider(), [("i1", png_bytes)])
    b = embed_images(det_provider(), [("i1", png_bytes)])
    assert np.array_equal(a[0].values, b[0].values)
    assert a[0].modality == "image"
    assert a[0].source_id == "i1"


def _embedding_transport(dim, count=None):
    def handler(request):
        body = json.loads(request.content)
        n = count if count is not None else len(body["input"])
        data = [{"embedding": [float(i + j) for j in range(dim)]} for i in range(n)]
        return httpx.Response(200, json={"data": data})

    return httpx.MockTransport(handler)


def remote_provider(dim=8):
    return ProviderConfig(kind=ProviderKind.REMOTE_TEXT, endpoint="http://embedder",
                          dim=dim, normalize=False)


def test_remote_passthrough_with_source_ids():
    vecs = embed_texts(remote_provider(), ["a", "b", "c"], ids=["x", "y", "z"],
                       transport=_embedding_transport(8))
    assert [v.source_id for v in vecs] == ["x", "y", "z"]
    assert vecs[1].values[0] == 1.0


def test_remote_dimension_mismatch():
    provider = ProviderConfig(kind=ProviderKind.REMOTE_IMAGE, endpoint="http://embedder",
                              dim=8, normalize=False)
    with pytest.raises(ProtocolError):
        embed_images(provider, [("i", b"bytes")], transport=_embedding_transport(7))


def test_remote_transport_error():
    def handler(request):
        raise httpx.ConnectError("down", request=request)

    with pytest.raises(TransportError):
        embed_texts(remote_provider(), ["a"], transport=httpx.MockTransport(handler))


def test_caption_deterministic(png_bytes):
    provider = det_provider()
    cap1 = caption_image(provider, png_bytes)
    cap2 = caption_image(provider, png_bytes)
    assert cap1 == cap2
    assert cap1.startswith("image:") and len(cap1) == len("image:") + 8


def test_caption_remote_passthrough(png_bytes):
    def handler(request):
        return httpx.Response(
            200, json={"choices": [{"message": {"content": "MRI coronal slice"}}]})

    provider = ProviderConfig(kind=ProviderKind.REMOTE_CAPTION, endpoint="http://cap")
    assert caption_image(provider, png_bytes,
                         transport=httpx.MockTransport(handler)) == "MRI coronal slice"


def test_caption_remote_down(png_bytes):
    def handler(request):
        raise httpx.ConnectError("down", request=request)

    provider = ProviderConfig(kind=ProviderKind.REMOTE_CAPTION, endpoint="http://cap")
    with pytest.raises(TransportError):
        caption_image(provider, png_bytes, transport=httpx.MockTransport(handler))


# -- fine-tune descriptors -------------------------------------------------

def test_llama_preset_values():
    spec = llama_qlora_preset()
    assert spec.lora_r == 64
    assert spec.lora_alpha == 16
    assert spec.lora_dropout == 0.1
    assert spec.learning_rate == 2e-4
    assert spec.weight_decay == 0.001
    assert spec.warmup_ratio == 0.03
    assert spec.optimizer == "paged_adamw_32bit"
    assert spec.scheduler == "cosine"
    assert spec.epochs == 1
    assert spec.per_device_batch == 4
    assert spec.grad_accum_steps == 1
    assert spec.max_grad_norm == 0.3


def test_llava_preset_values():
    spec = llava_qlora_preset()
    assert spec.lora_r == 128
    assert spec.lora_alpha == 256
    assert spec.projector_lr == 2e-5
    assert spec.quant_bits == 4
    assert spec.learning_rate == 2e-4
    assert spec.weight_decay == 0.001
    assert spec.warmup_ratio == 0.03


def test_round_trip():
    spec = llama_qlora_preset()
    assert parse_finetune_job(emit_finetune_job(spec)) == spec


def test_invalid_spec_names_field():
    spec = llama_qlora_preset()
    spec.quant_bits = 3
    with pytest.raises(ValidationError) as err:
        emit_finetune_job(spec)
    assert err.value.field == "quant_bits"


def test_presets_match_golden_files():
    import pathlib

    root = pathlib.Path(__file__).resolve().parents[1] / "configs" / "finetune"
    assert emit_finetune_job(llama_qlora_preset()) == (root / "llama_qlora.json").read_text()
    assert emit_finetune_job(llava_qlora_preset()) == (root / "llava_qlora.json").read_text()
