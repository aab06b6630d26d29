"""Embedding and captioning providers.

Two families: remote providers speaking an embeddings / chat-completions
style JSON protocol, and a deterministic test provider that derives vectors
from a content hash so the full pipeline runs offline and reproducibly.
Swapping one for the other changes no type shapes downstream.
"""

from __future__ import annotations

import base64
import hashlib
from dataclasses import dataclass, field
from enum import Enum

import httpx
import numpy as np

from ..errors import ProtocolError, TransportError


class ProviderKind(str, Enum):
    REMOTE_TEXT = "remote_text"
    REMOTE_IMAGE = "remote_image"
    REMOTE_CAPTION = "remote_caption"
    DETERMINISTIC_TEST = "deterministic_test"


_REMOTE_KINDS = {ProviderKind.REMOTE_TEXT, ProviderKind.REMOTE_IMAGE, ProviderKind.REMOTE_CAPTION}


@dataclass
class ProviderConfig:
    kind: ProviderKind
    endpoint: str = ""
    model_name: str = ""
    dim: int = 64
    timeout: float = 30.0
    normalize: bool = True
    seed: int = 0

    def __post_init__(self):
        if isinstance(self.kind, str):
            self.kind = ProviderKind(self.kind)
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if self.kind in _REMOTE_KINDS and not self.endpoint:
            raise ValueError(f"{self.kind.value} provider requires an endpoint")


@dataclass
class EmbeddingVector:
    dim: int
    values: np.ndarray
    modality: str  # "text" or "image"
    source_id: str

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.shape != (self.dim,):
            raise ProtocolError(f"expected {self.dim} values, got shape {self.values.shape}")
        if not np.all(np.isfinite(self.values)):
            raise ProtocolError("embedding contains non-finite values")


def deterministic_test_embedding(content: bytes, dim: int, seed: int = 0) -> np.ndarray:
    """Unit vector from a PRNG keyed by hash(content, seed); platform-stable."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    digest = hashlib.sha256(content + seed.to_bytes(8, "little", signed=True)).digest()
    rng = np.random.default_rng(int.from_bytes(digest[:8], "little"))
    vec = rng.standard_normal(dim)
    norm = np.linalg.norm(vec)
    if norm == 0.0:  # astronomically unlikely; keep the contract total
        vec = np.ones(dim)
        norm = np.linalg.norm(vec)
    return vec / norm


def _maybe_normalize(vec: np.ndarray, normalize: bool) -> np.ndarray:
    if not normalize:
        return vec
    norm = np.linalg.norm(vec)
    return vec / norm if norm > 0 else vec


def _post_json(provider: ProviderConfig, path: str, body: dict, transport=None) -> dict:
    url = provider.endpoint.rstrip("/") + path
    try:
        with httpx.Client(timeout=provider.timeout, transport=transport) as client:
            resp = client.post(url, json=body)
            resp.raise_for_status()
            return resp.json()
    except httpx.HTTPError as exc:
        raise TransportError(f"POST {url} failed: {exc}") from exc


def _remote_embed(provider: ProviderConfig, inputs: list[str], transport=None) -> list[np.ndarray]:
    payload = {"model": provider.model_name, "input": inputs}
    data = _post_json(provider, "/embeddings", payload, transport)
    try:
        rows = [np.asarray(item["embedding"], dtype=np.float64) for item in data["data"]]
    except (KeyError, TypeError) as exc:
        raise ProtocolError(f"malformed embeddings response: {exc}") from exc
    if len(rows) != len(inputs):
        raise ProtocolError(f"expected {len(inputs)} embeddings, got {len(rows)}")
    for row in rows:
        if row.shape != (provider.dim,):
            raise ProtocolError(f"provider declared dim {provider.dim} but returned {row.shape[0]}")
    return rows


def embed_texts(
    provider: ProviderConfig,
    texts: list[str],
    ids: list[str] | None = None,
    transport=None,
) -> list[EmbeddingVector]:
    """One text-modality vector per input string."""
    if ids is None:
        ids = [str(i) for i in range(len(texts))]
    if not texts:
        return []
    if provider.kind is ProviderKind.DETERMINISTIC_TEST:
        rows = [deterministic_test_embedding(t.encode("utf-8"), provider.dim, provider.seed)
                for t in texts]
    else:
        rows = _remote_embed(provider, texts, transport)
    return [
        EmbeddingVector(provider.dim, _maybe_normalize(row, provider.normalize), "text", sid)
        for row, sid in zip(rows, ids)
    ]


def embed_images(
    provider: ProviderConfig,
    images: list[tuple[str, bytes]],
    transport=None,
) -> list[EmbeddingVector]:
    """One image-modality vector per (id, bytes) pair."""
    if not images:
        return []
    if provider.kind is ProviderKind.DETERMINISTIC_TEST:
        rows = [deterministic_test_embedding(data, provider.dim, provider.seed)
                for _, data in images]
    else:
        encoded = [base64.b64encode(data).decode("ascii") for _, data in images]
        rows = _remote_embed(provider, encoded, transport)
    return [
        EmbeddingVector(provider.dim, _maybe_normalize(row, provider.normalize), "image", image_id)
        for row, (image_id, _) in zip(rows, images)
    ]


def caption_image(provider: ProviderConfig, image: bytes, transport=None) -> str:
    """Caption one image; the test provider hashes the content."""
    if provider.kind is ProviderKind.DETERMINISTIC_TEST:
        return "image:" + hashlib.sha256(image).hexdigest()[:8]
    if provider.kind is not ProviderKind.REMOTE_CAPTION:
        raise ValueError(f"provider kind {provider.kind.value} cannot caption")
    payload = {
        "model": provider.model_name,
        "messages": [{
            "role": "user",
            "content": [
                {"type": "text", "text": "Describe this figure in one sentence."},
                {"type": "image", "data": base64.b64encode(image).decode("ascii")},
            ],
        }],
    }
    data = _post_json(provider, "/chat/completions", payload, transport)
    try:
        caption = data["choices"][0]["message"]["content"]
    except (KeyError, IndexError, TypeError) as exc:
        raise ProtocolError(f"malformed caption response: {exc}") from exc
    if not caption:
        raise ProtocolError("caption provider returned empty content")
    return caption
