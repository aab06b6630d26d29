"""Build the per-mode vector indexes from a chunked corpus.

One embedding pass feeds all three retrieval modes so ablation comparisons
are apples-to-apples:

  full             cross-modal attention fusion (text attends over its
                   article's images); articles without images get a
                   zero-padded image aggregate to keep dimensions uniform
  no_fusion_concat text vector concatenated with the linked image vector
                   (figure-caption chunks) or zeros
  text_only        raw text vectors
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from ..embed import ProviderConfig, embed_images, embed_texts
from ..fusion import (
    MODE_CROSS_ATTENTION,
    FusedRecord,
    FusionConfig,
    ModalityEmbeddings,
    ProjectionWeights,
    cross_modal_fuse,
    naive_concat_fuse,
    text_only_records,
)
from ..ingest.types import Chunk
from ..store import BACKEND_FLAT, VectorIndex
from ..store.index import HnswParams
from ..store.objects import ObjectStore

MODE_FULL = "full"
MODE_NO_FUSION = "no_fusion_concat"
MODE_TEXT_ONLY = "text_only"
ALL_MODES = (MODE_FULL, MODE_NO_FUSION, MODE_TEXT_ONLY)


@dataclass
class IndexBundle:
    """Everything query answering needs for one corpus."""

    indexes: dict[str, VectorIndex]
    records: dict[str, list[FusedRecord]]
    object_store: ObjectStore
    text_dim: int


def _group_by_pmid(chunks: list[Chunk]) -> dict[str, list[Chunk]]:
    grouped = defaultdict(list)
    for chunk in chunks:
        grouped[chunk.pmid].append(chunk)
    return grouped


def build_indexes(
    chunks: list[Chunk],
    images: dict[str, bytes],
    text_provider: ProviderConfig,
    image_provider: ProviderConfig,
    projection_seed: int = 0,
    fusion_config: FusionConfig | None = None,
    modes: tuple[str, ...] = ALL_MODES,
    backend: str = BACKEND_FLAT,
    hnsw_params: HnswParams | None = None,
) -> IndexBundle:
    fusion_config = fusion_config or FusionConfig()
    text_vecs = embed_texts(text_provider, [c.text for c in chunks], ids=[c.chunk_id for c in chunks])
    image_items = sorted(images.items())
    image_vecs = embed_images(image_provider, image_items)

    d = text_provider.dim
    text_by_id = {v.source_id: v.values for v in text_vecs}
    image_by_id = {v.source_id: v.values for v in image_vecs}
    weights = ProjectionWeights.seeded(d, d, seed=projection_seed)

    records: dict[str, list[FusedRecord]] = {mode: [] for mode in modes}
    grouped = _group_by_pmid(chunks)

    for pmid in sorted(grouped):
        article_chunks = grouped[pmid]
        text_ids = [c.chunk_id for c in article_chunks]
        text_emb = ModalityEmbeddings(
            "text", np.array([text_by_id[i] for i in text_ids]), text_ids)
        article_image_ids = sorted(
            {c.linked_image_id for c in article_chunks
             if c.linked_image_id and c.linked_image_id in image_by_id})
        image_emb = ModalityEmbeddings(
            "image",
            np.array([image_by_id[i] for i in article_image_ids]).reshape(len(article_image_ids), d),
            article_image_ids,
        )

        if MODE_FULL in records:
            if image_emb.n:
                fused = cross_modal_fuse(text_emb, image_emb, weights, fusion_config)
            else:
                # keep index dimensionality uniform across articles
                fused = [
                    FusedRecord(np.concatenate([text_emb.matrix[i], np.zeros(weights.d_k)]),
                                [text_ids[i]], [], MODE_CROSS_ATTENTION)
                    for i in range(text_emb.n)
                ]
            records[MODE_FULL].extend(fused)

        if MODE_NO_FUSION in records:
            pairing = {
                c.chunk_id: c.linked_image_id for c in article_chunks
                if c.linked_image_id and c.linked_image_id in image_by_id
            }
            pad_emb = image_emb if image_emb.n else ModalityEmbeddings(
                "image", np.zeros((0, d)), [])
            recs = naive_concat_fuse(text_emb, pad_emb, pairing)
            # imageless articles: still pad to d_text + d_image
            for rec in recs:
                if rec.vector.shape[0] == d:
                    rec.vector = np.concatenate([rec.vector, np.zeros(d)])
            records[MODE_NO_FUSION].extend(recs)

        if MODE_TEXT_ONLY in records:
            records[MODE_TEXT_ONLY].extend(text_only_records(text_emb))

    indexes: dict[str, VectorIndex] = {}
    for mode, recs in records.items():
        dim = recs[0].vector.shape[0] if recs else d
        index = VectorIndex(dim, backend=backend, hnsw_params=hnsw_params)
        for rec in recs:
            index.upsert(rec.text_ids[0], rec.vector)
        indexes[mode] = index

    store = ObjectStore(chunks, images)
    return IndexBundle(indexes=indexes, records=records, object_store=store, text_dim=d)
