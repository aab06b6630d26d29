"""Narrative walkthrough: corpus -> three indexes -> answered query.

Runs completely offline. The deterministic embedding provider hashes each
chunk's text, so a query that repeats a chunk verbatim scores 1.0 and the
echo backend makes the citation path visible end to end.
"""

import io

from PIL import Image

from mmrag.embed import ProviderConfig, ProviderKind
from mmrag.ingest import Chunk, ChunkKind
from mmrag.pipeline import EchoBackend, Query, QueryPipeline, build_indexes


def tiny_png() -> bytes:
    buf = io.BytesIO()
    Image.new("RGB", (8, 8), (120, 40, 40)).save(buf, format="PNG")
    return buf.getvalue()


def main():
    chunks = [
        Chunk("101:s0:b0", "101", "Abstract", ChunkKind.TEXT,
              "amyloid beta plaques accumulate years before symptom onset", 0),
        Chunk("101:f0", "101", "Figure", ChunkKind.FIGURE_CAPTION,
              "coronal mri slice with plaque staining overlay", 1, "101:fig0"),
        Chunk("102:s0:b0", "102", "Abstract", ChunkKind.TEXT,
              "donepezil remains the first line cholinesterase inhibitor", 0),
        Chunk("103:s0:b0", "103", "Abstract", ChunkKind.TEXT,
              "structured caregiver support reduces burnout", 0),
    ]
    images = {"101:fig0": tiny_png()}

    provider = ProviderConfig(kind=ProviderKind.DETERMINISTIC_TEST, dim=32)
    bundle = build_indexes(chunks, images, provider, provider)
    pipeline = QueryPipeline(bundle, provider, backend=EchoBackend())

    for mode in ("full", "no_fusion_concat", "text_only"):
        answer = pipeline.answer(Query(
            question="coronal mri slice with plaque staining overlay",
            top_k=3, mode=mode))
        print(f"--- mode: {mode}")
        for rank, hit in enumerate(answer.retrieval.hits, start=1):
            print(f"  {rank}. {hit.chunk.chunk_id}  score={hit.hit.score:.4f}  "
                  f"images={hit.image_ids}")
        print(f"  images surfaced with the answer: {answer.image_ids}")


if __name__ == "__main__":
    main()
