"""Corpus assembly: turn fetched articles into chunks.jsonl plus images/."""

from __future__ import annotations

import json
import logging
from pathlib import Path

from ..errors import ImageDecodeError
from .chunking import chunk_article, figure_image_id
from .figures import normalize_figure
from .types import Chunk, ChunkPolicy, RawArticle

logger = logging.getLogger(__name__)


def build_corpus(
    articles: list[RawArticle],
    policy: ChunkPolicy,
    backend=None,
) -> tuple[list[Chunk], dict[str, bytes]]:
    """Chunk all articles and normalize their figure images to PNG.

    Returns the corpus-wide chunk list and an image map keyed by the
    linked_image_id values that appear on figure-caption chunks. Figures
    with missing or undecodable bytes keep their caption chunk but get no
    image entry.
    """
    chunks: list[Chunk] = []
    images: dict[str, bytes] = {}
    for article in articles:
        chunks.extend(chunk_article(article, policy, backend=backend))
        for fi, figure in enumerate(article.figures):
            if figure.image_ref is None:
                continue
            image_id = figure_image_id(article.pmid, fi)
            try:
                png, _ = normalize_figure(figure.image_ref, figure.format or "PNG",
                                          pmid=article.pmid, figure_index=fi)
            except ImageDecodeError as exc:
                logger.warning("skipping figure image: %s", exc)
                continue
            images[image_id] = png
    seen = set()
    for c in chunks:
        if c.chunk_id in seen:
            raise ValueError(f"duplicate chunk_id {c.chunk_id}")
        seen.add(c.chunk_id)
    return chunks, images


def write_corpus(chunks: list[Chunk], images: dict[str, bytes], out_dir: str | Path):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "chunks.jsonl", "w", encoding="utf-8") as fh:
        for chunk in chunks:
            fh.write(json.dumps(chunk.to_dict(), ensure_ascii=False) + "\n")
    img_dir = out / "images"
    img_dir.mkdir(exist_ok=True)
    for image_id, data in images.items():
        (img_dir / f"{image_id.replace(':', '_')}.png").write_bytes(data)


def read_corpus(corpus_dir: str | Path) -> tuple[list[Chunk], dict[str, bytes]]:
    corpus = Path(corpus_dir)
    chunks = []
    with open(corpus / "chunks.jsonl", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                chunks.append(Chunk.from_dict(json.loads(line)))
    images = {}
    img_dir = corpus / "images"
    if img_dir.is_dir():
        for path in sorted(img_dir.glob("*.png")):
            images[path.stem.replace("_", ":")] = path.read_bytes()
    return chunks, images
