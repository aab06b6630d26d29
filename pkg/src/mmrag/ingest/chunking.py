"""Split cleaned articles into indexable chunks.

Section bodies are cut into overlapping blocks of whitespace tokens; table
summaries and figure captions become standalone chunks. Chunk ids are
deterministic functions of (pmid, element index, block index) so repeated
runs over the same corpus produce byte-identical output.
"""

from __future__ import annotations

from .cleaning import clean_text
from .tables import summarize_table
from .types import Chunk, ChunkKind, ChunkPolicy, RawArticle


def split_tokens(tokens: list[str], policy: ChunkPolicy) -> list[list[str]]:
    """Cut a token list into blocks of <= max_tokens sharing overlap_tokens.

    Consecutive blocks share exactly overlap_tokens tokens; a trailing block
    whose fresh (non-overlap) part is shorter than min_tokens is merged into
    the previous one, which may then exceed max_tokens.
    """
    if not tokens:
        return []
    if len(tokens) <= policy.max_tokens:
        return [tokens]
    step = policy.max_tokens - policy.overlap_tokens
    blocks = []
    start = 0
    while start < len(tokens):
        blocks.append(tokens[start : start + policy.max_tokens])
        if start + policy.max_tokens >= len(tokens):
            break
        start += step
    if len(blocks) > 1:
        fresh = len(blocks[-1]) - policy.overlap_tokens
        if fresh < policy.min_tokens:
            prev_start = (len(blocks) - 2) * step
            blocks[-2] = tokens[prev_start:]
            blocks.pop()
    return blocks


def figure_image_id(pmid: str, figure_index: int) -> str:
    return f"{pmid}:fig{figure_index}"


def chunk_article(article: RawArticle, policy: ChunkPolicy, backend=None) -> list[Chunk]:
    """Produce the ordered chunk list for one article.

    The abstract is treated as a leading pseudo-section. Text chunks come
    first in document order, then table summaries, then figure captions.
    An optional generation backend is used for table summarization.
    """
    chunks: list[Chunk] = []
    order = 0

    sections: list[tuple[str, str]] = []
    if article.abstract.strip():
        sections.append(("Abstract", article.abstract))
    sections.extend(article.sections)

    for si, (title, body) in enumerate(sections):
        body = clean_text(body)
        tokens = body.split()
        for bi, block in enumerate(split_tokens(tokens, policy)):
            chunks.append(
                Chunk(
                    chunk_id=f"{article.pmid}:s{si}:b{bi}",
                    pmid=article.pmid,
                    section_title=title,
                    kind=ChunkKind.TEXT,
                    text=" ".join(block),
                    order=order,
                )
            )
            order += 1

    for ti, table in enumerate(article.tables):
        summary = summarize_table(table, backend=backend)
        if not summary.strip():
            continue
        chunks.append(
            Chunk(
                chunk_id=f"{article.pmid}:t{ti}",
                pmid=article.pmid,
                section_title="Table",
                kind=ChunkKind.TABLE_SUMMARY,
                text=clean_text(summary),
                order=order,
            )
        )
        order += 1

    for fi, figure in enumerate(article.figures):
        caption = clean_text(figure.caption)
        if not caption:
            caption = f"Figure {fi + 1}"
        chunks.append(
            Chunk(
                chunk_id=f"{article.pmid}:f{fi}",
                pmid=article.pmid,
                section_title="Figure",
                kind=ChunkKind.FIGURE_CAPTION,
                text=caption,
                order=order,
                linked_image_id=figure_image_id(article.pmid, fi),
            )
        )
        order += 1

    return chunks
