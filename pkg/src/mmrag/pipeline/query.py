"""End-to-end query answering over the built indexes.

Flow: embed the question, search the mode's index, assemble a prompt whose
context blocks carry stable source tags, call the generation backend, then
cite every tag the backend echoed. When no backend is reachable the answer
degrades to an extractive listing of the top chunks.
"""

from __future__ import annotations

import json
import re
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..embed import ProviderConfig, embed_texts
from ..errors import ConfigError, MmragError, ValidationError
from ..ingest.types import Chunk
from ..store import ScoredHit
from .indexing import ALL_MODES, MODE_FULL, MODE_TEXT_ONLY, IndexBundle

DEFAULT_TEMPLATE = """You are a biomedical assistant. Answer the question using only the
numbered sources below, and repeat the tag of every source you rely on.

Sources:
{context}

Question: {question}
Answer:"""

NO_SOURCES_MARKER = "[no sources]"
DEFAULT_CONTEXT_BUDGET = 8000

_TAG_RE = re.compile(r"\[S(\d+):([^\]\s]+)\]")


@dataclass
class Query:
    question: str
    top_k: int = 10
    mode: str = MODE_FULL

    def __post_init__(self):
        if not self.question.strip():
            raise ValidationError("must be non-empty", "question")
        if self.top_k < 1:
            raise ValidationError("must be >= 1", "top_k")
        if self.mode not in ALL_MODES:
            raise ValidationError(f"unknown mode {self.mode!r}", "mode")


@dataclass
class RetrievalHit:
    hit: ScoredHit
    chunk: Chunk
    image_ids: list[str] = field(default_factory=list)


@dataclass
class RetrievalResult:
    hits: list[RetrievalHit]

    def chunk_ids(self) -> list[str]:
        return [h.chunk.chunk_id for h in self.hits]


@dataclass
class PromptBundle:
    text: str
    context_blocks: list[tuple[str, str]]  # (source tag, block text)
    image_ids: list[str]
    truncated: bool = False


@dataclass
class Answer:
    text: str
    cited_chunk_ids: list[str]
    image_ids: list[str]
    mode: str
    latency_ms: int
    retrieval: RetrievalResult
    degraded: bool = False

    def to_dict(self) -> dict:
        return {
            "answer": self.text,
            "cited_sources": [
                {
                    "chunk_id": h.chunk.chunk_id,
                    "pmid": h.chunk.pmid,
                    "section_title": h.chunk.section_title,
                    "text": h.chunk.text,
                    "score": h.hit.score,
                }
                for h in self.retrieval.hits
                if h.chunk.chunk_id in self.cited_chunk_ids
            ],
            "images": [{"image_id": i, "url": f"/api/images/{i}"} for i in self.image_ids],
            "mode": self.mode,
            "degraded": self.degraded,
            "latency_ms": self.latency_ms,
        }


def _records_by_chunk(bundle: IndexBundle, mode: str) -> dict[str, list[str]]:
    return {rec.text_ids[0]: rec.image_ids for rec in bundle.records.get(mode, [])}


def retrieve(query: Query, bundle: IndexBundle, text_provider: ProviderConfig) -> RetrievalResult:
    """Search the mode's index and resolve hits through the object store."""
    if query.mode not in bundle.indexes:
        raise ConfigError(f"no index built for mode {query.mode!r}")
    index = bundle.indexes[query.mode]
    [qvec] = embed_texts(text_provider, [query.question], ids=["query"])
    q = qvec.values
    if index.dim > q.shape[0]:
        q = np.concatenate([q, np.zeros(index.dim - q.shape[0])])
    hits = index.search(q, query.top_k)
    image_map = _records_by_chunk(bundle, query.mode)
    result_hits = []
    for hit in hits:
        chunk = bundle.object_store.get_chunk(hit.id)
        image_ids = [] if query.mode == MODE_TEXT_ONLY else list(image_map.get(hit.id, []))
        result_hits.append(RetrievalHit(hit=hit, chunk=chunk, image_ids=image_ids))
    return RetrievalResult(hits=result_hits)


def assemble_prompt(
    question: str,
    result: RetrievalResult,
    template: str = DEFAULT_TEMPLATE,
    context_budget: int = DEFAULT_CONTEXT_BUDGET,
) -> PromptBundle:
    """Fill the template; context blocks are tagged [S<rank>:<chunk_id>] and
    truncated at block boundaries to fit the character budget."""
    if "{question}" not in template or "{context}" not in template:
        raise ValidationError("template needs {question} and {context} placeholders", "template")
    blocks: list[tuple[str, str]] = []
    used = 0
    truncated = False
    for rank, h in enumerate(result.hits, start=1):
        tag = f"[S{rank}:{h.chunk.chunk_id}]"
        block = f"{tag} {h.chunk.text}"
        if used + len(block) > context_budget:
            truncated = True
            break
        blocks.append((tag, block))
        used += len(block)
    if not result.hits:
        context = NO_SOURCES_MARKER
    else:
        context = "\n".join(b for _, b in blocks)
    image_ids: list[str] = []
    kept = {tag for tag, _ in blocks}
    for rank, h in enumerate(result.hits, start=1):
        if f"[S{rank}:{h.chunk.chunk_id}]" in kept:
            image_ids.extend(i for i in h.image_ids if i not in image_ids)
    text = template.replace("{context}", context).replace("{question}", question)
    return PromptBundle(text=text, context_blocks=blocks, image_ids=image_ids, truncated=truncated)


def generate_answer(backend, prompt: PromptBundle, retrieval: RetrievalResult | None = None) -> str:
    """Call the backend; on failure raise an error carrying the retrieval."""
    from ..errors import GenerationError

    try:
        return backend.complete(prompt.text)
    except MmragError as exc:
        raise GenerationError(str(exc), retrieval=retrieval) from exc
    except Exception as exc:
        raise GenerationError(f"backend failure: {exc}", retrieval=retrieval) from exc


def extract_citations(answer_text: str, retrieval: RetrievalResult) -> list[str]:
    """Chunk ids whose source tags appear in the backend output; retrieval
    order, never fabricated ids."""
    tagged = set()
    for _, chunk_id in _TAG_RE.findall(answer_text):
        tagged.add(chunk_id)
    return [cid for cid in retrieval.chunk_ids() if cid in tagged]


def extractive_fallback(retrieval: RetrievalResult, limit: int = 3) -> str:
    lines = ["(generation unavailable; showing top retrieved passages)"]
    for rank, h in enumerate(retrieval.hits[:limit], start=1):
        lines.append(f"{rank}. [{h.chunk.chunk_id}] {h.chunk.text}")
    return "\n".join(lines)


class QueryPipeline:
    def __init__(
        self,
        bundle: IndexBundle,
        text_provider: ProviderConfig,
        backend=None,
        template: str = DEFAULT_TEMPLATE,
        context_budget: int = DEFAULT_CONTEXT_BUDGET,
    ):
        self.bundle = bundle
        self.text_provider = text_provider
        self.backend = backend
        self.template = template
        self.context_budget = context_budget

    def answer(self, query: Query) -> Answer:
        from ..errors import GenerationError

        start = time.monotonic()
        retrieval = retrieve(query, self.bundle, self.text_provider)
        prompt = assemble_prompt(query.question, retrieval, self.template, self.context_budget)
        degraded = False
        if self.backend is None:
            text = extractive_fallback(retrieval)
            cited = retrieval.chunk_ids()
            degraded = True
        else:
            try:
                text = generate_answer(self.backend, prompt, retrieval)
                cited = extract_citations(text, retrieval)
            except GenerationError:
                text = extractive_fallback(retrieval)
                cited = retrieval.chunk_ids()
                degraded = True
        image_ids = [] if query.mode == MODE_TEXT_ONLY else prompt.image_ids
        latency_ms = int((time.monotonic() - start) * 1000)
        return Answer(
            text=text,
            cited_chunk_ids=cited,
            image_ids=image_ids,
            mode=query.mode,
            latency_ms=latency_ms,
            retrieval=retrieval,
            degraded=degraded,
        )
