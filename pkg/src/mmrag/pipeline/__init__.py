"""Index building and end-to-end query answering."""

from .backends import EchoBackend, RemoteChatBackend, ScriptedBackend
from .indexing import (
    ALL_MODES,
    MODE_FULL,
    MODE_NO_FUSION,
    MODE_TEXT_ONLY,
    IndexBundle,
    build_indexes,
)
from .query import (
    DEFAULT_TEMPLATE,
    NO_SOURCES_MARKER,
    Answer,
    PromptBundle,
    Query,
    QueryPipeline,
    RetrievalHit,
    RetrievalResult,
    assemble_prompt,
    extract_citations,
    extractive_fallback,
    generate_answer,
    retrieve,
)

__all__ = [
    "ALL_MODES", "MODE_FULL", "MODE_NO_FUSION", "MODE_TEXT_ONLY",
    "IndexBundle", "build_indexes",
    "Query", "RetrievalHit", "RetrievalResult", "PromptBundle", "Answer",
    "QueryPipeline", "retrieve", "assemble_prompt", "generate_answer",
    "extract_citations", "extractive_fallback",
    "DEFAULT_TEMPLATE", "NO_SOURCES_MARKER",
    "EchoBackend", "RemoteChatBackend", "ScriptedBackend",
]
