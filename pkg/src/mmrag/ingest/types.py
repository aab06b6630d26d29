"""Core record types for the ingestion pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional


class ChunkKind(str, Enum):
    TEXT = "text"
    TABLE_SUMMARY = "table_summary"
    FIGURE_CAPTION = "figure_caption"


@dataclass(frozen=True)
class ArticleRef:
    """A pointer to one article: its PubMed id plus an optional title.

    The search endpoint only returns ids; titles are filled in at fetch time.
    """

    pmid: str
    title: str = ""

    def __post_init__(self):
        if not self.pmid or not self.pmid.isdigit():
            raise ValueError(f"pmid must be a non-empty numeric string, got {self.pmid!r}")


@dataclass
class Table:
    caption: str
    rows: list[list[str]] = field(default_factory=list)


@dataclass
class Figure:
    caption: str
    image_ref: Optional[bytes]  # raw image bytes, or None when unresolvable
    format: str = ""


@dataclass
class RawArticle:
    """A parsed article: abstract, ordered sections, tables and figures."""

    pmid: str
    title: str
    abstract: str = ""
    sections: list[tuple[str, str]] = field(default_factory=list)
    tables: list[Table] = field(default_factory=list)
    figures: list[Figure] = field(default_factory=list)


@dataclass
class Chunk:
    """One indexable unit of content with article provenance.

    chunk_id is deterministic: "<pmid>:s<section idx>:b<block idx>" for text,
    "<pmid>:t<idx>" for table summaries and "<pmid>:f<idx>" for figure captions.
    """

    chunk_id: str
    pmid: str
    section_title: str
    kind: ChunkKind
    text: str
    order: int
    linked_image_id: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "chunk_id": self.chunk_id,
            "pmid": self.pmid,
            "section_title": self.section_title,
            "kind": self.kind.value,
            "text": self.text,
            "order": self.order,
            "linked_image_id": self.linked_image_id,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Chunk":
        return cls(
            chunk_id=d["chunk_id"],
            pmid=d["pmid"],
            section_title=d["section_title"],
            kind=ChunkKind(d["kind"]),
            text=d["text"],
            order=d["order"],
            linked_image_id=d.get("linked_image_id"),
        )


@dataclass(frozen=True)
class ChunkPolicy:
    """Sizing rules for splitting section bodies into blocks.

    Token counts are whitespace-delimited words, not model tokens.
    """

    max_tokens: int = 512
    overlap_tokens: int = 64
    min_tokens: int = 16

    def __post_init__(self):
        if not (0 <= self.overlap_tokens < self.max_tokens):
            raise ValueError("require 0 <= overlap_tokens < max_tokens")
        if self.min_tokens > self.max_tokens:
            raise ValueError("require min_tokens <= max_tokens")
