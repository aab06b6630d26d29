"""Article ingestion: remote search/fetch, parsing, cleaning and chunking."""

from .chunking import chunk_article, figure_image_id, split_tokens
from .cleaning import clean_text
from .corpus import build_corpus, read_corpus, write_corpus
from .figures import normalize_figure
from .pubmed import FetchReport, PubmedClient, RateLimiter, parse_article_set
from .tables import flatten_table, summarize_table
from .types import ArticleRef, Chunk, ChunkKind, ChunkPolicy, Figure, RawArticle, Table

__all__ = [
    "ArticleRef", "Chunk", "ChunkKind", "ChunkPolicy", "Figure", "RawArticle", "Table",
    "PubmedClient", "RateLimiter", "FetchReport", "parse_article_set",
    "clean_text", "chunk_article", "split_tokens", "figure_image_id",
    "normalize_figure", "summarize_table", "flatten_table",
    "build_corpus", "write_corpus", "read_corpus",
]
