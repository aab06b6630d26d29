"""Table summarization with a deterministic fallback."""

from __future__ import annotations

import logging

from .types import Table

logger = logging.getLogger(__name__)


def flatten_table(table: Table) -> str:
    """Deterministic summary: caption, then rows cell-joined by " | "."""
    parts = [table.caption] if table.caption else []
    for row in table.rows:
        parts.append(" | ".join(row))
    return "; ".join(parts)


def summarize_table(table: Table, backend=None) -> str:
    """Summarize via the generation backend when available, else flatten.

    Backend failures degrade to the deterministic flattening with a warning.
    """
    if backend is not None:
        prompt = "Summarize this table in one sentence:\n" + flatten_table(table)
        try:
            summary = backend.complete(prompt)
            if summary.strip():
                return summary
        except Exception as exc:
            logger.warning("table summarization backend failed (%s); using fallback", exc)
    return flatten_table(table)
