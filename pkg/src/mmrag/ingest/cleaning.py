"""Text normalization for fetched article bodies.

Marker grammar removed by clean_text:
  * hyperlinks:        http://... , https://... , www.... (up to whitespace)
  * citation markers:  bracketed integers, comma lists and ranges, with
                       optional internal spaces: [12], [3,4], [1-5], [3, 7]
  * footnote markers:  unicode superscript digit runs and the caret form ^12

Cleaning runs to a fixed point so the result is idempotent even when a
removal exposes a new marker (e.g. "[1[2]3]").
"""

from __future__ import annotations

import re

_URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
_CITATION_RE = re.compile(r"\[\s*\d+(?:\s*[-–,]\s*\d+)*\s*\]")
_SUPERSCRIPT_RE = re.compile(r"[¹²³⁰⁴-⁹]+|\^\d+")
_WS_RE = re.compile(r"\s+")

_MAX_PASSES = 10


def _clean_once(text: str) -> str:
    text = _URL_RE.sub(" ", text)
    # citation and footnote markers abut words, so drop them without padding
    text = _CITATION_RE.sub("", text)
    text = _SUPERSCRIPT_RE.sub("", text)
    return _WS_RE.sub(" ", text).strip()


def clean_text(raw: str) -> str:
    """Strip hyperlinks, citation brackets and footnote markers; collapse whitespace."""
    text = raw
    for _ in range(_MAX_PASSES):
        cleaned = _clean_once(text)
        if cleaned == text:
            return cleaned
        text = cleaned
    return text
