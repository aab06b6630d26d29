"""Exception hierarchy shared across the pipeline."""

from __future__ import annotations


class MmragError(Exception):
    """Base class for all package errors."""


class TransportError(MmragError):
    """A network call failed after retries."""

    def __init__(self, message: str, attempts: int = 1):
        super().__init__(f"{message} (after {attempts} attempt(s))")
        self.attempts = attempts


class ParseError(MmragError):
    """A remote response or document could not be parsed."""

    def __init__(self, message: str, field: str = ""):
        super().__init__(f"{message}: {field}" if field else message)
        self.field = field


class ProtocolError(MmragError):
    """A remote provider violated the wire contract (e.g. wrong dimension)."""


class ImageDecodeError(MmragError):
    """Image bytes could not be decoded."""

    def __init__(self, message: str, pmid: str = "", figure_index: int = -1):
        ctx = f" (pmid={pmid}, figure={figure_index})" if pmid else ""
        super().__init__(message + ctx)
        self.pmid = pmid
        self.figure_index = figure_index


class ShapeError(MmragError):
    """Matrix or vector dimensions do not line up."""


class FormatError(MmragError):
    """A persisted file has the wrong magic or an unsupported version."""


class ConfigError(MmragError):
    """Invalid or incomplete configuration."""


class ValidationError(MmragError):
    """A value violates a documented invariant."""

    def __init__(self, message: str, field: str = ""):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


class GenerationError(MmragError):
    """The generation backend failed; carries the retrieval result so the
    caller can degrade to an extractive answer."""

    def __init__(self, message: str, retrieval=None):
        super().__init__(message)
        self.retrieval = retrieval
