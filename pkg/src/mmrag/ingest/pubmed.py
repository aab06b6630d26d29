"""Client for the NCBI E-utilities esearch/efetch endpoints.

Requests are paged with retmax/retstart, serialized through a token-bucket
rate limiter and retried with exponential backoff on HTTP 429 and transport
failures. Base URLs are configurable so tests point at a fixture server.
"""

from __future__ import annotations

import logging
import threading
import time
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

import httpx

from ..errors import ParseError, TransportError
from .types import ArticleRef, Figure, RawArticle, Table

logger = logging.getLogger(__name__)

ESEARCH_URL = "https://eutils.ncbi.nlm.nih.gov/entrez/eutils/esearch.fcgi"
EFETCH_URL = "https://eutils.ncbi.nlm.nih.gov/entrez/eutils/efetch.fcgi"

# NCBI allows 3 req/s without an API key, 10 with one.
DEFAULT_RATE_LIMIT_RPS = 3.0


class RateLimiter:
    """Token bucket shared by all outbound requests; thread-safe."""

    def __init__(self, rate_per_sec: float, burst: int = 1, clock=time.monotonic, sleep=time.sleep):
        if rate_per_sec <= 0:
            raise ValueError("rate must be positive")
        self.rate = rate_per_sec
        self.capacity = float(burst)
        self._tokens = float(burst)
        self._last = clock()
        self._clock = clock
        self._sleep = sleep
        self._lock = threading.Lock()

    def acquire(self):
        with self._lock:
            while True:
                now = self._clock()
                self._tokens = min(self.capacity, self._tokens + (now - self._last) * self.rate)
                self._last = now
                if self._tokens >= 1.0:
                    self._tokens -= 1.0
                    return
                self._sleep((1.0 - self._tokens) / self.rate)


@dataclass
class FetchReport:
    """Per-pmid failures recorded without aborting the batch."""

    errors: dict[str, str] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)


class PubmedClient:
    def __init__(
        self,
        esearch_url: str = ESEARCH_URL,
        efetch_url: str = EFETCH_URL,
        api_key: str = "",
        rate_limit_rps: float = DEFAULT_RATE_LIMIT_RPS,
        max_retries: int = 3,
        timeout: float = 30.0,
        transport: httpx.BaseTransport | None = None,
        backoff_base: float = 0.5,
        sleep=time.sleep,
    ):
        self.esearch_url = esearch_url
        self.efetch_url = efetch_url
        self.api_key = api_key
        self.max_retries = max_retries
        self.backoff_base = backoff_base
        self._sleep = sleep
        self._limiter = RateLimiter(rate_limit_rps, sleep=sleep)
        self._http = httpx.Client(timeout=timeout, transport=transport)

    def close(self):
        self._http.close()

    def _get(self, url: str, params: dict) -> httpx.Response:
        if self.api_key:
            params = {**params, "api_key": self.api_key}
        last_exc: Exception | None = None
        for attempt in range(1, self.max_retries + 1):
            self._limiter.acquire()
            try:
                resp = self._http.get(url, params=params)
            except httpx.HTTPError as exc:
                last_exc = exc
                logger.warning("request failed (attempt %d/%d): %s", attempt, self.max_retries, exc)
                self._sleep(self.backoff_base * 2 ** (attempt - 1))
                continue
            if resp.status_code == 429:
                last_exc = TransportError("rate limited by server", attempt)
                self._sleep(self.backoff_base * 2 ** (attempt - 1))
                continue
            resp.raise_for_status()
            return resp
        raise TransportError(f"GET {url} failed: {last_exc}", self.max_retries)

    # -- esearch ---------------------------------------------------------

    def search(self, term: str, max_results: int, batch_size: int = 200) -> list[ArticleRef]:
        """Return up to max_results refs in the order the server delivers them."""
        if max_results < 0:
            raise ValueError("max_results must be >= 0")
        if batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        refs: list[ArticleRef] = []
        retstart = 0
        while len(refs) < max_results:
            want = min(batch_size, max_results - len(refs))
            resp = self._get(
                self.esearch_url,
                {"db": "pubmed", "term": term, "retmax": want, "retstart": retstart, "retmode": "xml"},
            )
            ids = _parse_esearch(resp.text)
            if not ids:
                break
            refs.extend(ArticleRef(pmid=i) for i in ids)
            retstart += len(ids)
            if len(ids) < want:
                break
        return refs[:max_results]

    # -- efetch ----------------------------------------------------------

    def fetch(self, refs: list[ArticleRef], batch_size: int = 50) -> tuple[list[RawArticle], FetchReport]:
        """Fetch full records; per-article failures go into the report."""
        articles: list[RawArticle] = []
        report = FetchReport()
        for i in range(0, len(refs), batch_size):
            batch = refs[i : i + batch_size]
            ids = ",".join(r.pmid for r in batch)
            resp = self._get(self.efetch_url, {"db": "pubmed", "id": ids, "retmode": "xml"})
            got = parse_article_set(resp.text, report)
            articles.extend(got)
        return articles, report


def _parse_esearch(xml_text: str) -> list[str]:
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        raise ParseError(f"esearch response is not well-formed XML: {exc}") from exc
    id_list = root.find("IdList")
    if id_list is None:
        raise ParseError("esearch response missing element", "IdList")
    return [el.text.strip() for el in id_list.findall("Id") if el.text]


def _text(el: ET.Element | None) -> str:
    if el is None:
        return ""
    return "".join(el.itertext()).strip()


def parse_article_set(xml_text: str, report: FetchReport | None = None) -> list[RawArticle]:
    """Parse a PubmedArticleSet document.

    Beyond the standard citation fields (PMID, ArticleTitle, AbstractText)
    the parser accepts full-text style extensions per article: <sec> with
    <title> and <p> children, <table-wrap> with <caption> and <row>/<cell>,
    and <fig> with <caption> and base64 <graphic format="...">. Articles
    missing a PMID or title are recorded as per-article errors.
    """
    if report is None:
        report = FetchReport()
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        raise ParseError(f"efetch response is not well-formed XML: {exc}") from exc

    articles: list[RawArticle] = []
    for node in root.findall(".//PubmedArticle"):
        pmid = _text(node.find(".//PMID"))
        try:
            articles.append(_parse_article(node, pmid, report))
        except ParseError as exc:
            report.errors[pmid or "<unknown>"] = str(exc)
    return articles


def _parse_article(node: ET.Element, pmid: str, report: FetchReport) -> RawArticle:
    import base64

    if not pmid or not pmid.isdigit():
        raise ParseError("article missing or non-numeric", "PMID")
    title = _text(node.find(".//ArticleTitle"))
    if not title:
        raise ParseError(f"article {pmid} missing", "ArticleTitle")
    abstract = " ".join(
        _text(a) for a in node.findall(".//Abstract/AbstractText")
    ).strip()
    if not abstract:
        report.warnings.append(f"article {pmid}: no abstract")

    sections = []
    for sec in node.findall(".//sec"):
        sec_title = _text(sec.find("title"))
        body = " ".join(_text(p) for p in sec.findall("p")).strip()
        sections.append((sec_title, body))

    tables = []
    for tw in node.findall(".//table-wrap"):
        caption = _text(tw.find("caption"))
        rows = [
            [_text(c) for c in row.findall("cell")]
            for row in tw.findall(".//row")
        ]
        tables.append(Table(caption=caption, rows=rows))

    figures = []
    for fig in node.findall(".//fig"):
        caption = _text(fig.find("caption"))
        graphic = fig.find("graphic")
        image_ref = None
        fmt = ""
        if graphic is not None and graphic.text:
            fmt = graphic.get("format", "PNG")
            try:
                image_ref = base64.b64decode(graphic.text.strip())
            except Exception:
                report.warnings.append(f"article {pmid}: undecodable graphic payload")
        figures.append(Figure(caption=caption, image_ref=image_ref, format=fmt))

    return RawArticle(
        pmid=pmid, title=title, abstract=abstract,
        sections=sections, tables=tables, figures=figures,
    )
