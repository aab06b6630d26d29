"""Shared fixtures: canned E-utilities XML, tiny images, planted corpora."""

from __future__ import annotations

import base64
import io
import threading
import wsgiref.simple_server

import httpx
import numpy as np
import pytest
from PIL import Image


def make_png(width=2, height=2, color=(255, 0, 0)) -> bytes:
    buf = io.BytesIO()
    Image.new("RGB", (width, height), color).save(buf, format="PNG")
    return buf.getvalue()


def make_jpeg(width=2, height=2, color=(0, 255, 0)) -> bytes:
    buf = io.BytesIO()
    Image.new("RGB", (width, height), color).save(buf, format="JPEG")
    return buf.getvalue()


@pytest.fixture
def png_bytes():
    return make_png()


@pytest.fixture
def jpeg_bytes():
    return make_jpeg()


def article_set_xml(include_malformed=False) -> str:
    """Two well-formed articles: #1 has 3 sections, 1 table and 1 figure;
    #2 is abstract-only. Optionally a third entry missing its title."""
    fig_b64 = base64.b64encode(make_png(3, 3)).decode("ascii")
    malformed = """
  <PubmedArticle>
    <MedlineCitation>
      <PMID>30000003</PMID>
      <Article>
        <Abstract><AbstractText>Orphan abstract with no title.</AbstractText></Abstract>
      </Article>
    </MedlineCitation>
  </PubmedArticle>""" if include_malformed else ""
    return f"""<?xml version="1.0" encoding="UTF-8"?>
<PubmedArticleSet>
  <PubmedArticle>
    <MedlineCitation>
      <PMID>30000001</PMID>
      <Article>
        <ArticleTitle>Amyloid dynamics in early disease</ArticleTitle>
        <Abstract><AbstractText>Amyloid beta accumulates early.</AbstractText></Abstract>
      </Article>
      <sec><title>Introduction</title><p>Plaque formation precedes symptoms by years.</p></sec>
      <sec><title>Methods</title><p>We quantified plaque density in cohort imaging data.</p></sec>
      <sec><title>Results</title><p>Density correlated with cognitive decline scores.</p></sec>
      <table-wrap>
        <caption>Cohort summary</caption>
        <row><cell>Group</cell><cell>N</cell></row>
        <row><cell>Control</cell><cell>40</cell></row>
      </table-wrap>
      <fig>
        <caption>Coronal section with plaque staining</caption>
        <graphic format="PNG">{fig_b64}</graphic>
      </fig>
    </MedlineCitation>
  </PubmedArticle>
  <PubmedArticle>
    <MedlineCitation>
      <PMID>30000002</PMID>
      <Article>
        <ArticleTitle>Cholinesterase inhibitor tolerability</ArticleTitle>
        <Abstract><AbstractText>Donepezil remains first-line therapy.</AbstractText></Abstract>
      </Article>
    </MedlineCitation>
  </PubmedArticle>{malformed}
</PubmedArticleSet>"""


@pytest.fixture
def fixture_xml():
    return article_set_xml()


@pytest.fixture
def fixture_xml_with_malformed():
    return article_set_xml(include_malformed=True)


class EutilsMock:
    """httpx.MockTransport handler emulating paged esearch plus efetch."""

    def __init__(self, ids: list[str], efetch_xml: str = "", fail_first: int = 0,
                 status_429_times: int = 0):
        self.ids = ids
        self.efetch_xml = efetch_xml
        self.requests: list[httpx.Request] = []
        self._429_left = status_429_times
        self._fail_left = fail_first

    def __call__(self, request: httpx.Request) -> httpx.Response:
        self.requests.append(request)
        if self._fail_left > 0:
            self._fail_left -= 1
            raise httpx.ConnectError("boom", request=request)
        if self._429_left > 0:
            self._429_left -= 1
            return httpx.Response(429, text="slow down")
        params = dict(request.url.params)
        if "esearch" in request.url.path:
            retstart = int(params.get("retstart", 0))
            retmax = int(params.get("retmax", 20))
            page = self.ids[retstart : retstart + retmax]
            ids_xml = "".join(f"<Id>{i}</Id>" for i in page)
            return httpx.Response(
                200, text=f"<eSearchResult><IdList>{ids_xml}</IdList></eSearchResult>")
        if "efetch" in request.url.path:
            return httpx.Response(200, text=self.efetch_xml)
        return httpx.Response(404, text="unknown endpoint")

    def transport(self) -> httpx.MockTransport:
        return httpx.MockTransport(self)


@pytest.fixture
def eutils_mock_factory():
    return EutilsMock


def serve_wsgi(app):
    """Run a WSGI app on an ephemeral port in a daemon thread."""
    server = wsgiref.simple_server.make_server(
        "127.0.0.1", 0, app, handler_class=QuietHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return server, f"http://127.0.0.1:{server.server_port}"


class QuietHandler(wsgiref.simple_server.WSGIRequestHandler):
    def log_message(self, *args):
        pass
