import numpy as np
import pytest

from mmrag.embed import ProviderConfig, ProviderKind
from mmrag.errors import ConfigError, GenerationError, ValidationError
from mmrag.ingest import Chunk, ChunkKind
from mmrag.pipeline import (
    MODE_FULL,
    MODE_NO_FUSION,
    MODE_TEXT_ONLY,
    EchoBackend,
    Query,
    QueryPipeline,
    RetrievalHit,
    RetrievalResult,
    ScriptedBackend,
    assemble_prompt,
    build_indexes,
    extract_citations,
    generate_answer,
    retrieve,
)
from mmrag.store import ScoredHit

from conftest import make_png

DET = ProviderConfig(kind=ProviderKind.DETERMINISTIC_TEST, dim=16)


def planted_corpus():
    """Three articles; article 2 carries a figure. Queries that reuse a
    chunk's exact text share its deterministic embedding."""
    chunks = [
        Chunk("10:s0:b0", "10", "Abstract", ChunkKind.TEXT, "amyloid beta plaques accumulate", 0),
        Chunk("10:s1:b0", "10", "Methods", ChunkKind.TEXT, "we measured plaque density", 1),
        Chunk("20:s0:b0", "20", "Abstract", ChunkKind.TEXT, "donepezil dosing and tolerability", 0),
        Chunk("20:f0", "20", "Figure", ChunkKind.FIGURE_CAPTION, "mri coronal view", 1, "20:fig0"),
        Chunk("30:s0:b0", "30", "Abstract", ChunkKind.TEXT, "caregiver support strategies", 0),
    ]
    images = {"20:fig0": make_png(4, 4)}
    return chunks, images


@pytest.fixture(scope="module")
def bundle():
    chunks, images = planted_corpus()
    return build_indexes(chunks, images, DET, DET)


def test_query_validation():
    with pytest.raises(ValidationError):
        Query(question="   ")
    with pytest.raises(ValidationError):
        Query(question="q", top_k=0)
    with pytest.raises(ValidationError):
        Query(question="q", mode="bogus")


def test_three_mode_indexes_built(bundle):
    assert set(bundle.indexes) == {MODE_FULL, MODE_NO_FUSION, MODE_TEXT_ONLY}
    d = DET.dim
    assert bundle.indexes[MODE_TEXT_ONLY].dim == d
    assert bundle.indexes[MODE_FULL].dim == 2 * d
    assert bundle.indexes[MODE_NO_FUSION].dim == 2 * d


def test_planted_retrieval_rank1(bundle):
    query = Query(question="donepezil dosing and tolerability", top_k=3, mode=MODE_TEXT_ONLY)
    result = retrieve(query, bundle, DET)
    assert result.hits[0].chunk.chunk_id == "20:s0:b0"
    assert abs(result.hits[0].hit.score - 1.0) < 1e-6


def test_text_only_strips_image_ids(bundle):
    query = Query(question="mri coronal view", top_k=5, mode=MODE_TEXT_ONLY)
    result = retrieve(query, bundle, DET)
    assert all(h.image_ids == [] for h in result.hits)


def test_full_mode_carries_image_provenance(bundle):
    query = Query(question="mri coronal view", top_k=5, mode=MODE_FULL)
    result = retrieve(query, bundle, DET)
    by_id = {h.chunk.chunk_id: h.image_ids for h in result.hits}
    assert "20:fig0" in by_id.get("20:f0", [])


def test_topk_truncation(bundle):
    query = Query(question="anything at all", top_k=50, mode=MODE_TEXT_ONLY)
    assert len(retrieve(query, bundle, DET).hits) == 5


def test_missing_mode_index(bundle):
    partial_chunks, images = planted_corpus()
    partial = build_indexes(partial_chunks, images, DET, DET, modes=(MODE_TEXT_ONLY,))
    with pytest.raises(ConfigError):
        retrieve(Query(question="q", mode=MODE_FULL), partial, DET)


# -- prompt assembly -------------------------------------------------------

def hits_fixture():
    chunks, _ = planted_corpus()
    return RetrievalResult(hits=[
        RetrievalHit(ScoredHit(chunks[0].chunk_id, 0.9), chunks[0]),
        RetrievalHit(ScoredHit(chunks[2].chunk_id, 0.7), chunks[2], ["20:fig0"]),
    ])


def test_prompt_tags_in_order():
    prompt = assemble_prompt("what about plaques?", hits_fixture())
    first = prompt.text.find("[S1:10:s0:b0]")
    second = prompt.text.find("[S2:20:s0:b0]")
    assert 0 <= first < second
    assert "what about plaques?" in prompt.text


def test_prompt_budget_truncates_at_block_boundary():
    result = hits_fixture()
    block1 = f"[S1:10:s0:b0] {result.hits[0].chunk.text}"
    prompt = assemble_prompt("q", result, context_budget=len(block1) + 3)
    assert len(prompt.context_blocks) == 1
    assert prompt.truncated


def test_prompt_budget_too_small_for_first_block():
    prompt = assemble_prompt("q", hits_fixture(), context_budget=5)
    assert prompt.context_blocks == []
    assert prompt.truncated


def test_prompt_empty_retrieval_marker():
    prompt = assemble_prompt("q", RetrievalResult(hits=[]))
    assert "[no sources]" in prompt.text


def test_prompt_template_validation():
    with pytest.raises(ValidationError):
        assemble_prompt("q", hits_fixture(), template="no placeholders")


# -- generation ------------------------------------------------------------

def test_echo_backend_roundtrip():
    prompt = assemble_prompt("q", hits_fixture())
    out = generate_answer(EchoBackend(), prompt)
    assert "[S1:10:s0:b0]" in out and "[S2:20:s0:b0]" in out


def test_generation_error_carries_retrieval():
    result = hits_fixture()
    prompt = assemble_prompt("q", result)
    backend = ScriptedBackend(error=RuntimeError("timeout"))
    with pytest.raises(GenerationError) as err:
        generate_answer(backend, prompt, result)
    assert err.value.retrieval is result


def test_scripted_backend_passthrough():
    prompt = assemble_prompt("q", hits_fixture())
    assert generate_answer(ScriptedBackend(response="fixed"), prompt) == "fixed"


def test_citation_extraction_subset_only():
    result = hits_fixture()
    text = "see [S1:10:s0:b0] and fabricated [S9:bogus:id]"
    assert extract_citations(text, result) == ["10:s0:b0"]


# -- end to end ------------------------------------------------------------

def test_answer_full_mode_citations(bundle):
    pipeline = QueryPipeline(bundle, DET, backend=EchoBackend())
    answer = pipeline.answer(Query(question="amyloid beta plaques accumulate",
                                   top_k=3, mode=MODE_FULL))
    assert answer.cited_chunk_ids == answer.retrieval.chunk_ids()
    assert not answer.degraded
    assert set(answer.cited_chunk_ids) <= set(answer.retrieval.chunk_ids())


def test_answer_text_only_no_images(bundle):
    pipeline = QueryPipeline(bundle, DET, backend=EchoBackend())
    answer = pipeline.answer(Query(question="mri coronal view", top_k=5, mode=MODE_TEXT_ONLY))
    assert answer.image_ids == []


def test_answer_degraded_without_backend(bundle):
    pipeline = QueryPipeline(bundle, DET, backend=None)
    answer = pipeline.answer(Query(question="caregiver support strategies", top_k=2,
                                   mode=MODE_TEXT_ONLY))
    assert answer.degraded
    assert "caregiver support strategies" in answer.text


def test_answer_degraded_on_backend_failure(bundle):
    backend = ScriptedBackend(error=RuntimeError("down"))
    pipeline = QueryPipeline(bundle, DET, backend=backend)
    answer = pipeline.answer(Query(question="anything", top_k=2, mode=MODE_TEXT_ONLY))
    assert answer.degraded


def test_answer_determinism(bundle):
    pipeline = QueryPipeline(bundle, DET, backend=EchoBackend())
    a = pipeline.answer(Query(question="plaques", top_k=3, mode=MODE_FULL)).to_dict()
    b = pipeline.answer(Query(question="plaques", top_k=3, mode=MODE_FULL)).to_dict()
    a.pop("latency_ms")
    b.pop("latency_ms")
    assert a == b
