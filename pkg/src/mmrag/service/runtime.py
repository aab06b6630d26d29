"""Wire the pipeline together from an AppConfig; shared by CLI and service."""

from __future__ import annotations

from pathlib import Path

from ..config import AppConfig
from ..embed import ProviderConfig, ProviderKind
from ..errors import ConfigError
from ..fusion import FusionConfig, read_fused, write_fused
from ..ingest import ChunkPolicy, PubmedClient, build_corpus, read_corpus, write_corpus
from ..pipeline import ALL_MODES, IndexBundle, QueryPipeline, RemoteChatBackend, build_indexes
from ..store import VectorIndex
from ..store.index import HnswParams
from ..store.objects import ObjectStore


def provider_from_config(section: dict, default_kind: str = "deterministic_test") -> ProviderConfig:
    return ProviderConfig(
        kind=ProviderKind(section.get("kind", default_kind)),
        endpoint=section.get("endpoint", ""),
        model_name=section.get("model_name", ""),
        dim=int(section.get("dim", 64)),
        timeout=float(section.get("timeout", 30.0)),
        normalize=bool(section.get("normalize", True)),
        seed=int(section.get("seed", 0)),
    )


def backend_from_config(config: AppConfig):
    llm = config.section("llm")
    endpoint = llm.get("endpoint", "")
    if not endpoint:
        return None
    return RemoteChatBackend(
        endpoint=endpoint,
        model=llm.get("model", ""),
        timeout=float(llm.get("timeout_ms", 60000)) / 1000.0,
    )


def pubmed_client_from_config(config: AppConfig, transport=None) -> PubmedClient:
    ingest = config.section("ingest")
    kwargs = dict(
        api_key=ingest.get("api_key", ""),
        rate_limit_rps=float(ingest.get("rate_limit_rps", 3.0)),
        transport=transport,
    )
    if ingest.get("esearch_url"):
        kwargs["esearch_url"] = ingest["esearch_url"]
    if ingest.get("efetch_url"):
        kwargs["efetch_url"] = ingest["efetch_url"]
    return PubmedClient(**kwargs)


def chunk_policy_from_config(config: AppConfig) -> ChunkPolicy:
    section = config.section("chunking")
    return ChunkPolicy(
        max_tokens=int(section.get("max_tokens", 512)),
        overlap_tokens=int(section.get("overlap_tokens", 64)),
        min_tokens=int(section.get("min_tokens", 16)),
    )


def run_ingest(config: AppConfig, transport=None) -> tuple[int, int]:
    """search -> fetch -> clean/chunk/normalize -> corpus dir. Returns
    (chunk count, image count)."""
    ingest = config.section("ingest")
    client = pubmed_client_from_config(config, transport=transport)
    try:
        refs = client.search(
            term=ingest.get("term", ""),
            max_results=int(ingest.get("max_results", 100)),
            batch_size=int(ingest.get("batch_size", 50)),
        )
        articles, report = client.fetch(refs)
    finally:
        client.close()
    chunks, images = build_corpus(articles, chunk_policy_from_config(config))
    corpus_dir = config.get("corpus.dir", "data/corpus")
    write_corpus(chunks, images, corpus_dir)
    for pmid, err in report.errors.items():
        print(f"warning: article {pmid}: {err}")
    return len(chunks), len(images)


def run_index(config: AppConfig, modes=ALL_MODES) -> IndexBundle:
    """Embed + fuse the corpus and save one index per mode."""
    corpus_dir = Path(config.get("corpus.dir", "data/corpus"))
    if not corpus_dir.is_dir():
        raise ConfigError(f"corpus directory not found: {corpus_dir}")
    chunks, images = read_corpus(corpus_dir)
    embed_cfg = config.section("embed")
    text_provider = provider_from_config(embed_cfg.get("text", {}))
    image_provider = provider_from_config(embed_cfg.get("image", {}))
    fusion_cfg = config.section("fusion")
    store_cfg = config.section("store")
    hnsw_cfg = store_cfg.get("hnsw", {})
    bundle = build_indexes(
        chunks,
        images,
        text_provider,
        image_provider,
        projection_seed=int(fusion_cfg.get("projection_seed", 0)),
        fusion_config=FusionConfig(
            combine=fusion_cfg.get("combine", "concat"),
            provenance_threshold=float(fusion_cfg.get("provenance_threshold", 0.1)),
            symmetric=bool(fusion_cfg.get("symmetric", False)),
        ),
        modes=tuple(modes),
        backend=store_cfg.get("backend", "flat_exact"),
        hnsw_params=HnswParams(
            m=int(hnsw_cfg.get("m", 16)),
            ef_construction=int(hnsw_cfg.get("ef_construction", 200)),
            ef_search=int(hnsw_cfg.get("ef_search", 128)),
            seed=int(hnsw_cfg.get("seed", 42)),
        ),
    )
    store_dir = Path(config.get("store.dir", "data/store"))
    store_dir.mkdir(parents=True, exist_ok=True)
    for mode, index in bundle.indexes.items():
        index.save(store_dir / f"index_{mode}.bin")
        write_fused(bundle.records[mode], store_dir / f"fused_{mode}.jsonl")
    bundle.object_store.save(store_dir / "objects")
    return bundle


def load_bundle(config: AppConfig) -> IndexBundle:
    store_dir = Path(config.get("store.dir", "data/store"))
    if not store_dir.is_dir():
        raise ConfigError(f"store directory not found: {store_dir}")
    indexes = {}
    records = {}
    for mode in ALL_MODES:
        index_path = store_dir / f"index_{mode}.bin"
        if index_path.exists():
            indexes[mode] = VectorIndex.load(index_path)
            records[mode] = read_fused(store_dir / f"fused_{mode}.jsonl")
    if not indexes:
        raise ConfigError(f"no index files under {store_dir}")
    object_store = ObjectStore.load(store_dir / "objects")
    text_dim = int(config.get("embed.text.dim", 64))
    return IndexBundle(indexes=indexes, records=records,
                       object_store=object_store, text_dim=text_dim)


def pipeline_from_config(config: AppConfig, bundle: IndexBundle | None = None) -> QueryPipeline:
    bundle = bundle or load_bundle(config)
    text_provider = provider_from_config(config.section("embed").get("text", {}))
    template_path = config.get("llm.template_path")
    template = None
    if template_path:
        template = Path(template_path).read_text(encoding="utf-8")
    kwargs = {}
    if template:
        kwargs["template"] = template
    budget = config.get("llm.context_budget")
    if budget:
        kwargs["context_budget"] = int(budget)
    return QueryPipeline(bundle, text_provider, backend=backend_from_config(config), **kwargs)
