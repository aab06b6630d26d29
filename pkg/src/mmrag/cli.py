"""Command-line entry points: ingest, index, query, eval, serve."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .config import AppConfig
from .errors import ConfigError, MmragError, TransportError
from .evaluation import load_gold_qa, load_gold_retrieval, run_ablation_matrix, write_reports
from .pipeline import ALL_MODES, MODE_FULL, Query
from .service.runtime import load_bundle, pipeline_from_config, run_index, run_ingest


@click.group()
@click.option("--config", "config_path", default="config.yaml", show_default=True,
              type=click.Path(), help="Path to the YAML config file.")
@click.pass_context
def main(ctx, config_path):
    ctx.ensure_object(dict)
    ctx.obj["config_path"] = config_path


def _load_config(ctx) -> AppConfig:
    try:
        return AppConfig.load(ctx.obj["config_path"])
    except ConfigError as exc:
        raise click.ClickException(str(exc))


@main.command()
@click.pass_context
def ingest(ctx):
    """Fetch articles, clean and chunk them into the corpus directory."""
    config = _load_config(ctx)
    try:
        n_chunks, n_images = run_ingest(config)
    except TransportError as exc:
        raise click.ClickException(f"transport error: {exc}")
    click.echo(f"wrote {n_chunks} chunks and {n_images} images to "
               f"{config.get('corpus.dir', 'data/corpus')}")


@main.command()
@click.option("--modes", default=",".join(ALL_MODES), show_default=True,
              help="Comma-separated retrieval modes to index.")
@click.pass_context
def index(ctx, modes):
    """Embed and fuse the corpus; save one index per mode."""
    config = _load_config(ctx)
    mode_list = [m.strip() for m in modes.split(",") if m.strip()]
    try:
        bundle = run_index(config, modes=mode_list)
    except ConfigError as exc:
        raise click.ClickException(str(exc))
    for mode, ix in bundle.indexes.items():
        click.echo(f"{mode}: {len(ix)} vectors (dim {ix.dim})")


@main.command()
@click.argument("question")
@click.option("--mode", default=MODE_FULL, show_default=True)
@click.option("-k", "--top-k", default=10, show_default=True)
@click.pass_context
def query(ctx, question, mode, top_k):
    """Answer one question and print sources and images."""
    config = _load_config(ctx)
    try:
        pipeline = pipeline_from_config(config)
        answer = pipeline.answer(Query(question=question, top_k=top_k, mode=mode))
    except MmragError as exc:
        raise click.ClickException(str(exc))
    click.echo(answer.text)
    if answer.degraded:
        click.echo("\n[degraded: no generation backend]")
    click.echo("\nSources:")
    for rank, hit in enumerate(answer.retrieval.hits, start=1):
        cited = "*" if hit.chunk.chunk_id in answer.cited_chunk_ids else " "
        click.echo(f" {cited}{rank}. {hit.chunk.chunk_id} (score {hit.hit.score:.4f}) "
                   f"{hit.chunk.section_title}")
    if answer.image_ids:
        click.echo("\nImages:")
        for image_id in answer.image_ids:
            click.echo(f"  {image_id}")


@main.command(name="eval")
@click.option("--corpus", "corpus_dir", default=None, help="Override store directory.")
@click.option("--gold", "gold_dir", default=None, help="Directory with gold_retrieval.jsonl / gold_qa.jsonl.")
@click.option("--modes", default=",".join(ALL_MODES), show_default=True)
@click.option("-k", default=10, show_default=True)
@click.pass_context
def eval_cmd(ctx, corpus_dir, gold_dir, modes, k):
    """Run the ablation matrix over a labeled corpus and write reports."""
    config = _load_config(ctx)
    if corpus_dir:
        config.data.setdefault("store", {})["dir"] = corpus_dir
    gold_root = Path(gold_dir or config.get("eval.gold_dir", "gold"))
    mode_list = [m.strip() for m in modes.split(",") if m.strip()]
    try:
        bundle = load_bundle(config)
        pipelines = {m: pipeline_from_config(config, bundle) for m in mode_list}
        gold_retrieval_path = gold_root / "gold_retrieval.jsonl"
        gold_qa_path = gold_root / "gold_qa.jsonl"
        gold_retrieval = load_gold_retrieval(gold_retrieval_path) if gold_retrieval_path.exists() else []
        gold_qa = load_gold_qa(gold_qa_path) if gold_qa_path.exists() else []
        reports = run_ablation_matrix(
            pipelines, gold_retrieval, gold_qa, mode_list, k=k,
            config_snapshot=config.data,
        )
    except MmragError as exc:
        raise click.ClickException(str(exc))
    paths = write_reports(reports, config.get("eval.runs_dir", "runs"))
    for report, path in zip(reports, paths):
        click.echo(f"{report.mode}: " + ", ".join(
            f"{name}={value:.4f}" for name, value in report.metrics.items()))
        click.echo(f"  -> {path}")


@main.command()
@click.pass_context
def serve(ctx):
    """Run the HTTP service."""
    import uvicorn

    config = _load_config(ctx)
    from .service.app import create_app

    app = create_app(config)
    uvicorn.run(app,
                host=config.get("server.host", "127.0.0.1"),
                port=int(config.get("server.port", 8000)))


if __name__ == "__main__":
    main()
