"""Run the retrieval/QA evaluation matrix across ablation modes."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ValidationError
from ..pipeline import Query, QueryPipeline
from .metrics import (
    average_precision,
    exact_match,
    mean_average_precision,
    precision_at_k,
    recall,
    token_f1,
)


@dataclass
class GoldRetrieval:
    query: str
    relevant_ids: set[str]

    def __post_init__(self):
        self.relevant_ids = set(self.relevant_ids)
        if not self.relevant_ids:
            raise ValidationError("must be non-empty", "relevant_ids")


@dataclass
class GoldQA:
    question: str
    gold_answers: list[str]

    def __post_init__(self):
        if not self.gold_answers:
            raise ValidationError("need at least one gold answer", "gold_answers")


@dataclass
class RunReport:
    mode: str
    metrics: dict[str, float]
    per_query: list[dict]
    config: dict
    timestamp: str

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "metrics": self.metrics,
            "per_query": self.per_query,
            "config": self.config,
            "timestamp": self.timestamp,
        }


def load_gold_retrieval(path: str | Path) -> list[GoldRetrieval]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                d = json.loads(line)
                out.append(GoldRetrieval(query=d["query"], relevant_ids=set(d["relevant_ids"])))
    return out


def load_gold_qa(path: str | Path) -> list[GoldQA]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                d = json.loads(line)
                out.append(GoldQA(question=d["question"], gold_answers=d["gold_answers"]))
    return out


def evaluate_mode(
    pipeline: QueryPipeline,
    mode: str,
    gold_retrieval: list[GoldRetrieval],
    gold_qa: list[GoldQA],
    k: int = 10,
    config_snapshot: dict | None = None,
) -> RunReport:
    per_query: list[dict] = []
    runs: list[tuple[list[str], set[str]]] = []
    p_sum = r_sum = 0.0

    for gold in gold_retrieval:
        answer = pipeline.answer(Query(question=gold.query, top_k=k, mode=mode))
        ranked = answer.retrieval.chunk_ids()
        p = precision_at_k(ranked, gold.relevant_ids, k)
        r = recall(ranked, gold.relevant_ids)
        runs.append((ranked, gold.relevant_ids))
        p_sum += p
        r_sum += r
        per_query.append({
            "kind": "retrieval",
            "query": gold.query,
            "ranked_ids": ranked,
            "relevant_ids": sorted(gold.relevant_ids),
            "image_ids": sorted({i for h in answer.retrieval.hits for i in h.image_ids}),
            "precision_at_k": p,
            "recall": r,
            "average_precision": average_precision(ranked, gold.relevant_ids),
        })

    em_sum = f1_sum = 0.0
    for gold in gold_qa:
        answer = pipeline.answer(Query(question=gold.question, top_k=k, mode=mode))
        em = exact_match(answer.text, gold.gold_answers)
        f1 = token_f1(answer.text, gold.gold_answers)
        em_sum += em
        f1_sum += f1
        per_query.append({
            "kind": "qa",
            "question": gold.question,
            "prediction": answer.text,
            "exact_match": em,
            "token_f1": f1,
        })

    n_ret = max(len(gold_retrieval), 1)
    n_qa = max(len(gold_qa), 1)
    metrics = {
        "precision_at_k": p_sum / n_ret,
        "recall": r_sum / n_ret,
        "map": mean_average_precision(runs),
        "exact_match": em_sum / n_qa,
        "f1": f1_sum / n_qa,
        "accuracy": em_sum / n_qa,
    }
    return RunReport(
        mode=mode,
        metrics=metrics,
        per_query=per_query,
        config=config_snapshot or {},
        timestamp=time.strftime("%Y%m%dT%H%M%S"),
    )


def run_ablation_matrix(
    pipelines: dict[str, QueryPipeline],
    gold_retrieval: list[GoldRetrieval],
    gold_qa: list[GoldQA],
    modes: list[str],
    k: int = 10,
    config_snapshot: dict | None = None,
) -> list[RunReport]:
    """One report per requested mode; every mode needs a built pipeline."""
    if not gold_retrieval and not gold_qa:
        raise ValidationError("no gold labels supplied", "gold")
    missing = [m for m in modes if m not in pipelines]
    if missing:
        raise ValidationError(f"no pipeline for modes: {missing}", "modes")
    return [
        evaluate_mode(pipelines[mode], mode, gold_retrieval, gold_qa, k, config_snapshot)
        for mode in modes
    ]


def write_reports(reports: list[RunReport], runs_dir: str | Path) -> list[Path]:
    runs = Path(runs_dir)
    runs.mkdir(parents=True, exist_ok=True)
    paths = []
    for report in reports:
        path = runs / f"{report.timestamp}-{report.mode}.json"
        path.write_text(json.dumps(report.to_dict(), indent=2), encoding="utf-8")
        paths.append(path)
    return paths
