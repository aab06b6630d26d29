"""Ranked-retrieval and extractive-QA metrics."""

from __future__ import annotations

import re
import string
from collections import Counter


def precision_at_k(ranked_ids: list[str], relevant: set[str], k: int) -> float:
    """|top-k intersect relevant| / k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    top = ranked_ids[:k]
    return sum(1 for i in top if i in relevant) / k


def recall(ranked_ids: list[str], relevant: set[str]) -> float:
    """|retrieved intersect relevant| / |relevant|."""
    if not relevant:
        raise ValueError("relevant set must be non-empty")
    return len(set(ranked_ids) & relevant) / len(relevant)


def average_precision(ranked_ids: list[str], relevant: set[str]) -> float:
    """Mean of precision at each rank where a relevant item appears."""
    if not relevant:
        raise ValueError("relevant set must be non-empty")
    hits = 0
    total = 0.0
    for rank, rid in enumerate(ranked_ids, start=1):
        if rid in relevant:
            hits += 1
            total += hits / rank
    return total / len(relevant)


def mean_average_precision(runs: list[tuple[list[str], set[str]]]) -> float:
    if not runs:
        return 0.0
    return sum(average_precision(r, rel) for r, rel in runs) / len(runs)


_PUNCT_TABLE = str.maketrans("", "", string.punctuation)


def normalize_answer(s: str) -> str:
    """Lowercase, strip punctuation, collapse whitespace."""
    s = s.lower().translate(_PUNCT_TABLE)
    return " ".join(s.split())


def exact_match(prediction: str, golds: list[str]) -> int:
    norm = normalize_answer(prediction)
    return int(any(norm == normalize_answer(g) for g in golds))


def _f1_single(prediction: str, gold: str) -> float:
    pred_tokens = normalize_answer(prediction).split()
    gold_tokens = normalize_answer(gold).split()
    if not pred_tokens or not gold_tokens:
        return float(pred_tokens == gold_tokens)
    common = Counter(pred_tokens) & Counter(gold_tokens)
    same = sum(common.values())
    if same == 0:
        return 0.0
    precision = same / len(pred_tokens)
    rec = same / len(gold_tokens)
    return 2 * precision * rec / (precision + rec)


def token_f1(prediction: str, golds: list[str]) -> float:
    """Max over golds of the harmonic mean of token precision and recall."""
    if not golds:
        raise ValueError("need at least one gold answer")
    return max(_f1_single(prediction, g) for g in golds)
