"""Retrieval/QA metrics, grading, proportion statistics and ablation runs."""

from .ablation import (
    GoldQA,
    GoldRetrieval,
    RunReport,
    evaluate_mode,
    load_gold_qa,
    load_gold_retrieval,
    run_ablation_matrix,
    write_reports,
)
from .grading import (
    CORRECTNESS_THRESHOLD,
    Grade,
    ScenarioTally,
    accuracy_percent,
    grade_response,
    hallucination_rate,
    tally_grades,
)
from .metrics import (
    average_precision,
    exact_match,
    mean_average_precision,
    normalize_answer,
    precision_at_k,
    recall,
    token_f1,
)
from .stats import chi_square_2x2, cohens_h
from .tallies import (
    SCENARIOS,
    model_tallies,
    overall_tallies,
    scenario_statistics,
    tallies_payload,
    write_tallies,
)

__all__ = [
    "precision_at_k", "recall", "average_precision", "mean_average_precision",
    "exact_match", "token_f1", "normalize_answer",
    "cohens_h", "chi_square_2x2",
    "Grade", "grade_response", "ScenarioTally", "accuracy_percent",
    "hallucination_rate", "tally_grades", "CORRECTNESS_THRESHOLD",
    "GoldRetrieval", "GoldQA", "RunReport", "evaluate_mode", "run_ablation_matrix",
    "load_gold_retrieval", "load_gold_qa", "write_reports",
    "SCENARIOS", "model_tallies", "overall_tallies", "scenario_statistics",
    "tallies_payload", "write_tallies",
]
