import json
import math

import numpy as np
import pytest

from mmrag.errors import ValidationError
from mmrag.evaluation import (
    Grade,
    GoldQA,
    GoldRetrieval,
    ScenarioTally,
    accuracy_percent,
    average_precision,
    chi_square_2x2,
    cohens_h,
    exact_match,
    grade_response,
    hallucination_rate,
    mean_average_precision,
    model_tallies,
    overall_tallies,
    precision_at_k,
    recall,
    run_ablation_matrix,
    scenario_statistics,
    tallies_payload,
    token_f1,
)


# -- retrieval metrics -----------------------------------------------------

def test_precision_all_relevant():
    ranked = [f"d{i}" for i in range(10)]
    assert precision_at_k(ranked, set(ranked), 10) == 1.0


def test_precision_two_thirds():
    assert abs(precision_at_k(["a", "b", "c"], {"a", "c"}, 3) - 2 / 3) < 1e-12


def test_precision_disjoint():
    assert precision_at_k(["a", "b"], {"x"}, 2) == 0.0


def test_recall_cases():
    assert recall(["a", "b", "c"], {"a", "b"}) == 1.0
    assert recall(["a"], {"a", "b"}) == 0.5
    assert recall([], {"a"}) == 0.0


def test_map_perfect_single():
    assert mean_average_precision([(["r"], {"r"})]) == 1.0


def test_map_worked_example():
    # relevant at ranks 1 and 3 with |relevant| = 2: (1/1 + 2/3) / 2
    value = mean_average_precision([(["r1", "x", "r2"], {"r1", "r2"})])
    assert abs(value - 0.83333) < 1e-5


def test_map_none_retrieved():
    assert mean_average_precision([(["x", "y"], {"r"})]) == 0.0


def naive_precision(ranked, relevant, k):
    return len([r for r in ranked[:k] if r in relevant]) / k


def naive_recall(ranked, relevant):
    return len(set(ranked) & relevant) / len(relevant)


def naive_ap(ranked, relevant):
    correct, cum = 0, 0.0
    for i, r in enumerate(ranked):
        if r in relevant:
            correct += 1
            cum += correct / (i + 1)
    return cum / len(relevant)


def test_metrics_match_naive_oracle_random():
    rng = np.random.default_rng(0)
    for _ in range(200):
        universe = [f"d{i}" for i in range(30)]
        ranked = list(rng.permutation(universe))[: rng.integers(1, 30)]
        relevant = set(rng.choice(universe, size=rng.integers(1, 10), replace=False))
        k = int(rng.integers(1, 15))
        assert precision_at_k(ranked, relevant, k) == naive_precision(ranked, relevant, k)
        assert recall(ranked, relevant) == naive_recall(ranked, relevant)
        assert abs(average_precision(ranked, relevant) - naive_ap(ranked, relevant)) < 1e-12


# -- QA metrics ------------------------------------------------------------

def test_em_case_insensitive():
    assert exact_match("Amyloid Beta", ["amyloid beta"]) == 1


def test_em_zero_f1_one_on_token_permutation():
    pred, gold = "amyloid beta plaques", "beta amyloid plaques"
    assert exact_match(pred, [gold]) == 0
    assert token_f1(pred, [gold]) == 1.0


def test_empty_prediction():
    assert exact_match("", ["gold answer"]) == 0
    assert token_f1("", ["gold answer"]) == 0.0


def test_f1_max_over_golds():
    assert token_f1("a b", ["z z z", "a b"]) == 1.0


# -- grading ---------------------------------------------------------------

def test_grade_boundary_inclusive():
    assert grade_response(0.75, False) is Grade.CORRECT


def test_grade_major_error_dominates():
    assert grade_response(0.9, True) is Grade.WRONG_HALLUCINATION


def test_grade_low_accuracy():
    assert grade_response(0.5, False) is Grade.WRONG_OTHER


def test_accuracy_percent_table_values():
    assert accuracy_percent(ScenarioTally("overall", 42, 50)) == 84.0
    assert accuracy_percent(ScenarioTally("overall", 37, 50)) == 74.0
    assert hallucination_rate(ScenarioTally("overall", 42, 50, hallucinations=3)) == 6.0
    assert accuracy_percent(ScenarioTally("empty", 0, 10)) == 0.0


def test_tally_validation():
    with pytest.raises(ValueError):
        ScenarioTally("s", 5, 4)


# -- statistics ------------------------------------------------------------

def test_cohens_h_equal_proportions():
    assert cohens_h(0.5, 0.5) == 0.0


def test_cohens_h_arcsine_value():
    assert abs(cohens_h(0.8, 0.9) - (-0.28379)) < 1e-4


def test_cohens_h_extreme():
    assert abs(cohens_h(1.0, 0.0) - math.pi) < 1e-9


def test_cohens_h_antisymmetry():
    rng = np.random.default_rng(1)
    for _ in range(50):
        p1, p2 = rng.uniform(0, 1, size=2)
        assert abs(cohens_h(p1, p2) + cohens_h(p2, p1)) < 1e-12


def test_cohens_h_domain():
    with pytest.raises(ValueError):
        cohens_h(1.2, 0.5)


def test_chi_square_table_values():
    assert abs(chi_square_2x2(8, 2, 9, 1) - 0.3922) < 1e-4
    assert abs(chi_square_2x2(9, 1, 7, 3) - 1.25) < 1e-4
    assert abs(chi_square_2x2(9, 1, 8, 2) - 0.3922) < 1e-4
    assert chi_square_2x2(10, 0, 10, 0) == 0.0


def test_chi_square_row_column_swap_invariance():
    rng = np.random.default_rng(2)
    for _ in range(50):
        a, b, c, d = (int(x) for x in rng.integers(0, 20, size=4))
        assert abs(chi_square_2x2(a, b, c, d) - chi_square_2x2(d, c, b, a)) < 1e-12


def test_chi_square_negative_counts():
    with pytest.raises(ValueError):
        chi_square_2x2(-1, 2, 3, 4)


# -- bundled tallies -------------------------------------------------------

def test_bundled_totals():
    overall = overall_tallies()
    assert overall["multimodal_rag"].correct == 42
    assert overall["gpt4"].correct == 37
    assert overall["human"].correct == 45
    assert accuracy_percent(overall["multimodal_rag"]) == 84.0
    assert hallucination_rate(overall["mistral"]) == 18.0


def test_scenario_statistics_match_reported_chi_square():
    rows = {r["scenario"]: r for r in scenario_statistics()}
    assert rows["early_diagnosis_and_monitoring"]["chi_square"] == 0.0
    assert abs(rows["medication_management"]["chi_square"] - 0.3922) < 1e-4
    assert abs(rows["non_pharma_interventions"]["chi_square"] - 1.25) < 1e-4
    assert rows["medication_management"]["effect_size_mismatch"] is True
    assert rows["early_diagnosis_and_monitoring"]["effect_size_mismatch"] is False


def test_bundled_fixture_file_in_sync():
    import pathlib

    path = pathlib.Path(__file__).resolve().parents[1] / "configs" / "tallies.json"
    assert json.loads(path.read_text()) == json.loads(json.dumps(tallies_payload()))


# -- ablation matrix -------------------------------------------------------

def build_eval_pipelines():
    from mmrag.embed import ProviderConfig, ProviderKind
    from mmrag.pipeline import EchoBackend, QueryPipeline, build_indexes
    from test_pipeline import planted_corpus

    provider = ProviderConfig(kind=ProviderKind.DETERMINISTIC_TEST, dim=16)
    chunks, images = planted_corpus()
    bundle = build_indexes(chunks, images, provider, provider)
    return {
        mode: QueryPipeline(bundle, provider, backend=EchoBackend())
        for mode in bundle.indexes
    }


GOLD_RETRIEVAL = [
    GoldRetrieval(query="amyloid beta plaques accumulate", relevant_ids={"10:s0:b0"}),
    GoldRetrieval(query="donepezil dosing and tolerability",
                  relevant_ids={"20:s0:b0", "20:f0"}),
]
GOLD_QA = [GoldQA(question="amyloid beta plaques accumulate", gold_answers=["anything"])]


def test_ablation_three_reports():
    pipelines = build_eval_pipelines()
    reports = run_ablation_matrix(
        pipelines, GOLD_RETRIEVAL, GOLD_QA,
        modes=["full", "no_fusion_concat", "text_only"], k=3)
    assert [r.mode for r in reports] == ["full", "no_fusion_concat", "text_only"]
    for report in reports:
        for value in report.metrics.values():
            assert 0.0 <= value <= 1.0


def test_ablation_single_mode():
    pipelines = build_eval_pipelines()
    reports = run_ablation_matrix(pipelines, GOLD_RETRIEVAL, GOLD_QA, modes=["text_only"], k=3)
    assert len(reports) == 1


def test_ablation_missing_pipeline():
    pipelines = build_eval_pipelines()
    pipelines.pop("full")
    with pytest.raises(ValidationError):
        run_ablation_matrix(pipelines, GOLD_RETRIEVAL, GOLD_QA, modes=["full"])


def test_ablation_requires_gold():
    with pytest.raises(ValidationError):
        run_ablation_matrix(build_eval_pipelines(), [], [], modes=["full"])


def test_ablation_deterministic_minus_timestamp():
    pipelines = build_eval_pipelines()
    a = run_ablation_matrix(pipelines, GOLD_RETRIEVAL, GOLD_QA, modes=["text_only"], k=3)[0]
    b = run_ablation_matrix(pipelines, GOLD_RETRIEVAL, GOLD_QA, modes=["text_only"], k=3)[0]
    da, db = a.to_dict(), b.to_dict()
    da.pop("timestamp")
    db.pop("timestamp")
    assert da == db


def test_ablation_image_provenance_by_mode():
    pipelines = build_eval_pipelines()
    reports = {r.mode: r for r in run_ablation_matrix(
        pipelines, GOLD_RETRIEVAL, GOLD_QA, modes=["full", "text_only"], k=5)}
    full_images = [q["image_ids"] for q in reports["full"].per_query if q["kind"] == "retrieval"]
    text_images = [q["image_ids"] for q in reports["text_only"].per_query if q["kind"] == "retrieval"]
    assert any(ids for ids in full_images)
    assert all(ids == [] for ids in text_images)
