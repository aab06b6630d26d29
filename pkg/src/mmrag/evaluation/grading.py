"""Clinical-scenario response grading and tally summaries.

A response is graded correct when it follows at least 75% of the expected
instructions (boundary inclusive) and contains no significant medical
error; any significant error makes it a hallucination regardless of the
instruction score.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

CORRECTNESS_THRESHOLD = 0.75


class Grade(str, Enum):
    CORRECT = "correct"
    WRONG_HALLUCINATION = "wrong_hallucination"
    WRONG_OTHER = "wrong_other"


def grade_response(instruction_accuracy: float, has_major_error: bool) -> Grade:
    if not 0.0 <= instruction_accuracy <= 1.0:
        raise ValueError("instruction_accuracy must be in [0, 1]")
    if has_major_error:
        return Grade.WRONG_HALLUCINATION
    if instruction_accuracy >= CORRECTNESS_THRESHOLD:
        return Grade.CORRECT
    return Grade.WRONG_OTHER


@dataclass
class ScenarioTally:
    scenario: str
    correct: int
    total: int
    hallucinations: int = 0

    def __post_init__(self):
        if not 0 <= self.correct <= self.total:
            raise ValueError("require 0 <= correct <= total")
        if not 0 <= self.hallucinations <= self.total:
            raise ValueError("require 0 <= hallucinations <= total")


def accuracy_percent(tally: ScenarioTally) -> float:
    """Correct responses as a percentage of the total."""
    if tally.total == 0:
        return 0.0
    return 100.0 * tally.correct / tally.total


def hallucination_rate(tally: ScenarioTally) -> float:
    """Hallucinating responses as a percentage of the total."""
    if tally.total == 0:
        return 0.0
    return 100.0 * tally.hallucinations / tally.total


def tally_grades(scenario: str, grades: list[Grade]) -> ScenarioTally:
    return ScenarioTally(
        scenario=scenario,
        correct=sum(1 for g in grades if g is Grade.CORRECT),
        total=len(grades),
        hallucinations=sum(1 for g in grades if g is Grade.WRONG_HALLUCINATION),
    )
