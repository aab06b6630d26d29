"""Print the bundled expert-grading tallies and the derived statistics.

Accuracy per model, per-scenario chi-square between the plain and the
retrieval-augmented system, and both the computed and the originally
reported effect sizes (they disagree for some scenarios, which the
mismatch flag records).
"""

from mmrag.evaluation import (
    accuracy_percent,
    hallucination_rate,
    overall_tallies,
    scenario_statistics,
)


def main():
    print(f"{'model':18} {'accuracy %':>10} {'halluc. %':>10}")
    for name, tally in overall_tallies().items():
        print(f"{name:18} {accuracy_percent(tally):10.1f} "
              f"{hallucination_rate(tally):10.1f}")

    print()
    print(f"{'scenario':36} {'chi2':>8} {'h (calc)':>9} {'h (rep.)':>9} flag")
    for row in scenario_statistics():
        flag = "mismatch" if row["effect_size_mismatch"] else ""
        print(f"{row['scenario']:36} {row['chi_square']:8.4f} "
              f"{row['effect_size_computed']:9.4f} {row['effect_size_reported']:9.4f} {flag}")


if __name__ == "__main__":
    main()
