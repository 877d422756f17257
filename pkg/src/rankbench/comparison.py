"""Framework Comparison Rank: head-to-head ranking of evaluation regimes.

Two or more frameworks (for example default hyperparameters vs tuned
ones) sharing the same algorithms, tests and seeds are ranked against
each other on every comparison unit, and the per-framework mean rank is
the FCR. Rank sums are conserved (mean-of-tied), so FCRs always sum to
f(f+1)/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .ranking import TiePolicy, rank_row
from .results import ResultTable, ValidationError, resolve_failures, scores_for_test


class Granularity(Enum):
    PER_ALGORITHM_TEST = "per-algorithm-test"
    PER_TEST = "per-test"


@dataclass(frozen=True)
class FrameworkResult:
    label: str
    table: ResultTable


@dataclass(frozen=True)
class FcrResult:
    ranks: dict[str, float]  # label -> mean rank
    units: int
    granularity: Granularity

    def fragment(self) -> dict:
        return {
            "fcr": dict(self.ranks),
            "units": self.units,
            "granularity": self.granularity.value,
        }


def fcr(
    frameworks: list[FrameworkResult],
    granularity: Granularity = Granularity.PER_ALGORITHM_TEST,
) -> FcrResult:
    """Framework Comparison Rank over all comparison units.

    Per unit the frameworks' seed-mean scores (also algorithm-mean for
    per-test granularity) are ranked by the metric's direction with
    mean-of-tied; FCR is the mean rank per framework.
    """
    if len(frameworks) < 2:
        raise ValueError("need at least 2 frameworks")
    labels = [f.label for f in frameworks]
    if len(set(labels)) != len(labels):
        raise ValidationError("framework labels must be unique")

    ref = frameworks[0].table
    for f in frameworks[1:]:
        t = f.table
        if (
            t.algorithms != ref.algorithms
            or t.suite != ref.suite
            or set(t.registry) != set(ref.registry)
        ):
            raise ValidationError(
                f"framework {f.label!r} grid does not match {frameworks[0].label!r}"
            )
        for name, spec in ref.registry.items():
            if t.registry[name].direction != spec.direction:
                raise ValidationError(
                    f"framework {f.label!r}: metric {name!r} direction mismatch"
                )
    if not ref.suite:
        raise ValidationError("empty suite")

    tables = [resolve_failures(f.table) for f in frameworks]

    # unit -> per-framework score, ordered as `frameworks`
    unit_scores: list[tuple[object, str, list[float]]] = []
    for test in ref.suite:
        per_table = [scores_for_test(t, test) for t in tables]
        if granularity is Granularity.PER_ALGORITHM_TEST:
            for j, alg in enumerate(ref.algorithms):
                scores = [
                    float(np.mean([rows[seed][j] for seed in t.seeds]))
                    for t, rows in zip(tables, per_table)
                ]
                unit_scores.append(((test, alg), test.metric, scores))
        else:
            scores = [
                float(np.mean([rows[seed] for seed in t.seeds]))
                for t, rows in zip(tables, per_table)
            ]
            unit_scores.append((test, test.metric, scores))

    totals = np.zeros(len(frameworks))
    for _, metric, scores in unit_scores:
        ranks, _ = rank_row(
            scores, ref.registry[metric].direction, TiePolicy.MEAN_OF_TIED, 0.0
        )
        totals += np.array(ranks)
    means = totals / len(unit_scores)
    return FcrResult(
        ranks={label: float(r) for label, r in zip(labels, means)},
        units=len(unit_scores),
        granularity=granularity,
    )
