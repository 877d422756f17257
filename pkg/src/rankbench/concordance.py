"""Concordance-based randomness coefficients.

Per test, Kendall's W measures how much the per-seed rankings agree
(1 = identical rankings across seeds). The randomness coefficient is
one minus the mean per-test concordance over the suite, so high values
mean seed choice reshuffles the rankings. The tied variant applies the
standard t^3 - t denominator correction, which is exact when ties carry
mid-ranks (mean-of-tied policy).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .ranking import RankMatrix, TiePolicy
from .results import TestId


@dataclass(frozen=True)
class ConcordanceStats:
    """Per-test concordance ingredients.

    rank_sums[i] is algorithm i's rank summed over seeds; deviation_sum
    is the squared deviation of rank sums from the no-ties expectation
    n(a+1)/2 per algorithm; tie_correction is the summed t^3 - t terms.
    """

    test: TestId
    rank_sums: tuple[float, ...]
    deviation_sum: float
    tie_correction: float
    per_test_w: float
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class CoefficientResult:
    """Aggregate coefficient value with its per-test breakdown."""

    coefficient: str
    value: float
    per_test: tuple[ConcordanceStats, ...]
    warnings: tuple[str, ...] = ()

    def fragment(self, n_ties: int | None = None) -> dict:
        """JSON-ready report fragment."""
        out = {
            "coefficient": self.coefficient,
            "value": self.value,
            "per_test": [
                {"dataset": s.test.dataset, "metric": s.test.metric, "w": s.per_test_w}
                for s in self.per_test
            ],
        }
        if n_ties is not None:
            out["n_ties"] = n_ties
        return out


def kendall_w_test(matrix: RankMatrix) -> ConcordanceStats:
    """Per-test W = 12S / (n^2 (a^3 - a)), no tie correction."""
    n, a = matrix.ranks.shape
    if a < 2:
        raise ValueError("need at least 2 algorithms")
    rank_sums = matrix.ranks.sum(axis=0)
    deviations = rank_sums - n * (a + 1) / 2
    s = float(np.dot(deviations, deviations))
    w = 12.0 * s / (n * n * (a**3 - a))
    warnings = []
    if not 0.0 <= w <= 1.0 + 1e-12:
        # Possible when non-conserving ranks (lowest-shared policy) feed
        # the uncorrected formula; reported, not clamped.
        warnings.append(
            f"test {matrix.test.dataset}/{matrix.test.metric}: "
            f"per-test W {w:.6g} outside [0, 1] (tie policy {matrix.policy.value})"
        )
    return ConcordanceStats(
        test=matrix.test,
        rank_sums=tuple(float(r) for r in rank_sums),
        deviation_sum=s,
        tie_correction=0.0,
        per_test_w=w,
        warnings=tuple(warnings),
    )


def kendall_w_tied_test(matrix: RankMatrix) -> ConcordanceStats:
    """Tie-corrected per-test W_t.

    W_t = (12 sum R_i^2 - 3 n^2 a (a+1)^2) / (n^2 a (a^2-1) - n * correction)
    with correction = sum over seeds of sum over tied groups of t^3 - t.
    Only defined for mean-of-tied ranks. A fully tied suite (denominator
    zero) is perfect agreement, so W_t = 1 with a warning.
    """
    if matrix.policy is not TiePolicy.MEAN_OF_TIED:
        raise ValueError("tie-corrected W requires mean-of-tied ranks")
    n, a = matrix.ranks.shape
    if a < 2:
        raise ValueError("need at least 2 algorithms")
    rank_sums = matrix.ranks.sum(axis=0)
    sum_r2 = float(np.dot(rank_sums, rank_sums))
    correction = float(
        sum(t**3 - t for groups in matrix.tie_groups for t in groups)
    )
    numerator = 12.0 * sum_r2 - 3.0 * n * n * a * (a + 1) ** 2
    denominator = n * n * a * (a * a - 1) - n * correction
    warnings = []
    if denominator == 0:
        w = 1.0
        warnings.append(
            f"test {matrix.test.dataset}/{matrix.test.metric}: every seed fully tied; "
            "W_t defined as 1 by convention"
        )
    else:
        w = numerator / denominator
    deviations = rank_sums - n * (a + 1) / 2
    return ConcordanceStats(
        test=matrix.test,
        rank_sums=tuple(float(r) for r in rank_sums),
        deviation_sum=float(np.dot(deviations, deviations)),
        tie_correction=correction,
        per_test_w=w,
        warnings=tuple(warnings),
    )


def w_randomness(matrices: Sequence[RankMatrix], tied: bool = False) -> CoefficientResult:
    """Randomness coefficient: 1 - mean per-test concordance, TestId order."""
    if not matrices:
        raise ValueError("empty suite")
    per_test = tuple(
        (kendall_w_tied_test if tied else kendall_w_test)(m)
        for m in sorted(matrices, key=lambda m: m.test)
    )
    value = 1.0 - float(np.mean([s.per_test_w for s in per_test]))
    warnings = tuple(w for s in per_test for w in s.warnings)
    return CoefficientResult(
        coefficient="w_tied" if tied else "w",
        value=value,
        per_test=per_test,
        warnings=warnings,
    )
