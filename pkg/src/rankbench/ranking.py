"""Per-seed rankings of algorithms from per-test scores.

Ties are resolved under one of two policies: the mean of the tied
positions (fractional ranking, "1 2.5 2.5 4") or the lowest shared
position (competition ranking, "1 2 2 4"). Tie groups are equivalence
classes under the transitive closure of |v_i - v_j| <= epsilon.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .results import Direction, ResultTable, TestId, ValidationError, scores_for_test


class TiePolicy(Enum):
    MEAN_OF_TIED = "mean"
    LOWEST_SHARED_RANK = "lowest"


@dataclass(frozen=True)
class RankMatrix:
    """Ranks for one test: n seeds (rows) by a algorithms (columns).

    ``tie_groups[j]`` lists the sizes of tied groups (size >= 2 only)
    in seed row j. Half-integer ranks from the mean policy are exact in
    binary floating point, so downstream sums stay bit-stable.
    """

    test: TestId
    ranks: np.ndarray
    tie_groups: tuple[tuple[int, ...], ...]
    algorithms: tuple[str, ...]
    seeds: tuple[int, ...]
    policy: TiePolicy

    @property
    def n_seeds(self) -> int:
        return self.ranks.shape[0]

    @property
    def n_algorithms(self) -> int:
        return self.ranks.shape[1]


def rank_row(
    values: Sequence[float],
    direction: Direction,
    policy: TiePolicy = TiePolicy.MEAN_OF_TIED,
    tie_epsilon: float = 0.0,
) -> tuple[list[float], list[int]]:
    """Rank one score vector; best value gets rank 1.

    Returns the rank for each input position plus the sizes of tied
    groups (>= 2). Raises on non-finite values.
    """
    a = len(values)
    if a < 2:
        raise ValueError("need at least 2 values to rank")
    if tie_epsilon < 0:
        raise ValueError("tie_epsilon must be nonnegative")
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"non-finite value {v!r}")

    # Sort so the best value comes first, then chain eps-close neighbours
    # into tie groups (transitive closure on the sorted order).
    sign = -1.0 if direction is Direction.HIGHER_BETTER else 1.0
    order = sorted(range(a), key=lambda i: sign * values[i])
    ranks = [0.0] * a
    group_sizes: list[int] = []
    pos = 0
    while pos < a:
        end = pos + 1
        while end < a and abs(
            sign * values[order[end]] - sign * values[order[end - 1]]
        ) <= tie_epsilon:
            end += 1
        t = end - pos
        p = pos + 1  # 1-based first position of the block
        rank = p if policy is TiePolicy.LOWEST_SHARED_RANK else (2 * p + t - 1) / 2
        for k in range(pos, end):
            ranks[order[k]] = float(rank)
        if t >= 2:
            group_sizes.append(t)
        pos = end
    return ranks, group_sizes


def build_rank_matrices(
    table: ResultTable,
    policy: TiePolicy = TiePolicy.MEAN_OF_TIED,
    tie_epsilon: float = 0.0,
) -> list[RankMatrix]:
    """One RankMatrix per test, in TestId order.

    Rows follow the table's seed order, columns its algorithm order.
    The table must be failure-resolved (every record has a value).
    """
    matrices = []
    for test in table.suite:
        direction = table.registry[test.metric].direction
        rows = []
        groups = []
        for seed, values in scores_for_test(table, test).items():
            try:
                ranks, sizes = rank_row(values, direction, policy, tie_epsilon)
            except ValueError as exc:
                raise ValidationError(f"test {test}, seed {seed}: {exc}") from exc
            rows.append(ranks)
            groups.append(tuple(sizes))
        matrices.append(
            RankMatrix(
                test=test,
                ranks=np.array(rows, dtype=float),
                tie_groups=tuple(groups),
                algorithms=table.algorithms,
                seeds=table.seeds,
                policy=policy,
            )
        )
    return matrices


def count_ties(matrices: Iterable[RankMatrix]) -> int:
    """Total number of tied groups (size >= 2) over all tests and seeds."""
    return sum(len(groups) for m in matrices for groups in m.tie_groups)


def matrices_to_csv(matrices: Iterable[RankMatrix]) -> str:
    """Debug export: one row per (test, seed, algorithm) rank."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["dataset", "metric", "seed", "algorithm", "rank"])
    for m in matrices:
        for i, seed in enumerate(m.seeds):
            for j, alg in enumerate(m.algorithms):
                writer.writerow(
                    [m.test.dataset, m.test.metric, seed, alg, repr(float(m.ranks[i, j]))]
                )
    return buf.getvalue()
