import numpy as np
import pytest
from hypothesis import given, strategies as st

from rankbench.ranking import (
    TiePolicy,
    build_rank_matrices,
    count_ties,
    matrices_to_csv,
    rank_row,
)
from rankbench.results import (
    Direction,
    MetricSpec,
    ResultRecord,
    ResultTable,
    Status,
    resolve_failures,
)


class TestRankRow:
    def test_fractional_ranking(self):
        ranks, groups = rank_row((0.9, 0.7, 0.7, 0.1), Direction.HIGHER_BETTER)
        assert ranks == [1.0, 2.5, 2.5, 4.0]
        assert groups == [2]

    def test_lower_better_mean_ties(self):
        ranks, _ = rank_row((0.0, 0.2, 0.0), Direction.LOWER_BETTER)
        assert ranks == [1.5, 3.0, 1.5]

    def test_lower_better_competition_ranking(self):
        ranks, _ = rank_row(
            (0.0, 0.2, 0.0), Direction.LOWER_BETTER, TiePolicy.LOWEST_SHARED_RANK
        )
        assert ranks == [1.0, 3.0, 1.0]

    def test_epsilon_transitive_closure(self):
        # 0.10 and 0.18 are not within eps of each other but chain via 0.14.
        ranks, groups = rank_row(
            (0.10, 0.14, 0.18, 0.5), Direction.LOWER_BETTER, tie_epsilon=0.05
        )
        assert ranks == [2.0, 2.0, 2.0, 4.0]
        assert groups == [3]

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError, match="non-finite"):
            rank_row((0.1, float("nan")), Direction.HIGHER_BETTER)

    def test_single_value_rejected(self):
        with pytest.raises(ValueError):
            rank_row((0.1,), Direction.HIGHER_BETTER)


values_vec = st.lists(
    st.floats(min_value=-100, max_value=100, allow_nan=False),
    min_size=2,
    max_size=8,
)


@given(values_vec)
def test_mean_ties_rank_sum_conserved(values):
    a = len(values)
    ranks, _ = rank_row(values, Direction.HIGHER_BETTER, TiePolicy.MEAN_OF_TIED)
    assert sum(ranks) == a * (a + 1) / 2


@given(values_vec)
def test_lowest_rank_sum_bounded(values):
    a = len(values)
    ranks, _ = rank_row(values, Direction.HIGHER_BETTER, TiePolicy.LOWEST_SHARED_RANK)
    assert sum(ranks) <= a * (a + 1) / 2


@given(values_vec, st.randoms(use_true_random=False))
def test_permutation_equivariance(values, rnd):
    perm = list(range(len(values)))
    rnd.shuffle(perm)
    base, _ = rank_row(values, Direction.HIGHER_BETTER)
    permuted, _ = rank_row([values[p] for p in perm], Direction.HIGHER_BETTER)
    assert permuted == [base[p] for p in perm]


@given(st.lists(st.integers(-400, 400).map(lambda i: i / 4), min_size=2, max_size=8))
def test_monotone_transform_invariance(values):
    # Coarse grid keeps arctan injective in floating point.
    base, _ = rank_row(values, Direction.HIGHER_BETTER)
    squashed, _ = rank_row([np.arctan(v) + 3.0 for v in values], Direction.HIGHER_BETTER)
    assert squashed == base


@given(st.lists(st.integers(-1000, 1000), min_size=2, max_size=8, unique=True))
def test_policies_agree_on_distinct_values(values):
    mean, g1 = rank_row(values, Direction.LOWER_BETTER, TiePolicy.MEAN_OF_TIED)
    lowest, g2 = rank_row(values, Direction.LOWER_BETTER, TiePolicy.LOWEST_SHARED_RANK)
    assert mean == lowest
    assert g1 == g2 == []


def _table(score):
    """Build a table from score[alg][dataset][metric][seed]."""
    metrics = sorted({m for d in score.values() for m in list(d.values())[0]})
    registry = {m: MetricSpec(m, Direction.HIGHER_BETTER) for m in metrics}
    records = []
    for alg, per_ds in score.items():
        for ds, per_m in per_ds.items():
            for m, per_seed in per_m.items():
                for seed, v in enumerate(per_seed):
                    if v is None:
                        records.append(
                            ResultRecord(alg, ds, m, seed, None, Status.OUT_OF_MEMORY)
                        )
                    else:
                        records.append(ResultRecord(alg, ds, m, seed, float(v)))
    return ResultTable.build(records, registry)


class TestBuildRankMatrices:
    def test_dominant_algorithm_all_ones(self):
        table = _table(
            {
                "best": {"d1": {"m": [0.9, 0.8]}, "d2": {"m": [0.7, 0.9]}},
                "mid": {"d1": {"m": [0.5, 0.4]}, "d2": {"m": [0.3, 0.2]}},
                "worst": {"d1": {"m": [0.1, 0.2]}, "d2": {"m": [0.1, 0.1]}},
            }
        )
        for m in build_rank_matrices(table):
            assert np.all(m.ranks[:, 0] == 1.0)  # "best" sorts first

    def test_oom_records_tie_every_seed(self):
        table = resolve_failures(
            _table(
                {
                    "a": {"d": {"m": [0.9, 0.8]}},
                    "b": {"d": {"m": [None, None]}},
                    "c": {"d": {"m": [None, None]}},
                }
            )
        )
        (matrix,) = build_rank_matrices(table)
        assert matrix.tie_groups == ((2,), (2,))
        # Hand-ranked toy: failures share the bottom mid-rank.
        assert matrix.ranks.tolist() == [[1.0, 2.5, 2.5], [1.0, 2.5, 2.5]]

    def test_paper_shaped_table(self):
        registry = {f"m{i}": MetricSpec(f"m{i}", Direction.HIGHER_BETTER) for i in range(4)}
        rng = np.random.default_rng(1)
        records = [
            ResultRecord(f"alg{a:02d}", f"d{d:02d}", f"m{m}", s, float(rng.random()))
            for a in range(10)
            for d in range(11)
            for m in range(4)
            for s in range(10)
        ]
        matrices = build_rank_matrices(ResultTable.build(records, registry))
        assert len(matrices) == 44
        assert all(m.ranks.shape == (10, 10) for m in matrices)
        assert [m.test for m in matrices] == sorted(m.test for m in matrices)


class TestCountTies:
    def test_no_ties(self):
        table = _table({"a": {"d": {"m": [0.1, 0.2]}}, "b": {"d": {"m": [0.3, 0.4]}}})
        assert count_ties(build_rank_matrices(table)) == 0

    def test_one_pair_per_seed(self):
        table = _table(
            {
                "a": {"d": {"m": [0.5, 0.5, 0.5]}},
                "b": {"d": {"m": [0.5, 0.5, 0.5]}},
                "c": {"d": {"m": [0.9, 0.9, 0.9]}},
            }
        )
        assert count_ties(build_rank_matrices(table)) == 3

    def test_hand_enumerated_groups(self):
        # seed 0: groups {a,b} and {c,d}; seed 1: group {a,b,c} -> 3 groups.
        table = _table(
            {
                "a": {"d": {"m": [0.5, 0.2]}},
                "b": {"d": {"m": [0.5, 0.2]}},
                "c": {"d": {"m": [0.7, 0.2]}},
                "d": {"d": {"m": [0.7, 0.9]}},
            }
        )
        matrices = build_rank_matrices(table)
        # Independent brute-force count of equal-value groups per seed.
        expected = 0
        for seed in (0, 1):
            vals = [
                table.record(alg, "d", "m", seed).value for alg in table.algorithms
            ]
            expected += sum(1 for v in set(vals) if vals.count(v) >= 2)
        assert expected == 3
        assert count_ties(matrices) == expected


def test_debug_csv_export():
    table = _table({"a": {"d": {"m": [0.1]}}, "b": {"d": {"m": [0.2]}}})
    text = matrices_to_csv(build_rank_matrices(table))
    lines = text.splitlines()
    assert lines[0] == "dataset,metric,seed,algorithm,rank"
    assert "d,m,0,b,1.0" in lines
