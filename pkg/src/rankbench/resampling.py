"""Convergence study: coefficient spread under test subsampling.

For each subsample size k, k distinct tests are drawn uniformly without
replacement, each requested coefficient is recomputed on the subsample,
and the draw is repeated (ten times by default). Small-k spread shows
how quickly a coefficient converges to its full-suite value as the
test suite grows.
"""

from __future__ import annotations

import csv
import hashlib
import io
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .concordance import kendall_w_test, kendall_w_tied_test
from .ranking import RankMatrix
from .wasserstein import ww_test

RNG_ALGORITHM = "numpy-pcg64-seedsequence"

COEFFICIENTS = ("w", "w_tied", "w_wasserstein")

_PER_TEST_TERM: dict[str, Callable[[RankMatrix], float]] = {
    "w": lambda m: kendall_w_test(m).per_test_w,
    "w_tied": lambda m: kendall_w_tied_test(m).per_test_w,
    "w_wasserstein": lambda m: ww_test(m).per_test_w,
}


@dataclass(frozen=True)
class ConvergenceCell:
    size: int
    coefficient: str
    values: tuple[float, ...]
    mean: float
    std: float  # sample std (ddof=1), 0 for a single repeat


@dataclass(frozen=True)
class ConvergenceReport:
    sizes: tuple[int, ...]
    repeats: int
    coefficients: tuple[str, ...]
    rng_seed: int
    rng_algorithm: str
    provenance: str  # sha256 of the canonical rank-matrix serialization
    full_suite_value: dict[str, float]
    cells: tuple[ConvergenceCell, ...]

    def cell(self, size: int, coefficient: str) -> ConvergenceCell:
        for c in self.cells:
            if c.size == size and c.coefficient == coefficient:
                return c
        raise KeyError((size, coefficient))

    def fragment(self) -> dict:
        return {
            "sizes": list(self.sizes),
            "repeats": self.repeats,
            "coefficients": list(self.coefficients),
            "rng_seed": self.rng_seed,
            "rng_algorithm": self.rng_algorithm,
            "provenance": self.provenance,
            "full_suite_value": dict(self.full_suite_value),
            "cells": [
                {
                    "size": c.size,
                    "coefficient": c.coefficient,
                    "values": list(c.values),
                    "mean": c.mean,
                    "std": c.std,
                }
                for c in self.cells
            ],
        }


def _digest(matrices: Sequence[RankMatrix]) -> str:
    h = hashlib.sha256()
    for m in sorted(matrices, key=lambda m: m.test):
        h.update(repr((m.test, m.policy.value, m.algorithms, m.seeds)).encode())
        h.update(np.ascontiguousarray(m.ranks).tobytes())
    return h.hexdigest()


def subsample_convergence(
    matrices: Sequence[RankMatrix],
    coefficients: Sequence[str] = COEFFICIENTS,
    sizes: Sequence[int] | None = None,
    repeats: int = 10,
    rng_seed: int = 0,
) -> ConvergenceReport:
    """Recompute coefficients on random test subsamples of each size.

    Deterministic for a given rng_seed: each (size, repeat) pair gets
    its own RNG stream derived from the seed, so the draws do not depend
    on evaluation order. At k = len(matrices) every repeat reproduces
    the full-suite value exactly.
    """
    if not matrices:
        raise ValueError("empty suite")
    if not coefficients:
        raise ValueError("empty coefficient set")
    for c in coefficients:
        if c not in _PER_TEST_TERM:
            raise ValueError(f"unknown coefficient {c!r}")
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    n_tests = len(matrices)
    if sizes is None:
        sizes = range(1, n_tests + 1)
    sizes = [int(k) for k in sizes]
    for k in sizes:
        if not 1 <= k <= n_tests:
            raise ValueError(f"subsample size {k} out of range [1, {n_tests}]")

    ordered = sorted(matrices, key=lambda m: m.test)
    # Per-test concordance terms are subsample-independent, so a
    # subsample's coefficient is just 1 - mean over the drawn terms.
    terms = {
        c: np.array([_PER_TEST_TERM[c](m) for m in ordered]) for c in coefficients
    }
    full = {c: 1.0 - float(np.mean(terms[c])) for c in coefficients}

    cells = []
    for k in sizes:
        draws = []
        for rep in range(repeats):
            rng = np.random.default_rng(
                np.random.SeedSequence(entropy=rng_seed, spawn_key=(k, rep))
            )
            draws.append(np.sort(rng.choice(n_tests, size=k, replace=False)))
        for c in coefficients:
            values = tuple(1.0 - float(np.mean(terms[c][idx])) for idx in draws)
            if repeats == 1 or len(set(values)) == 1:
                std = 0.0
            else:
                std = float(np.std(values, ddof=1))
            cells.append(
                ConvergenceCell(
                    size=k,
                    coefficient=c,
                    values=values,
                    mean=float(np.mean(values)),
                    std=std,
                )
            )

    return ConvergenceReport(
        sizes=tuple(sizes),
        repeats=repeats,
        coefficients=tuple(coefficients),
        rng_seed=rng_seed,
        rng_algorithm=RNG_ALGORITHM,
        provenance=_digest(matrices),
        full_suite_value=full,
        cells=tuple(cells),
    )


def plot_data_csv(report: ConvergenceReport) -> str:
    """Long-format CSV: size,repeat,coefficient,value."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["size", "repeat", "coefficient", "value"])
    for c in report.cells:
        for rep, value in enumerate(c.values):
            writer.writerow([c.size, rep, c.coefficient, repr(value)])
    return buf.getvalue()


def summary_csv(report: ConvergenceReport) -> str:
    """Summary CSV: size,coefficient,mean,std."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["size", "coefficient", "mean", "std"])
    for c in report.cells:
        writer.writerow([c.size, c.coefficient, repr(c.mean), repr(c.std)])
    return buf.getvalue()
