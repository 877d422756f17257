"""Canonical data model for benchmark results.

A result table is a complete grid of scores indexed by
(algorithm, dataset, metric, seed). Each cell carries a status; failed
runs (out-of-memory, timeout, error) may have no score until
:func:`resolve_failures` maps them to the worst possible value for their
metric, so that failures participate in rankings as bottom ties.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, NamedTuple


class ValidationError(Exception):
    """Raised when input data violates the result-table contract."""


class Direction(Enum):
    HIGHER_BETTER = "higher"
    LOWER_BETTER = "lower"


class Status(Enum):
    OK = "ok"
    OUT_OF_MEMORY = "oom"
    TIMEOUT = "timeout"
    ERROR = "error"


@dataclass(frozen=True)
class MetricSpec:
    """Direction (and optional closed bounds) for one metric.

    Metrics such as conductance are lower-is-better; F1, NMI and
    modularity are higher-is-better. Scores are consumed as opaque
    values, never computed here.
    """

    name: str
    direction: Direction
    bounds: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        if self.bounds is not None:
            lo, hi = self.bounds
            if not lo < hi:
                raise ValidationError(
                    f"metric {self.name!r}: bounds must satisfy lo < hi, got {self.bounds}"
                )

    def worst_value(self) -> float | None:
        """Worst endpoint of the bounds, or None if unbounded."""
        if self.bounds is None:
            return None
        lo, hi = self.bounds
        return lo if self.direction is Direction.HIGHER_BETTER else hi


class TestId(NamedTuple):
    """One test: a (dataset, metric) pair.

    Tuple order gives the canonical lexicographic ordering (dataset
    first, then metric) used by every aggregation.
    """

    dataset: str
    metric: str


@dataclass(frozen=True)
class ResultRecord:
    """One observed score: an algorithm on a dataset/metric under one seed."""

    algorithm: str
    dataset: str
    metric: str
    seed: int
    value: float | None
    status: Status = Status.OK

    @property
    def key(self) -> tuple[str, str, str, int]:
        return (self.algorithm, self.dataset, self.metric, self.seed)

    @property
    def test(self) -> TestId:
        return TestId(self.dataset, self.metric)


@dataclass(frozen=True)
class ResultTable:
    """Validated complete grid of benchmark results.

    Immutable after construction; derived lists are sorted and
    independent of input row order.
    """

    records: tuple[ResultRecord, ...]
    registry: dict[str, MetricSpec]
    suite: tuple[TestId, ...] = field(init=False)
    algorithms: tuple[str, ...] = field(init=False)
    seeds: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        suite = tuple(sorted({r.test for r in self.records}))
        algorithms = tuple(sorted({r.algorithm for r in self.records}))
        seeds = tuple(sorted({r.seed for r in self.records}))
        object.__setattr__(self, "suite", suite)
        object.__setattr__(self, "algorithms", algorithms)
        object.__setattr__(self, "seeds", seeds)

    @property
    def n_algorithms(self) -> int:
        return len(self.algorithms)

    @property
    def n_seeds(self) -> int:
        return len(self.seeds)

    def record(self, algorithm: str, dataset: str, metric: str, seed: int) -> ResultRecord:
        return self._index[(algorithm, dataset, metric, seed)]

    @property
    def _index(self) -> dict[tuple[str, str, str, int], ResultRecord]:
        cached = self.__dict__.get("_index_cache")
        if cached is None:
            cached = {r.key: r for r in self.records}
            self.__dict__["_index_cache"] = cached
        return cached

    @classmethod
    def build(
        cls,
        records: Iterable[ResultRecord],
        registry: Iterable[MetricSpec] | dict[str, MetricSpec],
        drop_incomplete: bool = False,
    ) -> "ResultTable":
        """Validate records into a complete grid.

        With ``drop_incomplete`` every test with any missing cell is
        dropped (never imputed); otherwise an incomplete grid is an
        error listing every missing cell.
        """
        if not isinstance(registry, dict):
            registry = {m.name: m for m in registry}
        records = list(records)
        if not records:
            raise ValidationError("no records")

        seen: dict[tuple[str, str, str, int], ResultRecord] = {}
        for rec in records:
            if rec.status is Status.OK and rec.value is None:
                raise ValidationError(f"record {rec.key}: status ok but no value")
            spec = registry.get(rec.metric)
            if spec is None:
                raise ValidationError(f"unknown metric {rec.metric!r} (record {rec.key})")
            if rec.value is not None and spec.bounds is not None:
                lo, hi = spec.bounds
                if not lo <= rec.value <= hi:
                    raise ValidationError(
                        f"record {rec.key}: value {rec.value} outside bounds [{lo}, {hi}]"
                    )
            if rec.key in seen:
                raise ValidationError(f"duplicate record for {rec.key}")
            seen[rec.key] = rec

        algorithms = sorted({r.algorithm for r in records})
        tests = sorted({r.test for r in records})
        seeds = sorted({r.seed for r in records})
        if len(algorithms) < 2:
            raise ValidationError("need at least 2 algorithms")

        missing = [
            (alg, t.dataset, t.metric, s)
            for t in tests
            for alg in algorithms
            for s in seeds
            if (alg, t.dataset, t.metric, s) not in seen
        ]
        if missing:
            if drop_incomplete:
                bad_tests = {TestId(d, m) for _, d, m, _ in missing}
                seen = {k: r for k, r in seen.items() if r.test not in bad_tests}
                if not seen:
                    raise ValidationError("every test has missing cells; nothing left")
            else:
                cells = ", ".join(
                    f"(algorithm={a}, dataset={d}, metric={m}, seed={s})"
                    for a, d, m, s in missing
                )
                raise ValidationError(f"incomplete grid, missing cells: {cells}")

        return cls(records=tuple(seen.values()), registry=dict(registry))


# ---------------------------------------------------------------------------
# Ingestion
# ---------------------------------------------------------------------------

CSV_COLUMNS = ("algorithm", "dataset", "metric", "seed", "value", "status")


def parse_registry(text: str) -> dict[str, MetricSpec]:
    """Parse the line-oriented metric registry format.

    Lines are ``metric.<name>.direction = higher|lower`` and optional
    ``metric.<name>.bounds = lo,hi``. Blank lines and ``#`` comments are
    ignored.
    """
    directions: dict[str, Direction] = {}
    bounds: dict[str, tuple[float, float]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValidationError(f"registry line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        parts = key.split(".")
        if len(parts) != 3 or parts[0] != "metric":
            raise ValidationError(f"registry line {lineno}: bad key {key!r}")
        _, name, prop = parts
        if prop == "direction":
            try:
                directions[name] = Direction(value)
            except ValueError:
                raise ValidationError(
                    f"registry line {lineno}: direction must be higher|lower, got {value!r}"
                ) from None
        elif prop == "bounds":
            try:
                lo_s, hi_s = value.split(",")
                bounds[name] = (float(lo_s), float(hi_s))
            except ValueError:
                raise ValidationError(
                    f"registry line {lineno}: bounds must be 'lo,hi', got {value!r}"
                ) from None
        else:
            raise ValidationError(f"registry line {lineno}: unknown property {prop!r}")
    for name in bounds:
        if name not in directions:
            raise ValidationError(f"metric {name!r} has bounds but no direction")
    return {
        name: MetricSpec(name=name, direction=d, bounds=bounds.get(name))
        for name, d in directions.items()
    }


def _parse_row(row: dict[str, str], rowno: int) -> ResultRecord:
    try:
        status = Status(row["status"].strip().lower())
    except ValueError:
        raise ValidationError(f"row {rowno}: bad status {row['status']!r}") from None
    raw_value = (row["value"] or "").strip()
    if raw_value == "":
        if status is Status.OK:
            raise ValidationError(f"row {rowno}: status ok requires a value")
        value = None
    else:
        try:
            value = float(raw_value)
        except ValueError:
            raise ValidationError(f"row {rowno}: bad value {raw_value!r}") from None
    try:
        seed = int(row["seed"])
    except ValueError:
        raise ValidationError(f"row {rowno}: bad seed {row['seed']!r}") from None
    algorithm = row["algorithm"].strip()
    dataset = row["dataset"].strip()
    metric = row["metric"].strip()
    if not (algorithm and dataset and metric):
        raise ValidationError(f"row {rowno}: empty identifier")
    return ResultRecord(algorithm, dataset, metric, seed, value, status)


def ingest(
    source: str | bytes | io.IOBase,
    fmt: str,
    registry: dict[str, MetricSpec],
    drop_incomplete: bool = False,
) -> ResultTable:
    """Read a result table from CSV or JSON content.

    CSV requires the exact header ``algorithm,dataset,metric,seed,value,status``.
    JSON is an array of objects with the same field names.
    """
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data

    records: list[ResultRecord] = []
    if fmt == "csv":
        reader = csv.DictReader(io.StringIO(text))
        if reader.fieldnames is None or tuple(reader.fieldnames) != CSV_COLUMNS:
            raise ValidationError(
                f"CSV header must be exactly {','.join(CSV_COLUMNS)}, got {reader.fieldnames}"
            )
        for rowno, row in enumerate(reader, start=2):
            if None in row or any(v is None for v in row.values()):
                raise ValidationError(f"row {rowno}: wrong number of fields")
            records.append(_parse_row(row, rowno))
    elif fmt == "json":
        try:
            items = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"bad JSON: {exc}") from None
        if not isinstance(items, list):
            raise ValidationError("JSON input must be an array of objects")
        for i, item in enumerate(items):
            if not isinstance(item, dict) or set(item) - set(CSV_COLUMNS):
                raise ValidationError(f"JSON item {i}: unexpected shape")
            row = {c: "" if item.get(c) is None else str(item.get(c)) for c in CSV_COLUMNS}
            records.append(_parse_row(row, i))
    else:
        raise ValueError(f"unknown format {fmt!r}")

    return ResultTable.build(records, registry, drop_incomplete=drop_incomplete)


def to_csv(table: ResultTable) -> str:
    """Serialize a table in the canonical CSV schema (round-trip stable)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in sorted(table.records, key=lambda r: r.key):
        writer.writerow(
            [
                rec.algorithm,
                rec.dataset,
                rec.metric,
                rec.seed,
                "" if rec.value is None else repr(rec.value),
                rec.status.value,
            ]
        )
    return buf.getvalue()


def registry_to_text(registry: dict[str, MetricSpec]) -> str:
    lines = []
    for name in sorted(registry):
        spec = registry[name]
        lines.append(f"metric.{name}.direction = {spec.direction.value}")
        if spec.bounds is not None:
            lines.append(f"metric.{name}.bounds = {spec.bounds[0]},{spec.bounds[1]}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Failure resolution
# ---------------------------------------------------------------------------


def resolve_failures(table: ResultTable) -> ResultTable:
    """Give every failed record the worst possible value for its metric.

    Bounded metrics use the worst endpoint; unbounded metrics use a
    sentinel strictly worse than every Ok value on the same test
    (max observed + 1 for lower-better, min observed - 1 for
    higher-better), so all failures on one test tie at the bottom.
    Idempotent, and never changes Ok values.
    """
    sentinels: dict[TestId, float] = {}
    for test in table.suite:
        spec = table.registry[test.metric]
        worst = spec.worst_value()
        if worst is not None:
            sentinels[test] = worst
            continue
        ok_values = [
            r.value
            for r in table.records
            if r.test == test and r.status is Status.OK and r.value is not None
        ]
        if spec.direction is Direction.LOWER_BETTER:
            sentinels[test] = (max(ok_values) + 1.0) if ok_values else 1.0
        else:
            sentinels[test] = (min(ok_values) - 1.0) if ok_values else -1.0

    resolved = [
        rec if rec.status is Status.OK else replace(rec, value=sentinels[rec.test])
        for rec in table.records
    ]
    return ResultTable(records=tuple(resolved), registry=table.registry)


def scores_for_test(table: ResultTable, test: TestId) -> "dict[int, list[float]]":
    """Per-seed score vectors for one test, in algorithm order.

    Requires a failure-resolved table (every record has a value).
    """
    idx = table._index
    out: dict[int, list[float]] = {}
    for seed in table.seeds:
        row = []
        for alg in table.algorithms:
            rec = idx[(alg, test.dataset, test.metric, seed)]
            if rec.value is None:
                raise ValidationError(
                    f"record {rec.key} has no value; run resolve_failures first"
                )
            row.append(rec.value)
        out[seed] = row
    return out


# Keep pytest from trying to collect the TestId tuple as a test class.
TestId.__test__ = False  # type: ignore[attr-defined]
