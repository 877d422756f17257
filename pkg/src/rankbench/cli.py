"""Command-line frontend.

Subcommands: validate, rank, coeff, fcr, converge, synth. Reports embed
every setting and input digest needed to rerun the analysis; two runs
with identical inputs and flags produce byte-identical JSON. Exit codes:
0 success, 1 runtime/I-O error, 2 validation error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .comparison import FrameworkResult, Granularity, fcr
from .concordance import w_randomness
from .plotting import render_convergence_svg
from .ranking import TiePolicy, build_rank_matrices, count_ties, matrices_to_csv
from .resampling import COEFFICIENTS, plot_data_csv, subsample_convergence, summary_csv
from .results import (
    ValidationError,
    ingest,
    parse_registry,
    registry_to_text,
    resolve_failures,
    to_csv,
)
from .synthgen import SynthConfig, generate
from .wasserstein import ww_randomness

log = logging.getLogger("rankbench")

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_VALIDATION = 2


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _load_registry(path: str) -> dict:
    return parse_registry(Path(path).read_text(encoding="utf-8"))


def _load_table(path: str, registry: dict, drop_incomplete: bool = False):
    p = Path(path)
    fmt = "json" if p.suffix.lower() == ".json" else "csv"
    return ingest(p.read_text(encoding="utf-8"), fmt, registry, drop_incomplete)


def _write_output(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _tie_policy(name: str) -> TiePolicy:
    return TiePolicy.MEAN_OF_TIED if name == "mean" else TiePolicy.LOWEST_SHARED_RANK


def _base_report(args) -> dict:
    registry = _load_registry(args.registry)
    report = {
        "tool": "rankbench",
        "version": __version__,
        "registry": {
            name: {
                "direction": spec.direction.value,
                "bounds": list(spec.bounds) if spec.bounds else None,
            }
            for name, spec in sorted(registry.items())
        },
        "inputs": {},
        "warnings": [],
    }
    return report


def _emit_report(report: dict, args) -> None:
    if getattr(args, "format", "json") == "csv":
        _write_output(_report_csv(report), args.output)
    else:
        _write_output(json.dumps(report, indent=2, sort_keys=True) + "\n", args.output)


def _report_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["record", "coefficient", "dataset", "metric", "value"])
    for frag in report.get("coefficients", []):
        writer.writerow(["total", frag["coefficient"], "", "", repr(frag["value"])])
        for item in frag["per_test"]:
            writer.writerow(
                ["per_test", frag["coefficient"], item["dataset"], item["metric"], repr(item["w"])]
            )
    if "n_ties" in report:
        writer.writerow(["n_ties", "", "", "", report["n_ties"]])
    if "fcr" in report:
        for label, value in sorted(report["fcr"]["fcr"].items()):
            writer.writerow(["fcr", label, "", "", repr(value)])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_validate(args) -> int:
    registry = _load_registry(args.registry)
    _load_table(args.input, registry)
    print(f"{args.input}: valid complete grid")
    return EXIT_OK


def cmd_rank(args) -> int:
    registry = _load_registry(args.registry)
    table = resolve_failures(_load_table(args.input, registry, args.drop_incomplete))
    matrices = build_rank_matrices(table, _tie_policy(args.tie_policy), args.tie_epsilon)
    _write_output(matrices_to_csv(matrices), args.output)
    return EXIT_OK


def cmd_coeff(args) -> int:
    registry = _load_registry(args.registry)
    table = resolve_failures(_load_table(args.input, registry, args.drop_incomplete))
    policy = _tie_policy(args.tie_policy)
    matrices = build_rank_matrices(table, policy, args.tie_epsilon)

    report = _base_report(args)
    report["inputs"][args.input] = _sha256(Path(args.input))
    report["settings"] = {
        "tie_policy": args.tie_policy,
        "tie_epsilon": args.tie_epsilon,
        "coefficients": args.coefficients,
    }
    report["n_ties"] = count_ties(matrices)
    report["coefficients"] = []
    for name in args.coefficients:
        if name == "w":
            result = w_randomness(matrices, tied=False)
            frag = result.fragment(n_ties=report["n_ties"])
            report["warnings"].extend(result.warnings)
        elif name == "w_tied":
            if policy is not TiePolicy.MEAN_OF_TIED:
                raise ValidationError("w_tied requires --tie-policy mean")
            result = w_randomness(matrices, tied=True)
            frag = result.fragment(n_ties=report["n_ties"])
            report["warnings"].extend(result.warnings)
        elif name == "w_wasserstein":
            result = ww_randomness(matrices)
            frag = result.fragment()
            report["warnings"].extend(result.warnings)
        else:
            raise ValidationError(f"unknown coefficient {name!r}")
        report["coefficients"].append(frag)
    _emit_report(report, args)
    return EXIT_OK


def cmd_fcr(args) -> int:
    registry = _load_registry(args.registry)
    frameworks = []
    report = _base_report(args)
    for spec in args.framework:
        if "=" not in spec:
            raise ValidationError(f"--framework expects label=path, got {spec!r}")
        label, _, path = spec.partition("=")
        frameworks.append(FrameworkResult(label, _load_table(path, registry)))
        report["inputs"][path] = _sha256(Path(path))
    result = fcr(frameworks, Granularity(args.granularity))
    report["settings"] = {"granularity": args.granularity}
    report["fcr"] = result.fragment()
    _emit_report(report, args)
    return EXIT_OK


def cmd_converge(args) -> int:
    registry = _load_registry(args.registry)
    table = resolve_failures(_load_table(args.input, registry, args.drop_incomplete))
    matrices = build_rank_matrices(table, _tie_policy(args.tie_policy), args.tie_epsilon)
    sizes = _parse_sizes(args.sizes, len(matrices)) if args.sizes else None
    conv = subsample_convergence(
        matrices,
        coefficients=args.coefficients,
        sizes=sizes,
        repeats=args.repeats,
        rng_seed=args.rng_seed,
    )

    report = _base_report(args)
    report["inputs"][args.input] = _sha256(Path(args.input))
    report["settings"] = {
        "tie_policy": args.tie_policy,
        "tie_epsilon": args.tie_epsilon,
        "repeats": args.repeats,
        "rng_seed": args.rng_seed,
    }
    report["convergence"] = conv.fragment()
    _emit_report(report, args)
    if args.plot_out:
        Path(args.plot_out).write_text(plot_data_csv(conv), encoding="utf-8")
    if args.summary_out:
        Path(args.summary_out).write_text(summary_csv(conv), encoding="utf-8")
    if args.svg_out:
        Path(args.svg_out).write_text(render_convergence_svg(conv), encoding="utf-8")
    return EXIT_OK


def cmd_synth(args) -> int:
    config = SynthConfig(
        n_algorithms=args.algorithms,
        n_datasets=args.datasets,
        n_metrics=args.metrics,
        n_seeds=args.seeds,
        quality_gap=args.quality_gap,
        noise_scale=args.noise_scale,
        tie_prob=args.tie_prob,
        fail_prob=args.fail_prob,
        rng_seed=args.rng_seed,
    )
    table = generate(config)
    _write_output(to_csv(table), args.output)
    if args.registry_out:
        Path(args.registry_out).write_text(registry_to_text(table.registry), encoding="utf-8")
    return EXIT_OK


def _parse_sizes(spec: str, n_tests: int) -> list[int]:
    sizes = []
    for part in spec.split(","):
        part = part.strip()
        if ":" in part:
            lo, _, hi = part.partition(":")
            sizes.extend(range(int(lo), int(hi) + 1))
        else:
            sizes.append(int(part))
    return sizes


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--registry", required=True, help="metric registry file")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--output", default=None, help="output path ('-' = stdout)")

    ranked = argparse.ArgumentParser(add_help=False)
    ranked.add_argument("--tie-policy", choices=["mean", "lowest"], default="mean")
    ranked.add_argument("--tie-epsilon", type=float, default=0.0)
    ranked.add_argument(
        "--drop-incomplete",
        action="store_true",
        help="drop tests with missing cells instead of failing",
    )

    parser = argparse.ArgumentParser(
        prog="rankbench",
        description="Quantify seed-to-seed randomness in benchmark rankings.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a result table")
    p.add_argument("input")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("rank", parents=[common, ranked], help="export rank matrices")
    p.add_argument("input")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("coeff", parents=[common, ranked], help="randomness coefficients")
    p.add_argument("input")
    p.add_argument(
        "--coefficients",
        type=lambda s: s.split(","),
        default=list(COEFFICIENTS),
        help="comma-separated subset of w,w_tied,w_wasserstein",
    )
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("fcr", parents=[common], help="framework comparison rank")
    p.add_argument(
        "--framework",
        action="append",
        required=True,
        metavar="LABEL=PATH",
        help="repeatable; at least two",
    )
    p.add_argument(
        "--granularity",
        choices=[g.value for g in Granularity],
        default=Granularity.PER_ALGORITHM_TEST.value,
    )
    p.set_defaults(func=cmd_fcr)

    p = sub.add_parser("converge", parents=[common, ranked], help="subsampling study")
    p.add_argument("input")
    p.add_argument("--sizes", default=None, help="e.g. '1:44' or '1,5,10'")
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument(
        "--coefficients", type=lambda s: s.split(","), default=list(COEFFICIENTS)
    )
    p.add_argument("--plot-out", default=None, help="plot-data CSV path")
    p.add_argument("--summary-out", default=None, help="summary CSV path")
    p.add_argument("--svg-out", default=None, help="SVG chart path")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("synth", help="generate a synthetic result table")
    p.add_argument("--algorithms", type=int, default=5)
    p.add_argument("--datasets", type=int, default=4)
    p.add_argument("--metrics", type=int, default=2)
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--quality-gap", type=float, default=1.0)
    p.add_argument("--noise-scale", type=float, default=0.0)
    p.add_argument("--tie-prob", type=float, default=0.0)
    p.add_argument("--fail-prob", type=float, default=0.0)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--output", default=None)
    p.add_argument("--registry-out", default=None, help="write matching registry file")
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        level=os.environ.get("RANKBENCH_LOG", "WARNING").upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
