"""rankbench: quantify how seed randomness affects benchmark rankings."""

__version__ = "0.1.0"

from .comparison import FcrResult, FrameworkResult, Granularity, fcr
from .concordance import (
    CoefficientResult,
    ConcordanceStats,
    kendall_w_test,
    kendall_w_tied_test,
    w_randomness,
)
from .ranking import (
    RankMatrix,
    TiePolicy,
    build_rank_matrices,
    count_ties,
    rank_row,
)
from .resampling import ConvergenceReport, subsample_convergence
from .results import (
    Direction,
    MetricSpec,
    ResultRecord,
    ResultTable,
    Status,
    TestId,
    ValidationError,
    ingest,
    parse_registry,
    resolve_failures,
)
from .synthgen import SynthConfig, generate
from .wasserstein import (
    RankDistribution,
    WassersteinResult,
    w1_distance,
    ww_randomness,
    ww_test,
)

__all__ = [
    "CoefficientResult",
    "ConcordanceStats",
    "ConvergenceReport",
    "Direction",
    "FcrResult",
    "FrameworkResult",
    "Granularity",
    "MetricSpec",
    "RankDistribution",
    "RankMatrix",
    "ResultRecord",
    "ResultTable",
    "Status",
    "SynthConfig",
    "TestId",
    "TiePolicy",
    "ValidationError",
    "WassersteinResult",
    "build_rank_matrices",
    "count_ties",
    "fcr",
    "generate",
    "ingest",
    "kendall_w_test",
    "kendall_w_tied_test",
    "parse_registry",
    "rank_row",
    "resolve_failures",
    "subsample_convergence",
    "w1_distance",
    "w_randomness",
    "ww_randomness",
    "ww_test",
]
