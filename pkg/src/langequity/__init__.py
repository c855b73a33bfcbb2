"""Demand-weighted global utility of language technologies."""

from .demand import DemandVector, PairDemand, demand_vector, econ_pair_demand, merge_country_weights
from .errors import LangEquityError
from .ingest import TASKS, RawResult, TaskResultSet, TaskSpec, TradeShare, load_results, load_trade
from .metric import MetricReport, global_metric, metric_curve, restricted_metric
from .pivot import PivotEstimate, PivotGraph, all_pairs_estimates, best_pivot_path, build_graph
from .priority import PriorityRanking, greedy_population_curve, priority_ranking
from .pubscan import MentionLexicon, PaperRecord, citation_percentiles, scan_languages
from .registry import (
    LanguageRecord,
    Registry,
    aggregate_macrolanguage,
    gdp_for_language,
    load_registry,
)
from .utility import UtilityTable, build_utility_table, normalize_score, utility_or_default

__version__ = "0.1.0"

__all__ = [
    "DemandVector",
    "PairDemand",
    "demand_vector",
    "econ_pair_demand",
    "merge_country_weights",
    "LangEquityError",
    "TASKS",
    "RawResult",
    "TaskResultSet",
    "TaskSpec",
    "TradeShare",
    "load_results",
    "load_trade",
    "MetricReport",
    "global_metric",
    "metric_curve",
    "restricted_metric",
    "PivotEstimate",
    "PivotGraph",
    "all_pairs_estimates",
    "best_pivot_path",
    "build_graph",
    "PriorityRanking",
    "greedy_population_curve",
    "priority_ranking",
    "MentionLexicon",
    "PaperRecord",
    "citation_percentiles",
    "scan_languages",
    "LanguageRecord",
    "Registry",
    "aggregate_macrolanguage",
    "gdp_for_language",
    "load_registry",
    "UtilityTable",
    "build_utility_table",
    "normalize_score",
    "utility_or_default",
]
