"""cidiff: build-log differencing with update and move detection."""

from .baselines import FlaggedLines, bigram_diff, diff_output_lines, keyword_search
from .editscript import (
    Action,
    EditScript,
    added_count,
    build_script,
    cidiff_script,
    from_dict,
    lcs_diff,
    script_size,
    to_dict,
    to_json,
)
from .lcs import DiffTimeout, LcsPairing, lcs_lines
from .logmodel import Log, LogLine, load_log, log_from_lines, log_from_text, strip_timestamp, tokenize
from .matching import Seed, additional_seeds, extend_seeds, initial_seeds, match, remove_overlaps
from .similarity import SimilarityParams, logsim, token_similarity, trigram_similarity
from .synthetic import MutationRates, RegressionCase, generate_synthetic_case

__version__ = "0.1.0"

__all__ = [
    "Action",
    "DiffTimeout",
    "EditScript",
    "FlaggedLines",
    "LcsPairing",
    "Log",
    "LogLine",
    "MutationRates",
    "RegressionCase",
    "Seed",
    "SimilarityParams",
    "added_count",
    "additional_seeds",
    "bigram_diff",
    "build_script",
    "cidiff_script",
    "diff_output_lines",
    "extend_seeds",
    "from_dict",
    "generate_synthetic_case",
    "initial_seeds",
    "keyword_search",
    "lcs_diff",
    "lcs_lines",
    "load_log",
    "log_from_lines",
    "log_from_text",
    "logsim",
    "match",
    "remove_overlaps",
    "script_size",
    "strip_timestamp",
    "to_dict",
    "to_json",
    "token_similarity",
    "tokenize",
    "trigram_similarity",
]
