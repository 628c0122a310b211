"""Toolkit for conversational transcripts: parse, unify, assess, mine, compare."""

from .compare import (
    ComparisonReport,
    DurationDistribution,
    TokenAssociation,
    compare_corpora,
    duration_distribution,
    scaled_f_score,
)
from .document import ParsedDocument, RawAnnotation, RawTier, SourceFormat
from .mining import (
    CandidateScore,
    MiningConfig,
    TurnFormat,
    classify_contexts,
    normalized_levenshtein,
    rank_candidates,
    recurrent_formats,
)
from .parsers import detect_format, parse_bytes, parse_cha, parse_eaf, parse_exb, parse_file, parse_textgrid
from .qc import (
    AssessmentReport,
    DyadicSample,
    TransitionRecord,
    annotation_density,
    build_report,
    compute_transitions,
    rank_frequency,
    report_to_json,
    sample_dyadic_stretches,
    verify_sources,
)
from .stats import HistogramSeries
from .table import CorpusTable, Turn, concat_tables, read_table, write_table
from .text import TagPolicy, UNK_TOKEN, normalize_utterance_text, tokenize
from .unify import TierMapConfig, transliterate_hook, unify

__version__ = "0.1.0"

__all__ = [
    "AssessmentReport",
    "CandidateScore",
    "ComparisonReport",
    "CorpusTable",
    "DurationDistribution",
    "DyadicSample",
    "HistogramSeries",
    "MiningConfig",
    "ParsedDocument",
    "RawAnnotation",
    "RawTier",
    "SourceFormat",
    "TagPolicy",
    "TierMapConfig",
    "TokenAssociation",
    "TransitionRecord",
    "Turn",
    "TurnFormat",
    "UNK_TOKEN",
    "annotation_density",
    "build_report",
    "classify_contexts",
    "compare_corpora",
    "compute_transitions",
    "concat_tables",
    "detect_format",
    "duration_distribution",
    "normalize_utterance_text",
    "normalized_levenshtein",
    "parse_bytes",
    "parse_cha",
    "parse_eaf",
    "parse_exb",
    "parse_file",
    "parse_textgrid",
    "rank_candidates",
    "rank_frequency",
    "read_table",
    "recurrent_formats",
    "report_to_json",
    "sample_dyadic_stretches",
    "scaled_f_score",
    "tokenize",
    "transliterate_hook",
    "unify",
    "verify_sources",
    "write_table",
]
