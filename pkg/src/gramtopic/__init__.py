"""gramtopic: n-gram frequency topic extraction for text documents.

Pipeline: normalize -> tokenize -> count n-grams -> blacklist filter ->
whitelist filter -> rank top-K. Includes precision/relevance evaluation
against manual gold topics and a wall-clock timing harness.
"""

__version__ = "0.1.0"

from .bench import TimingRecord, time_extraction, timing_summary
from .evaluation import (
    CorpusReport,
    GoldTopics,
    PrecisionScore,
    RelevanceLevel,
    aggregate,
    load_gold_csv,
    precision,
    recall,
    relevance_level,
)
from .filtering import (
    Blacklist,
    Whitelist,
    WhitelistTrainingReport,
    apply_blacklist,
    apply_whitelist,
    default_blacklist,
    load_blacklist,
    load_whitelist,
    save_whitelist,
    train_whitelist,
)
from .ingest import Document, IngestConfig, convert_external, load_corpus, load_document
from .ngram import (
    ExtractionConfig,
    NgramTable,
    count_ngrams,
    count_ngrams_per_page,
    enumerate_ngrams,
)
from .pipeline import TopicResult, extract_topics, rank
from .textprep import TokenizedPage, normalize_text, tokenize

__all__ = [
    "__version__",
    "Blacklist",
    "CorpusReport",
    "Document",
    "ExtractionConfig",
    "GoldTopics",
    "IngestConfig",
    "NgramTable",
    "PrecisionScore",
    "RelevanceLevel",
    "TimingRecord",
    "TokenizedPage",
    "TopicResult",
    "Whitelist",
    "WhitelistTrainingReport",
    "aggregate",
    "apply_blacklist",
    "apply_whitelist",
    "convert_external",
    "count_ngrams",
    "count_ngrams_per_page",
    "default_blacklist",
    "enumerate_ngrams",
    "extract_topics",
    "load_blacklist",
    "load_corpus",
    "load_document",
    "load_gold_csv",
    "load_whitelist",
    "normalize_text",
    "precision",
    "rank",
    "recall",
    "relevance_level",
    "save_whitelist",
    "time_extraction",
    "timing_summary",
    "tokenize",
    "train_whitelist",
]
