"""Sliding-window n-gram enumeration and frequency tables.

A phrase is represented by its canonical text form: lowercase words joined
by single spaces. Tables never mix scopes; windows never cross a page
boundary (per-page counting must compose exactly into the document table).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .textprep import TokenizedPage

# Gram-length ceiling. Lengths 2 and 3 are the useful defaults; unigrams are
# too generic and 4/5-grams rarely repeat, but all of 1-5 stay selectable.
MAX_GRAM = 5
DEFAULT_N_SET = frozenset({2, 3})

Phrase = str  # canonical form: words joined by single spaces


def phrase_words(phrase: Phrase) -> list[str]:
    """Split a canonical phrase back into its words."""
    return phrase.split(" ")


@dataclass(frozen=True)
class ExtractionConfig:
    """Knobs for counting, filtering, ranking, and whitelist training.

    `pa_fraction` is kept as an exact rational: the per-document page
    threshold is Pa = ceil(pa_fraction * page_count), and float rounding
    must not move it. Floats and strings ("1/3") are coerced on init.
    """

    n_set: frozenset[int] = DEFAULT_N_SET
    top_k: int = 5
    min_count: int = 2
    page_high_freq_min: int = 2
    pa_fraction: Fraction = Fraction(1, 2)
    doc_min: int = 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "n_set", frozenset(self.n_set))
        object.__setattr__(self, "pa_fraction", Fraction(self.pa_fraction))
        if not self.n_set <= set(range(1, MAX_GRAM + 1)):
            raise ValueError(f"n_set must be within 1..{MAX_GRAM}, got {sorted(self.n_set)}")
        if self.top_k < 1:
            raise ValueError("top_k must be >= 1")
        if self.min_count < 1:
            raise ValueError("min_count must be >= 1")
        if self.page_high_freq_min < 1:
            raise ValueError("page_high_freq_min must be >= 1")
        if not 0 < self.pa_fraction <= 1:
            raise ValueError("pa_fraction must be in (0, 1]")
        if self.doc_min < 1:
            raise ValueError("doc_min must be >= 1")

    def pa_for(self, page_count: int) -> int:
        """Page threshold for one document: ceil(pa_fraction * page_count)."""
        return math.ceil(self.pa_fraction * page_count)

    def to_json_dict(self) -> dict:
        return {
            "n_set": sorted(self.n_set),
            "top_k": self.top_k,
            "min_count": self.min_count,
            "page_high_freq_min": self.page_high_freq_min,
            "pa_fraction": str(self.pa_fraction),
            "doc_min": self.doc_min,
        }


@dataclass
class NgramTable:
    """Phrase -> occurrence count for a fixed set of gram lengths."""

    counts: dict[Phrase, int] = field(default_factory=dict)
    n_set: frozenset[int] = DEFAULT_N_SET
    scope: str = "document"

    def __len__(self) -> int:
        return len(self.counts)

    def __contains__(self, phrase: Phrase) -> bool:
        return phrase in self.counts


def enumerate_ngrams(tokens: Sequence[str], n: int) -> list[Phrase]:
    """All consecutive n-token windows, in order, duplicates included."""
    if not 1 <= n <= MAX_GRAM:
        raise ValueError(f"gram length must be in 1..{MAX_GRAM}, got {n}")
    return [" ".join(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]


def _count(pages: Iterable[TokenizedPage], cfg: ExtractionConfig, scope: str) -> NgramTable:
    counter: Counter[Phrase] = Counter()
    for page in pages:
        for n in sorted(cfg.n_set):
            counter.update(enumerate_ngrams(page.tokens, n))
    return NgramTable(dict(counter), cfg.n_set, scope)


def count_ngrams(pages: Sequence[TokenizedPage], cfg: ExtractionConfig) -> NgramTable:
    """Document-scope table: every window on every page, never spanning pages."""
    return _count(pages, cfg, "document")


def count_ngrams_per_page(page: TokenizedPage, cfg: ExtractionConfig) -> NgramTable:
    """Page-scope table for a single page."""
    return _count([page], cfg, "page")
