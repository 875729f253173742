"""Precision scoring against gold topics and corpus-level aggregation.

All rates are exact rationals internally; floats appear only when a report
is rendered. Relevance bands sit at exact thirds:

    High   rate >= 2/3
    Medium 1/3 <= rate < 2/3
    Low    rate < 1/3

Matching is exact on canonical normalized phrase text by default. The
optional containment mode also accepts an automated topic that occurs as a
contiguous word window inside a gold phrase; it is exploratory and off by
default.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .ngram import Phrase, phrase_words
from .pipeline import TopicResult
from .textprep import normalize_text

_HIGH_MIN = Fraction(2, 3)
_MEDIUM_MIN = Fraction(1, 3)


class RelevanceLevel(Enum):
    HIGH = "High"
    MEDIUM = "Medium"
    LOW = "Low"


@dataclass
class PrecisionScore:
    """Per-document precision: TP / retrieved, banded into a relevance level."""

    document_id: str
    true_positives: int
    retrieved: int
    rate: Fraction
    level: RelevanceLevel
    empty: bool = False  # retrieved == 0; rate defined as 0

    def to_json_dict(self) -> dict:
        return {
            "document_id": self.document_id,
            "true_positives": self.true_positives,
            "retrieved": self.retrieved,
            "rate_exact": str(self.rate),
            "rate_percent": _percent(self.rate),
            "level": self.level.value,
            "empty": self.empty,
        }


@dataclass
class GoldTopics:
    """Manual reference topics per document, normalized for matching."""

    by_document: dict[str, set[Phrase]] = field(default_factory=dict)

    def __contains__(self, document_id: str) -> bool:
        return document_id in self.by_document

    def for_document(self, document_id: str) -> set[Phrase]:
        return self.by_document[document_id]


def load_gold_csv(path: Path | str) -> GoldTopics:
    """Read "document_id,phrase" lines; "#" comments and blanks are skipped."""
    gold = GoldTopics()
    with open(path, encoding="utf-8", newline="") as handle:
        for row in csv.reader(handle):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if len(row) < 2:
                continue
            phrase = normalize_text(",".join(row[1:]))
            if not phrase:
                continue
            gold.by_document.setdefault(row[0].strip(), set()).add(phrase)
    return gold


def relevance_level(rate: Fraction | float | int) -> RelevanceLevel:
    """Band a precision rate at exact thirds, no float hazards."""
    exact = Fraction(rate)
    if exact < 0 or exact > 1:
        raise ValueError(f"rate must be within [0, 1], got {rate}")
    if exact >= _HIGH_MIN:
        return RelevanceLevel.HIGH
    if exact >= _MEDIUM_MIN:
        return RelevanceLevel.MEDIUM
    return RelevanceLevel.LOW


def _normalized_gold(gold: Iterable[str]) -> set[Phrase]:
    return {normalize_text(phrase) for phrase in gold if normalize_text(phrase)}


def _contains_window(haystack: Phrase, needle: Phrase) -> bool:
    hay = phrase_words(haystack)
    nee = phrase_words(needle)
    return any(hay[i : i + len(nee)] == nee for i in range(len(hay) - len(nee) + 1))


def _topic_matches(topic: Phrase, gold: set[Phrase], containment: bool) -> bool:
    if topic in gold:
        return True
    if containment:
        return any(_contains_window(gold_phrase, topic) for gold_phrase in gold)
    return False


def precision(auto: TopicResult, gold: Iterable[str], *, containment: bool = False) -> PrecisionScore:
    """TP = automated topics found in the gold set; rate = TP / retrieved.

    A result with nothing retrieved scores 0 and is flagged empty.
    """
    gold_set = _normalized_gold(gold)
    retrieved = len(auto.topics)
    tp = sum(1 for phrase in auto.phrases() if _topic_matches(phrase, gold_set, containment))
    rate = Fraction(tp, retrieved) if retrieved else Fraction(0)
    return PrecisionScore(
        document_id=auto.document_id,
        true_positives=tp,
        retrieved=retrieved,
        rate=rate,
        level=relevance_level(rate),
        empty=retrieved == 0,
    )


def recall(auto: TopicResult, gold: Iterable[str], *, containment: bool = False) -> Fraction:
    """Fraction of gold phrases matched by the automated topics."""
    gold_set = _normalized_gold(gold)
    if not gold_set:
        raise ValueError("recall needs a non-empty gold set")
    matched = sum(
        1
        for gold_phrase in gold_set
        if any(_topic_matches(topic, {gold_phrase}, containment) for topic in auto.phrases())
    )
    return Fraction(matched, len(gold_set))


@dataclass
class CorpusReport:
    """Corpus aggregates: files per exact rate, files per level, mean rate."""

    file_count: int
    per_type: dict[Fraction, int]  # ordered by rate descending
    per_level: dict[RelevanceLevel, int]
    mean_rate: Fraction

    def level_percentages(self) -> dict[RelevanceLevel, Fraction]:
        return {
            level: Fraction(count * 100, self.file_count)
            for level, count in self.per_level.items()
        }

    def to_json_dict(self) -> dict:
        percentages = self.level_percentages()
        return {
            "file_count": self.file_count,
            "per_type": [
                {
                    "type": index,
                    "rate_exact": str(rate),
                    "rate_percent": _percent(rate),
                    "files": count,
                    "level": relevance_level(rate).value,
                }
                for index, (rate, count) in enumerate(self.per_type.items(), start=1)
            ],
            "per_level": [
                {
                    "level": level.value,
                    "files": self.per_level[level],
                    "percent": float(round(percentages[level], 1)),
                }
                for level in RelevanceLevel
                if level in self.per_level
            ],
            "mean_rate_exact": str(self.mean_rate),
            "mean_rate_percent": _percent(self.mean_rate),
        }

    def to_text_table(self) -> str:
        lines = [f"{'PT':<4}{'PR':>8}  {'NoF':>5}  PL"]
        for index, (rate, count) in enumerate(self.per_type.items(), start=1):
            level = relevance_level(rate).value
            lines.append(f"{index:<4}{_percent(rate):>7}%  {count:>5}  {level}")
        percentages = self.level_percentages()
        lines.append("")
        for level in RelevanceLevel:
            if level in self.per_level:
                lines.append(
                    f"{level.value:<8} {self.per_level[level]:>4} files"
                    f"  ({float(round(percentages[level], 1))}%)"
                )
        lines.append(f"mean precision: {_percent(self.mean_rate)}%")
        return "\n".join(lines)


def aggregate(scores: Sequence[PrecisionScore]) -> CorpusReport:
    """Group scores by exact rate and by level; compute the exact mean rate."""
    if not scores:
        raise ValueError("aggregate needs at least one score")
    by_rate: dict[Fraction, int] = {}
    by_level: dict[RelevanceLevel, int] = {}
    for score in scores:
        by_rate[score.rate] = by_rate.get(score.rate, 0) + 1
        by_level[score.level] = by_level.get(score.level, 0) + 1
    per_type = dict(sorted(by_rate.items(), key=lambda item: item[0], reverse=True))
    per_level = {level: by_level[level] for level in RelevanceLevel if level in by_level}
    mean_rate = sum((score.rate for score in scores), Fraction(0)) / len(scores)
    return CorpusReport(
        file_count=len(scores),
        per_type=per_type,
        per_level=per_level,
        mean_rate=mean_rate,
    )


def _percent(rate: Fraction) -> float:
    return float(round(rate * 100, 1))
