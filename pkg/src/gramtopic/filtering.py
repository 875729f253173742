"""Blacklist/whitelist filtration and cross-page whitelist training.

Terminology warning: the whitelist here is a REMOVAL list. It holds
domain-generic phrases that pervade many pages of many documents; filtering
subtracts them so that only topic-specific phrases survive. The blacklist
holds single stopwords, and any phrase containing one is dropped.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence, TYPE_CHECKING

from .ngram import ExtractionConfig, MAX_GRAM, NgramTable, Phrase, count_ngrams_per_page, phrase_words
from .textprep import normalize_text, tokenize

if TYPE_CHECKING:
    from .ingest import Document

_DEFAULT_BLACKLIST_RESOURCE = "default_blacklist.txt"


class MalformedEntryError(ValueError):
    """A list file line violates the entry format."""


class EmptyCorpusError(ValueError):
    """Whitelist training needs at least one document."""


@dataclass(frozen=True)
class Blacklist:
    """Single stopwords; a phrase containing any of them is discarded."""

    words: frozenset[str]

    def __contains__(self, word: str) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)

    @classmethod
    def from_words(cls, words: Iterable[str]) -> Blacklist:
        cleaned = set()
        for word in words:
            entry = word.strip().lower()
            if not entry:
                continue
            if any(ch.isspace() for ch in entry):
                raise MalformedEntryError(f"blacklist entry must be a single word: {word!r}")
            cleaned.add(entry)
        return cls(frozenset(cleaned))


@dataclass(frozen=True)
class Whitelist:
    """Generic phrases to remove from results (canonical lowercase form)."""

    phrases: frozenset[Phrase]

    def __contains__(self, phrase: Phrase) -> bool:
        return phrase in self.phrases

    def __len__(self) -> int:
        return len(self.phrases)

    @classmethod
    def empty(cls) -> Whitelist:
        return cls(frozenset())

    @classmethod
    def from_phrases(cls, phrases: Iterable[str]) -> Whitelist:
        cleaned = set()
        for phrase in phrases:
            entry = normalize_text(phrase)
            if not entry:
                continue
            if len(phrase_words(entry)) > MAX_GRAM:
                raise MalformedEntryError(f"whitelist phrase longer than {MAX_GRAM} words: {phrase!r}")
            cleaned.add(entry)
        return cls(frozenset(cleaned))


def _list_entries(text: str) -> list[str]:
    lines = []
    for line in text.splitlines():
        entry = line.strip()
        if not entry or entry.startswith("#"):
            continue
        lines.append(entry)
    return lines


def _read_list_lines(path: Path | str) -> list[str]:
    return _list_entries(Path(path).read_text(encoding="utf-8"))


def load_blacklist(path: Path | str) -> Blacklist:
    """One word per line, UTF-8, "#" comments and blank lines ignored."""
    return Blacklist.from_words(_read_list_lines(path))


def load_whitelist(path: Path | str) -> Whitelist:
    """One phrase per line (space-separated words), "#" comments ignored."""
    return Whitelist.from_phrases(_read_list_lines(path))


def save_whitelist(wl: Whitelist, path: Path | str) -> None:
    """Write entries sorted, one per line; load_whitelist round-trips."""
    body = "".join(f"{phrase}\n" for phrase in sorted(wl.phrases))
    Path(path).write_text(body, encoding="utf-8")


def default_blacklist() -> Blacklist:
    """The stopword inventory shipped with the package (articles,
    prepositions, conjunctions, pronouns, auxiliaries)."""
    data = resources.files("gramtopic").joinpath("data", _DEFAULT_BLACKLIST_RESOURCE)
    return Blacklist.from_words(_list_entries(data.read_text(encoding="utf-8")))


def apply_blacklist(table: NgramTable, bl: Blacklist) -> NgramTable:
    """Keep exactly the phrases in which no word is blacklisted."""
    survivors = {
        phrase: count
        for phrase, count in table.counts.items()
        if not any(word in bl.words for word in phrase_words(phrase))
    }
    return NgramTable(survivors, table.n_set, table.scope)


def apply_whitelist(table: NgramTable, wl: Whitelist) -> NgramTable:
    """Set-difference on keys: drop phrases whose canonical form is listed."""
    survivors = {
        phrase: count for phrase, count in table.counts.items() if phrase not in wl.phrases
    }
    return NgramTable(survivors, table.n_set, table.scope)


@dataclass
class WhitelistTrainingReport:
    """Full audit of a training run over a corpus.

    A phrase is high-frequency on a page when its page count reaches
    `page_high_freq_min`; CL counts the pages where that holds. The phrase
    becomes a document's candidate iff CL > Pa (strictly), and enters
    `accepted` once at least `doc_min` documents nominate it.
    """

    per_document_candidates: dict[str, set[Phrase]] = field(default_factory=dict)
    nomination_counts: dict[Phrase, int] = field(default_factory=dict)
    accepted: set[Phrase] = field(default_factory=set)
    pa_used: dict[str, int] = field(default_factory=dict)

    def to_whitelist(self) -> Whitelist:
        return Whitelist(frozenset(self.accepted))

    def to_json_dict(self) -> dict:
        return {
            "documents": len(self.per_document_candidates),
            "pa_used": {doc_id: self.pa_used[doc_id] for doc_id in sorted(self.pa_used)},
            "per_document_candidates": {
                doc_id: sorted(phrases)
                for doc_id, phrases in sorted(self.per_document_candidates.items())
            },
            "nomination_counts": {
                phrase: self.nomination_counts[phrase] for phrase in sorted(self.nomination_counts)
            },
            "accepted": sorted(self.accepted),
        }


def page_candidates(doc: Document, cfg: ExtractionConfig, bl: Blacklist) -> set[Phrase]:
    """One document's whitelist candidates via the cross-page rule."""
    page_hits: Counter[Phrase] = Counter()
    for page in doc.pages:
        table = apply_blacklist(count_ngrams_per_page(tokenize(page), cfg), bl)
        for phrase, count in table.counts.items():
            if count >= cfg.page_high_freq_min:
                page_hits[phrase] += 1
    pa = cfg.pa_for(len(doc.pages))
    return {phrase for phrase, pages in page_hits.items() if pages > pa}


def train_whitelist(
    corpus: Sequence[Document], cfg: ExtractionConfig, bl: Blacklist
) -> WhitelistTrainingReport:
    """Apply the cross-page candidate rule to every document in the corpus.

    Deterministic and independent of corpus ordering: nominations merge by
    commutative counting.
    """
    if not corpus:
        raise EmptyCorpusError("whitelist training requires a non-empty corpus")
    report = WhitelistTrainingReport()
    nominations: Counter[Phrase] = Counter()
    for doc in corpus:
        candidates = page_candidates(doc, cfg, bl)
        report.per_document_candidates[doc.id] = candidates
        report.pa_used[doc.id] = cfg.pa_for(len(doc.pages))
        nominations.update(candidates)
    report.nomination_counts = dict(nominations)
    report.accepted = {phrase for phrase, n in nominations.items() if n >= cfg.doc_min}
    return report
