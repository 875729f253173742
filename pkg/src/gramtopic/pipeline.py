"""End-to-end topic extraction: normalize -> count -> filter -> rank."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .filtering import Blacklist, Whitelist, apply_blacklist, apply_whitelist
from .ingest import Document
from .ngram import ExtractionConfig, NgramTable, Phrase, count_ngrams
from .textprep import tokenize


@dataclass
class TopicResult:
    """Ranked top-K phrases with counts for one document.

    `empty` marks a document that produced no tokens at all (not a failure).
    `stage_tables` optionally retains the raw/post-blacklist/post-whitelist
    tables for diagnostics.
    """

    document_id: str
    topics: list[tuple[Phrase, int]]
    config_echo: ExtractionConfig
    empty: bool = False
    stage_tables: dict[str, NgramTable] | None = field(default=None, repr=False)

    def phrases(self) -> list[Phrase]:
        return [phrase for phrase, _ in self.topics]

    def to_json_dict(self) -> dict:
        return {
            "document_id": self.document_id,
            "empty": self.empty,
            "topics": [{"phrase": phrase, "count": count} for phrase, count in self.topics],
            "config": self.config_echo.to_json_dict(),
        }

    def to_json(self) -> str:
        # Stable field order and sorted inner keys: reruns must be byte-identical.
        return json.dumps(self.to_json_dict(), indent=2, ensure_ascii=False)

    @classmethod
    def from_json_dict(cls, raw: dict) -> TopicResult:
        cfg_raw = raw.get("config", {})
        cfg = ExtractionConfig(
            n_set=frozenset(cfg_raw.get("n_set", [2, 3])),
            top_k=cfg_raw.get("top_k", 5),
            min_count=cfg_raw.get("min_count", 2),
            page_high_freq_min=cfg_raw.get("page_high_freq_min", 2),
            pa_fraction=cfg_raw.get("pa_fraction", "1/2"),
            doc_min=cfg_raw.get("doc_min", 2),
        )
        return cls(
            document_id=raw["document_id"],
            topics=[(t["phrase"], int(t["count"])) for t in raw.get("topics", [])],
            config_echo=cfg,
            empty=bool(raw.get("empty", False)),
        )


def rank(table: NgramTable, k: int, min_count: int) -> list[tuple[Phrase, int]]:
    """Deterministic total order: count descending, phrase ascending.

    Phrases below `min_count` are dropped before truncating to `k`.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    survivors = [(phrase, count) for phrase, count in table.counts.items() if count >= min_count]
    survivors.sort(key=lambda item: (-item[1], item[0]))
    return survivors[:k]


def extract_topics(
    doc: Document,
    cfg: ExtractionConfig = ExtractionConfig(),
    bl: Blacklist | None = None,
    wl: Whitelist | None = None,
    *,
    keep_stage_tables: bool = False,
) -> TopicResult:
    """Run the whole pipeline for one document.

    Pure given its inputs; documents may be processed in parallel sharing
    the read-only blacklist/whitelist.
    """
    bl = bl if bl is not None else Blacklist(frozenset())
    wl = wl if wl is not None else Whitelist.empty()
    pages = [tokenize(page) for page in doc.pages]
    raw_table = count_ngrams(pages, cfg)
    after_blacklist = apply_blacklist(raw_table, bl)
    after_whitelist = apply_whitelist(after_blacklist, wl)
    topics = rank(after_whitelist, cfg.top_k, cfg.min_count)
    stage_tables = None
    if keep_stage_tables:
        stage_tables = {
            "raw": raw_table,
            "post_blacklist": after_blacklist,
            "post_whitelist": after_whitelist,
        }
    return TopicResult(
        document_id=doc.id,
        topics=topics,
        config_echo=cfg,
        empty=not any(page.tokens for page in pages),
        stage_tables=stage_tables,
    )


def results_to_json(results: Sequence[TopicResult]) -> str:
    """JSON array rendering for multi-document runs, input order preserved."""
    return json.dumps([r.to_json_dict() for r in results], indent=2, ensure_ascii=False)
