"""Wall-clock timing of end-to-end extraction, grouped by document size.

Timing covers extract_topics only: loading the corpus and serializing the
report are outside the measured window, and every report says so. Runs are
strictly sequential on one thread so the numbers stay comparable.
"""

from __future__ import annotations

import json
import statistics
import time
from dataclasses import dataclass
from typing import Callable, Sequence

from .filtering import Blacklist, Whitelist
from .ingest import Document
from .ngram import ExtractionConfig
from .pipeline import extract_topics

TIMING_NOTE = "wall time covers topic extraction only; loading and serialization excluded"

GROUP_SMALL = "Small"
GROUP_MEDIUM = "Medium"
GROUP_LARGE = "Large"
_GROUP_ORDER = (GROUP_SMALL, GROUP_MEDIUM, GROUP_LARGE)

SMALL_MAX_PAGES_DEFAULT = 4
MEDIUM_MAX_PAGES_DEFAULT = 10


@dataclass
class TimingRecord:
    document_id: str
    byte_size: int
    page_count: int
    wall_time_ms: float
    group: str

    def to_json_dict(self) -> dict:
        return {
            "document_id": self.document_id,
            "byte_size": self.byte_size,
            "page_count": self.page_count,
            "wall_time_ms": round(self.wall_time_ms, 3),
            "group": self.group,
        }


@dataclass
class GroupStats:
    files: int
    mean_ms: float
    min_ms: float
    max_ms: float


def assign_group(
    page_count: int,
    small_max_pages: int = SMALL_MAX_PAGES_DEFAULT,
    medium_max_pages: int = MEDIUM_MAX_PAGES_DEFAULT,
) -> str:
    if page_count <= small_max_pages:
        return GROUP_SMALL
    if page_count <= medium_max_pages:
        return GROUP_MEDIUM
    return GROUP_LARGE


def time_extraction(
    corpus: Sequence[Document],
    cfg: ExtractionConfig = ExtractionConfig(),
    bl: Blacklist | None = None,
    wl: Whitelist | None = None,
    *,
    repeats: int = 1,
    clock: Callable[[], float] = time.perf_counter,
    small_max_pages: int = SMALL_MAX_PAGES_DEFAULT,
    medium_max_pages: int = MEDIUM_MAX_PAGES_DEFAULT,
) -> list[TimingRecord]:
    """Time extract_topics once per document (median over `repeats` runs)."""
    if not corpus:
        raise ValueError("timing requires a non-empty corpus")
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    records = []
    for doc in corpus:
        samples = []
        for _ in range(repeats):
            start = clock()
            extract_topics(doc, cfg, bl, wl)
            samples.append((clock() - start) * 1000.0)
        records.append(
            TimingRecord(
                document_id=doc.id,
                byte_size=doc.byte_size,
                page_count=doc.page_count,
                wall_time_ms=statistics.median(samples),
                group=assign_group(doc.page_count, small_max_pages, medium_max_pages),
            )
        )
    return records


def timing_summary(records: Sequence[TimingRecord]) -> dict[str, GroupStats]:
    """Per-group mean/min/max wall time; groups with no records are omitted."""
    if not records:
        raise ValueError("timing summary needs at least one record")
    summary = {}
    for group in _GROUP_ORDER:
        times = [r.wall_time_ms for r in records if r.group == group]
        if times:
            summary[group] = GroupStats(
                files=len(times),
                mean_ms=statistics.fmean(times),
                min_ms=min(times),
                max_ms=max(times),
            )
    return summary


def report_json(records: Sequence[TimingRecord]) -> str:
    summary = timing_summary(records)
    payload = {
        "note": TIMING_NOTE,
        "records": [record.to_json_dict() for record in records],
        "summary": [
            {
                "group": group,
                "files": stats.files,
                "mean_ms": round(stats.mean_ms, 2),
                "min_ms": round(stats.min_ms, 2),
                "max_ms": round(stats.max_ms, 2),
            }
            for group, stats in summary.items()
        ],
    }
    return json.dumps(payload, indent=2)


def report_text(records: Sequence[TimingRecord]) -> str:
    summary = timing_summary(records)
    lines = [f"# {TIMING_NOTE}", f"{'group':<8}{'files':>6}{'mean ms':>10}{'min ms':>10}{'max ms':>10}"]
    for group, stats in summary.items():
        lines.append(
            f"{group:<8}{stats.files:>6}{stats.mean_ms:>10.2f}{stats.min_ms:>10.2f}{stats.max_ms:>10.2f}"
        )
    return "\n".join(lines)
