"""Text normalization and tokenization.

Turns raw page text into the clean, lowercase token stream that n-gram
counting consumes. Stripping is limited to ASCII punctuation/symbols;
non-ASCII letters are lowercased by Unicode rules and kept as-is.
"""

from __future__ import annotations

import string
from dataclasses import dataclass

# Every ASCII punctuation/symbol character is replaced by a space.
STRIP_CHARS = string.punctuation

_STRIP_TABLE = {ord(c): " " for c in STRIP_CHARS}
_STRIP_TABLE_KEEP_HYPHEN = {ord(c): " " for c in STRIP_CHARS if c != "-"}


@dataclass(frozen=True)
class TokenizedPage:
    """Token sequence for one page: non-empty lowercase words, no punctuation."""

    tokens: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.tokens)


def normalize_text(raw: str, *, keep_hyphens: bool = False) -> str:
    """Lowercase `raw`, replace punctuation with spaces, collapse whitespace.

    Idempotent. `keep_hyphens` retains "-" inside words (e.g. model names);
    by default hyphens are stripped like any other punctuation.
    """
    table = _STRIP_TABLE_KEEP_HYPHEN if keep_hyphens else _STRIP_TABLE
    return " ".join(raw.translate(table).lower().split())


def tokenize(text: str, *, keep_hyphens: bool = False) -> TokenizedPage:
    """Split text into tokens, normalizing defensively first."""
    normalized = normalize_text(text, keep_hyphens=keep_hyphens)
    return TokenizedPage(tuple(normalized.split()))
