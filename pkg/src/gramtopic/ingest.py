"""Load source files into page-split documents.

Plain UTF-8 text is the canonical input; pages are delimiter-separated
segments (form feed by default, the marker most PDF-to-text converters
emit). Binary inputs are handed to a configurable external converter
command instead of being parsed here.
"""

from __future__ import annotations

import logging
import shlex
import subprocess
from dataclasses import dataclass
from pathlib import Path

logger = logging.getLogger(__name__)

PAGE_DELIMITER_DEFAULT = "\x0c"

# A NUL byte this early means the file is not text in any encoding we accept.
_BINARY_SNIFF_BYTES = 4096


class IngestError(Exception):
    """Base class for document-loading failures."""


class DecodeFailure(IngestError):
    """The file is binary and no converter command is configured."""


class ConverterFailed(IngestError):
    """External converter exited non-zero, timed out, or produced nothing."""

    def __init__(self, message: str, diagnostic: str = ""):
        super().__init__(message if not diagnostic else f"{message}: {diagnostic.strip()}")
        self.diagnostic = diagnostic


class ConverterNotConfigured(IngestError):
    """Conversion requested but no converter command is set."""


class EmptyDocumentError(IngestError):
    """The file contains no non-blank page segment."""


@dataclass(frozen=True)
class Document:
    """An identified, immutable sequence of raw page texts from one source file."""

    id: str
    source_path: Path
    pages: tuple[str, ...]
    byte_size: int

    @property
    def page_count(self) -> int:
        return len(self.pages)


@dataclass(frozen=True)
class IngestConfig:
    page_delimiter: str = PAGE_DELIMITER_DEFAULT
    converter_command: str | None = None
    converter_timeout: float = 60.0
    text_extensions: tuple[str, ...] = (".txt",)

    def __post_init__(self) -> None:
        if not self.page_delimiter:
            raise ValueError("page_delimiter must be non-empty")


def _looks_binary(data: bytes) -> bool:
    return b"\x00" in data[:_BINARY_SNIFF_BYTES]


def load_document(path: Path | str, cfg: IngestConfig = IngestConfig()) -> Document:
    """Read a text file and split it into pages on the configured delimiter.

    Invalid UTF-8 byte sequences are replaced, not fatal (converted PDFs
    routinely contain stray bytes). Blank segments are dropped; a file with
    no non-blank segment raises EmptyDocumentError. A binary file is run
    through the converter command first, or fails with DecodeFailure when
    none is configured.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such file: {path}")
    data = path.read_bytes()
    if _looks_binary(data):
        if cfg.converter_command is None:
            raise DecodeFailure(f"binary content in {path} and no converter configured")
        data = convert_external(path, cfg).read_bytes()
    text = data.decode("utf-8", errors="replace")
    pages = tuple(segment for segment in text.split(cfg.page_delimiter) if segment.strip())
    if not pages:
        raise EmptyDocumentError(f"{path} has no non-blank page")
    return Document(id=path.stem, source_path=path, pages=pages, byte_size=len(data))


def convert_external(path: Path | str, cfg: IngestConfig) -> Path:
    """Run the configured converter command and return the produced text path.

    The command template is shell-executed with "{in}"/"{out}" placeholders
    substituted (shell-quoted). When the template has no "{out}", the tool is
    expected to write the default output path itself (pdftotext-style:
    input path with a .txt suffix).
    """
    if cfg.converter_command is None:
        raise ConverterNotConfigured("set IngestConfig.converter_command to convert non-text files")
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"no such file: {path}")
    out_path = path.with_suffix(".txt")
    if out_path == path:
        out_path = path.with_suffix(".converted.txt")
    command = cfg.converter_command.replace("{in}", shlex.quote(str(path)))
    command = command.replace("{out}", shlex.quote(str(out_path)))
    try:
        proc = subprocess.run(
            command,
            shell=True,
            capture_output=True,
            text=True,
            timeout=cfg.converter_timeout,
        )
    except subprocess.TimeoutExpired as exc:
        raise ConverterFailed(
            f"converter timed out after {cfg.converter_timeout}s: {command}",
            diagnostic=str(exc.stderr or ""),
        ) from exc
    if proc.returncode != 0:
        raise ConverterFailed(
            f"converter exited {proc.returncode}: {command}",
            diagnostic=proc.stderr or proc.stdout,
        )
    if not out_path.is_file():
        raise ConverterFailed(f"converter produced no output file at {out_path}")
    return out_path


def load_corpus(directory: Path | str, cfg: IngestConfig = IngestConfig()) -> list[Document]:
    """Load every recognized text file in the directory, lexicographically.

    A file that fails to load is logged and skipped; the rest of the corpus
    still loads. Only the directory itself being missing is fatal.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise NotADirectoryError(f"no such directory: {directory}")
    documents = []
    for path in sorted(p for p in directory.iterdir() if p.is_file()):
        if path.suffix.lower() not in cfg.text_extensions:
            continue
        try:
            documents.append(load_document(path, cfg))
        except (IngestError, OSError) as exc:
            logger.warning("skipping %s: %s", path, exc)
    return documents
