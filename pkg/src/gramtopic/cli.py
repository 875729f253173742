"""Command-line interface.

Subcommands: extract, train-whitelist, evaluate, bench, convert. Settings
merge as defaults <- config file <- flags; the config file is a flat
"key = value" file whose keys mirror the long flag names, located via
--config or the GRAMTOPIC_CONFIG environment variable.

Exit codes: 0 success, 1 usage/configuration error, 2 runtime failure.
Requested artifacts go to stdout (or --out, written atomically); logs and
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bench import report_json as bench_report_json, report_text as bench_report_text, time_extraction
from .evaluation import aggregate, load_gold_csv, precision
from .filtering import (
    Blacklist,
    Whitelist,
    default_blacklist,
    load_blacklist,
    load_whitelist,
    save_whitelist,
    train_whitelist,
)
from .ingest import IngestConfig, convert_external, load_corpus, load_document
from .ngram import ExtractionConfig
from .pipeline import TopicResult, extract_topics, results_to_json

logger = logging.getLogger(__name__)

ENV_CONFIG = "GRAMTOPIC_CONFIG"


class UsageError(Exception):
    """Bad flags or bad configuration; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit 2; the contract is 1
        raise UsageError(message)


def _ngrams_arg(value: str) -> frozenset[int]:
    try:
        lengths = frozenset(int(part) for part in value.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid gram lengths: {value!r}")
    if not lengths:
        raise argparse.ArgumentTypeError("at least one gram length required")
    return lengths


def _fraction_arg(value: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid fraction: {value!r}")


def build_parser() -> _Parser:
    parser = _Parser(prog="gramtopic", description="N-gram topic extraction toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help=f"key=value config file (or ${ENV_CONFIG})")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def add_extraction_flags(p):
        p.add_argument("--ngrams", type=_ngrams_arg, default=None, help="gram lengths, e.g. 2,3")
        p.add_argument("--top-k", type=int, default=None, help="topics to keep per document")
        p.add_argument("--min-count", type=int, default=None, help="minimum document-level count")
        p.add_argument("--blacklist", default=None, help="blacklist file ('none' disables the built-in)")

    p_extract = sub.add_parser("extract", help="extract topics from a file or directory")
    p_extract.add_argument("input", help="text file or corpus directory")
    add_extraction_flags(p_extract)
    p_extract.add_argument("--whitelist", default=None, help="removal whitelist file")
    p_extract.add_argument("--jobs", type=int, default=None, help="parallel workers for a directory")
    p_extract.add_argument("--out", default=None, help="write JSON here instead of stdout")
    p_extract.set_defaults(func=cmd_extract)

    p_train = sub.add_parser("train-whitelist", help="learn the removal whitelist from a corpus")
    p_train.add_argument("corpus_dir", help="directory of training documents")
    add_extraction_flags(p_train)
    p_train.add_argument("--pa-fraction", type=_fraction_arg, default=None,
                         help="page threshold fraction, e.g. 1/2")
    p_train.add_argument("--page-min", type=int, default=None,
                         help="per-page count making a phrase high-frequency")
    p_train.add_argument("--doc-min", type=int, default=None,
                         help="documents that must nominate a phrase")
    p_train.add_argument("--save-whitelist", default=None, help="also write the whitelist file here")
    p_train.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    p_train.set_defaults(func=cmd_train)

    p_eval = sub.add_parser("evaluate", help="score extraction results against gold topics")
    p_eval.add_argument("results", help="TopicResult JSON file or directory of them")
    p_eval.add_argument("--gold", default=None, help="CSV of document_id,phrase lines")
    p_eval.add_argument("--containment", action="store_true",
                        help="also match topics contained in a gold phrase")
    p_eval.add_argument("--format", choices=("json", "table"), default=None)
    p_eval.add_argument("--out", default=None, help="write the report here instead of stdout")
    p_eval.set_defaults(func=cmd_evaluate)

    p_bench = sub.add_parser("bench", help="time extraction per document, grouped by size")
    p_bench.add_argument("corpus_dir", help="directory of documents to time")
    add_extraction_flags(p_bench)
    p_bench.add_argument("--whitelist", default=None, help="removal whitelist file")
    p_bench.add_argument("--repeats", type=int, default=None, help="timed runs per document (median)")
    p_bench.add_argument("--format", choices=("json", "table"), default=None)
    p_bench.add_argument("--out", default=None, help="write the report here instead of stdout")
    p_bench.set_defaults(func=cmd_bench)

    p_convert = sub.add_parser("convert", help="run the external converter on a file")
    p_convert.add_argument("input", help="file to convert (e.g. a PDF)")
    p_convert.add_argument("--converter", default=None,
                           help="command template with {in} and {out} placeholders")
    p_convert.add_argument("--timeout", type=float, default=None, help="converter timeout, seconds")
    p_convert.set_defaults(func=cmd_convert)

    return parser


def _load_file_config(args) -> dict[str, str]:
    path = args.config or os.environ.get(ENV_CONFIG)
    if not path:
        return {}
    if not Path(path).is_file():
        raise UsageError(f"config file not found: {path}")
    settings = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        entry = line.strip()
        if not entry or entry.startswith("#"):
            continue
        if "=" not in entry:
            raise UsageError(f"{path}:{lineno}: expected 'key = value', got {entry!r}")
        key, _, value = entry.partition("=")
        settings[key.strip()] = value.strip()
    return settings


def _setting(args, filecfg: dict[str, str], key: str, default, convert):
    value = getattr(args, key.replace("-", "_"), None)
    if value is not None:
        return value
    if key in filecfg:
        try:
            return convert(filecfg[key])
        except (ValueError, ZeroDivisionError, argparse.ArgumentTypeError) as exc:
            raise UsageError(f"config key {key!r}: {exc}")
    return default


def _extraction_config(args, filecfg) -> ExtractionConfig:
    try:
        return ExtractionConfig(
            n_set=_setting(args, filecfg, "ngrams", frozenset({2, 3}), _ngrams_arg),
            top_k=_setting(args, filecfg, "top-k", 5, int),
            min_count=_setting(args, filecfg, "min-count", 2, int),
            page_high_freq_min=_setting(args, filecfg, "page-min", 2, int),
            pa_fraction=_setting(args, filecfg, "pa-fraction", Fraction(1, 2), _fraction_arg),
            doc_min=_setting(args, filecfg, "doc-min", 2, int),
        )
    except ValueError as exc:
        raise UsageError(str(exc))


def _ingest_config(args, filecfg) -> IngestConfig:
    try:
        return IngestConfig(
            page_delimiter=_setting(args, filecfg, "page-delimiter", "\x0c", str),
            converter_command=_setting(args, filecfg, "converter", None, str),
            converter_timeout=_setting(args, filecfg, "converter-timeout", 60.0, float),
        )
    except ValueError as exc:
        raise UsageError(str(exc))


def _blacklist(args, filecfg) -> Blacklist:
    path = _setting(args, filecfg, "blacklist", None, str)
    if path is None:
        return default_blacklist()
    if path.lower() == "none":
        return Blacklist(frozenset())
    return load_blacklist(path)


def _whitelist(args, filecfg) -> Whitelist:
    path = _setting(args, filecfg, "whitelist", None, str)
    if path is None:
        return Whitelist.empty()
    return load_whitelist(path)


def _emit(text: str, out_path: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out_path is None:
        sys.stdout.write(text)
        return
    target = Path(out_path)
    fd, tmp_name = tempfile.mkstemp(dir=target.parent or Path("."), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_name, target)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    logger.info("wrote %s", target)


def cmd_extract(args, filecfg) -> int:
    cfg = _extraction_config(args, filecfg)
    ingest_cfg = _ingest_config(args, filecfg)
    bl = _blacklist(args, filecfg)
    wl = _whitelist(args, filecfg)
    out = _setting(args, filecfg, "out", None, str)
    source = Path(args.input)
    if source.is_dir():
        docs = load_corpus(source, ingest_cfg)
        jobs = _setting(args, filecfg, "jobs", 1, int)
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(lambda d: extract_topics(d, cfg, bl, wl), docs))
        else:
            results = [extract_topics(doc, cfg, bl, wl) for doc in docs]
        _emit(results_to_json(results), out)
    else:
        result = extract_topics(load_document(source, ingest_cfg), cfg, bl, wl)
        _emit(result.to_json(), out)
    return 0


def cmd_train(args, filecfg) -> int:
    cfg = _extraction_config(args, filecfg)
    ingest_cfg = _ingest_config(args, filecfg)
    bl = _blacklist(args, filecfg)
    corpus = load_corpus(Path(args.corpus_dir), ingest_cfg)
    report = train_whitelist(corpus, cfg, bl)
    save_path = _setting(args, filecfg, "save-whitelist", None, str)
    if save_path:
        save_whitelist(report.to_whitelist(), save_path)
        logger.info("wrote whitelist with %d phrases to %s", len(report.accepted), save_path)
    _emit(json.dumps(report.to_json_dict(), indent=2, ensure_ascii=False),
          _setting(args, filecfg, "out", None, str))
    return 0


def _load_results(path: Path) -> list[TopicResult]:
    def parse_file(file_path: Path) -> list[TopicResult]:
        raw = json.loads(file_path.read_text(encoding="utf-8"))
        items = raw if isinstance(raw, list) else [raw]
        return [TopicResult.from_json_dict(item) for item in items]

    if path.is_dir():
        results = []
        for file_path in sorted(path.glob("*.json")):
            results.extend(parse_file(file_path))
        return results
    if path.is_file():
        return parse_file(path)
    raise FileNotFoundError(f"no such results file or directory: {path}")


def cmd_evaluate(args, filecfg) -> int:
    gold_path = _setting(args, filecfg, "gold", None, str)
    if not gold_path:
        raise UsageError("evaluate requires --gold FILE")
    results = _load_results(Path(args.results))
    if not results:
        raise ValueError(f"no extraction results found under {args.results}")
    gold = load_gold_csv(gold_path)
    missing = sorted(r.document_id for r in results if r.document_id not in gold)
    if missing:
        raise ValueError(f"no gold topics for: {', '.join(missing)}")
    scores = [
        precision(result, gold.for_document(result.document_id), containment=args.containment)
        for result in results
    ]
    report = aggregate(scores)
    fmt = _setting(args, filecfg, "format", "json", str)
    if fmt == "table":
        text = report.to_text_table()
    else:
        payload = {
            "corpus": report.to_json_dict(),
            "per_document": [
                score.to_json_dict() for score in sorted(scores, key=lambda s: s.document_id)
            ],
        }
        text = json.dumps(payload, indent=2, ensure_ascii=False)
    _emit(text, _setting(args, filecfg, "out", None, str))
    return 0


def cmd_bench(args, filecfg) -> int:
    cfg = _extraction_config(args, filecfg)
    ingest_cfg = _ingest_config(args, filecfg)
    bl = _blacklist(args, filecfg)
    wl = _whitelist(args, filecfg)
    corpus = load_corpus(Path(args.corpus_dir), ingest_cfg)
    records = time_extraction(corpus, cfg, bl, wl, repeats=_setting(args, filecfg, "repeats", 1, int))
    fmt = _setting(args, filecfg, "format", "json", str)
    text = bench_report_text(records) if fmt == "table" else bench_report_json(records)
    _emit(text, _setting(args, filecfg, "out", None, str))
    return 0


def cmd_convert(args, filecfg) -> int:
    command = _setting(args, filecfg, "converter", None, str)
    if not command:
        raise UsageError("convert requires --converter CMD (with {in}/{out} placeholders)")
    timeout = args.timeout if args.timeout is not None else _setting(
        args, filecfg, "converter-timeout", 60.0, float
    )
    ingest_cfg = IngestConfig(converter_command=command, converter_timeout=timeout)
    produced = convert_external(Path(args.input), ingest_cfg)
    sys.stdout.write(f"{produced}\n")
    return 0


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return 0 if exc.code in (0, None) else int(exc.code)
    logging.basicConfig(
        stream=sys.stderr,
        format="%(message)s",
        level=logging.INFO if args.verbose else logging.WARNING,
    )
    if getattr(args, "func", None) is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        filecfg = _load_file_config(args)
        return args.func(args, filecfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
