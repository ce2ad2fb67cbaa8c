"""Batch command-line interface.

Commands: ``ingest``, ``cluster``, ``dedup`` and ``pipeline`` (cluster
followed by dedup). Every artifact is UTF-8 JSON written to
``--output-dir`` and embeds the resolved configuration.

Exit codes: 0 ok, 2 ingestion, 3 vectorization, 4 malformed dedup input,
1 anything else.
"""

import argparse
import dataclasses
import json
import logging
import os
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional, Tuple

from ._validation import check_fraction, check_int
from .dedup import SimilarityMatrix, dedup_report
from .exceptions import EmptyVocabulary, MalformedMatrix, MFIClustError
from .hierarchy import HierarchyConfig, build_hierarchy
from .preprocess import HTML, PLAIN, RawDocument, load_stopwords, preprocess_document
from .vectorspace import Vocabulary, build_vectors, build_vocabulary

log = logging.getLogger("mficlust")

EXIT_OK = 0
EXIT_OTHER = 1
EXIT_INGEST = 2
EXIT_VECTORIZE = 3
EXIT_DEDUP_INPUT = 4


class CLIError(Exception):
    def __init__(self, message, code=EXIT_OTHER):
        super().__init__(message)
        self.code = code


@dataclass
class Config:
    stopwords_path: Optional[str] = None
    df_threshold: float = 0.8
    tf_support: int = 1
    minsup: int = 2
    alpha: float = 0.8
    closure: bool = True
    max_levels: int = 32
    output_dir: str = "mficlust-out"
    threads: Optional[int] = None

    def validate(self):
        check_fraction(self.df_threshold, "df_threshold")
        check_fraction(self.alpha, "alpha")
        check_int(self.tf_support, "tf_support")
        check_int(self.minsup, "minsup", minimum=1)
        check_int(self.max_levels, "max_levels", minimum=1)
        if self.threads is not None:
            check_int(self.threads, "threads", minimum=1)
        if not isinstance(self.closure, bool):
            raise ValueError(f"closure must be a boolean, got {self.closure!r}")
        return self

    def to_dict(self):
        return dataclasses.asdict(self)


def resolve_config(args) -> Config:
    """Defaults, then the ``--config`` file, then explicit flags."""
    values = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise CLIError(f"cannot read config file {args.config}: {exc}")
        names = {f.name for f in dataclasses.fields(Config)}
        unknown = set(data) - names
        if unknown:
            raise CLIError(f"unknown config keys: {', '.join(sorted(unknown))}")
        values.update(data)
    for f in dataclasses.fields(Config):
        flag = getattr(args, f.name, None)
        if flag is not None:
            values[f.name] = flag
    cfg = Config(**values)
    try:
        cfg.validate()
    except ValueError as exc:
        raise CLIError(f"invalid configuration: {exc}")
    if cfg.threads is None:
        cfg.threads = os.cpu_count() or 1
    return cfg


# -- ingestion ---------------------------------------------------------------

def ingest(corpus_dir) -> Tuple[List[RawDocument], List[str]]:
    """Read every non-hidden file below ``corpus_dir`` in sorted path order.

    Files that are not valid UTF-8 are skipped and reported as warnings.
    """
    root = Path(corpus_dir)
    if not root.is_dir():
        raise CLIError(f"cannot read corpus directory {corpus_dir}", EXIT_INGEST)
    try:
        paths = sorted(
            p for p in root.rglob("*")
            if p.is_file() and not any(part.startswith(".") for part in p.relative_to(root).parts)
        )
    except OSError as exc:
        raise CLIError(f"cannot read corpus directory {corpus_dir}: {exc}", EXIT_INGEST)
    docs, warnings = [], []
    for path in paths:
        try:
            content = path.read_bytes().decode("utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            warnings.append(f"{path}: {exc}")
            log.warning("skipping %s: %s", path, exc)
            continue
        kind = HTML if path.suffix.lower() in (".html", ".htm") else PLAIN
        docs.append(RawDocument(len(docs), str(path.relative_to(root)), content, kind))
    if not docs:
        raise CLIError(f"no documents in {corpus_dir}", EXIT_INGEST)
    return docs, warnings


def _load_stopwords(cfg: Config):
    try:
        return load_stopwords(cfg.stopwords_path)
    except OSError as exc:
        raise CLIError(f"cannot read stopword file {cfg.stopwords_path}: {exc}")


def _tokenize(raws, cfg):
    stoplist = _load_stopwords(cfg)
    return [preprocess_document(r, stoplist) for r in raws]


def _vectorize(tokenized, cfg):
    if len(tokenized) == 1:
        # df filtering cannot keep anything in a one-document corpus
        return build_vectors(tokenized, Vocabulary([], []))
    try:
        vocab = build_vocabulary(tokenized, cfg.df_threshold)
    except EmptyVocabulary as exc:
        raise CLIError(f"{exc}; raise --df-threshold", EXIT_VECTORIZE)
    return build_vectors(tokenized, vocab)


def _write(cfg: Config, name: str, payload: dict) -> Path:
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    path.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    return path


# -- commands ----------------------------------------------------------------

def cmd_ingest(args, cfg: Config) -> int:
    raws, warnings = ingest(args.corpus_dir)
    tokenized = _tokenize(raws, cfg)
    manifest = {
        "config": cfg.to_dict(),
        "docs": [
            {"id": r.id, "path": r.source, "kind": r.kind, "tokens": len(t.tokens)}
            for r, t in zip(raws, tokenized)
        ],
        "warnings": warnings,
    }
    path = _write(cfg, "manifest.json", manifest)
    print(f"ingested {len(raws)} documents ({len(warnings)} skipped) -> {path}")
    return EXIT_OK


def run_cluster(raws, cfg: Config):
    matrix = _vectorize(_tokenize(raws, cfg), cfg)
    hconf = HierarchyConfig(cfg.tf_support, cfg.minsup, cfg.max_levels)
    tree = build_hierarchy(matrix, hconf)
    hierarchy = {"config": cfg.to_dict(), **tree.to_dict()}
    summary = {
        "config": cfg.to_dict(),
        "documents": matrix.m,
        "terms": len(matrix.vocabulary),
        "level_counts": tree.level_sizes(),
        "mfi_counts": [len(r.mfis) for r in tree.records],
        "synthetic_root": tree.root.synthetic,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    return hierarchy, summary


def cmd_cluster(args, cfg: Config) -> int:
    raws, _ = ingest(args.corpus_dir)
    hierarchy, summary = run_cluster(raws, cfg)
    _write(cfg, "hierarchy.json", hierarchy)
    _write(cfg, "summary.json", summary)
    print(f"levels: {summary['level_counts']}")
    return EXIT_OK


def load_matrix_file(path) -> SimilarityMatrix:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CLIError(f"cannot read matrix file {path}: {exc}", EXIT_DEDUP_INPUT)
    if not isinstance(data, dict) or "rows" not in data:
        raise CLIError("matrix file must be an object with a 'rows' field", EXIT_DEDUP_INPUT)
    rows = data["rows"]
    if "n" in data and (not isinstance(rows, list) or data["n"] != len(rows)):
        raise CLIError(f"matrix file declares n={data['n']} but has {len(rows)} rows", EXIT_DEDUP_INPUT)
    try:
        return SimilarityMatrix.from_rows(rows)
    except MalformedMatrix as exc:
        raise CLIError(f"malformed matrix: {exc}", EXIT_DEDUP_INPUT)


def run_dedup(raws, cfg: Config, matrix_file=None):
    if matrix_file is not None:
        source, sources = load_matrix_file(matrix_file), None
    else:
        source = _vectorize(_tokenize(raws, cfg), cfg)
        sources = [r.source for r in raws]
    report = dedup_report(source, cfg.alpha, cfg.closure, sources)
    return {"config": cfg.to_dict(), **report.to_dict()}


def cmd_dedup(args, cfg: Config) -> int:
    if (args.corpus_dir is None) == (args.matrix is None):
        raise CLIError("give exactly one of CORPUS_DIR or --matrix")
    raws = None if args.matrix else ingest(args.corpus_dir)[0]
    report = run_dedup(raws, cfg, args.matrix)
    _write(cfg, "dedup.json", report)
    print(f"{len(report['groups'])} duplicate groups, {len(report['singletons'])} singletons")
    return EXIT_OK


def cmd_pipeline(args, cfg: Config) -> int:
    raws, _ = ingest(args.corpus_dir)
    hierarchy, summary = run_cluster(raws, cfg)
    report = run_dedup(raws, cfg)
    _write(cfg, "hierarchy.json", hierarchy)
    _write(cfg, "summary.json", summary)
    _write(cfg, "dedup.json", report)
    print(f"levels: {summary['level_counts']}; {len(report['groups'])} duplicate groups")
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON file with any Config field; flags override it")
    p.add_argument("--stopwords-path", dest="stopwords_path")
    p.add_argument("--df-threshold", dest="df_threshold", type=float)
    p.add_argument("--tf-support", dest="tf_support", type=int)
    p.add_argument("--minsup", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--closure", dest="closure", action="store_true", default=None)
    p.add_argument("--no-closure", dest="closure", action="store_false")
    p.add_argument("--max-levels", dest="max_levels", type=int)
    p.add_argument("--output-dir", dest="output_dir")
    p.add_argument("--threads", type=int)
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mficlust", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="read a corpus and write a manifest")
    p.add_argument("corpus_dir")
    _add_common(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("cluster", help="build the MFI cluster hierarchy")
    p.add_argument("corpus_dir")
    _add_common(p)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("dedup", help="group near-duplicate documents")
    p.add_argument("corpus_dir", nargs="?")
    p.add_argument("--matrix", help="JSON {n, rows} similarity matrix used instead of a corpus")
    _add_common(p)
    p.set_defaults(func=cmd_dedup)

    p = sub.add_parser("pipeline", help="cluster, then dedup")
    p.add_argument("corpus_dir")
    _add_common(p)
    p.set_defaults(func=cmd_pipeline)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        cfg = resolve_config(args)
        return args.func(args, cfg)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except MFIClustError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OTHER


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
