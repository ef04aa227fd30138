"""Subcommand handlers. Each validates its options, runs its stage and writes a manifest."""

from __future__ import annotations

import argparse
import logging
from pathlib import Path

import numpy as np

from pmivec.cli.manifest import MANIFEST_NAME, RunManifest
from pmivec.cli.settings import SettingsResolver
from pmivec.contours import (
    ContourConfig,
    bucket_by_logprob,
    contour_summary,
    export_contour_csv,
    project_relative,
    render_contours,
)
from pmivec.cooccur import (
    build_pmi_matrix,
    count_stream,
    read_pmi,
    read_stats,
    self_pmi_positive_fraction,
    write_pmi,
    write_pmi_tsv,
    write_stats,
)
from pmivec.corpus import CorpusConfig, build_vocab, read_corpus, read_vocab, subsample, write_vocab
from pmivec.eval import (
    EvalConfig,
    EvalReport,
    WordVectors,
    evaluate_analogy,
    evaluate_similarity,
    load_analogy,
    load_similarity,
)
from pmivec.geometry import (
    IdentityReport,
    geometry_report,
    log_probability_residuals,
    quasi_sphere_check,
    write_geometry_csv,
    write_geometry_json,
)
from pmivec.lifecycle import track_stage
from pmivec.trainer import EmbeddingPair, TrainConfig, load_word2vec, save_word2vec, train, write_loss_trace
from pmivec.utils.exceptions import ArtifactFormatError, UsageError

logger = logging.getLogger(__name__)

VOCAB_FILE = "vocab.txt"
STATS_FILE = "stats.bin"
PMI_FILE = "pmi.bin"


def _require_file(path: str | Path | None, flag: str) -> Path:
    if path is None:
        raise UsageError("is required", flag=flag)
    path = Path(path)
    if not path.is_file():
        raise UsageError(f"no such file: {path}", flag=flag)
    return path


def _out_dir(settings: SettingsResolver, command: str, flag_value: str | None) -> Path:
    out = settings.value(command, "out", flag_value)
    if out is None:
        raise UsageError("is required", flag="--out")
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _sibling(path: Path, name: str, given: str | None, flag: str) -> Path:
    """An explicitly given companion file, else the one named name next to path."""
    return _require_file(given if given is not None else path.parent / name, flag)


def _load_pair(embeddings: Path) -> tuple[list[str], EmbeddingPair]:
    """Read W.txt and C.txt from a training output directory."""
    words, W = load_word2vec(_require_file(embeddings / "W.txt", "embeddings"))
    context_words, C = load_word2vec(_require_file(embeddings / "C.txt", "embeddings"))
    if words != context_words:
        raise ArtifactFormatError(f"{embeddings}: W.txt and C.txt list different words")
    return words, EmbeddingPair(W=W, C=C)


def _check_alignment(words: list[str], n: int, what: str) -> None:
    if len(words) != n:
        raise ArtifactFormatError(f"vocabulary has {len(words)} words but {what} has {n}")


def cmd_vocab(args: argparse.Namespace, settings: SettingsResolver) -> None:
    cfg = settings.resolve(
        CorpusConfig, "vocab", {"min_count": args.min_count, "max_tokens": args.max_tokens}
    )
    corpus = _require_file(args.corpus, "corpus")
    out = _out_dir(settings, "vocab", args.out)
    manifest = RunManifest.start("vocab", cfg)
    manifest.add_input("corpus", corpus)

    with track_stage("vocab"):
        vocab = build_vocab(read_corpus(corpus, cfg.max_tokens), cfg.min_count)
        write_vocab(vocab, out / VOCAB_FILE)

    manifest.add_output(VOCAB_FILE, out / VOCAB_FILE)
    manifest.finish(out / MANIFEST_NAME)


def cmd_cooccur(args: argparse.Namespace, settings: SettingsResolver) -> None:
    cfg = settings.resolve(
        CorpusConfig,
        "cooccur",
        {
            "min_count": args.min_count,
            "window": args.window,
            "subsample_t": args.subsample_t,
            "seed": args.seed,
            "max_tokens": args.max_tokens,
            "threads": args.threads,
        },
    )
    if args.no_subsample:
        cfg = cfg.model_copy(update={"subsample_t": None})
    corpus = _require_file(args.corpus, "corpus")
    vocab_path = _require_file(args.vocab, "--vocab") if args.vocab is not None else None
    out = _out_dir(settings, "cooccur", args.out)

    manifest = RunManifest.start("cooccur", cfg)
    manifest.seeds["subsample"] = cfg.seed
    if vocab_path is not None:
        manifest.add_input("vocab", vocab_path)
    manifest.add_input("corpus", corpus)

    with track_stage("cooccur", window=cfg.window):
        tokens = read_corpus(corpus, cfg.max_tokens)
        vocab = read_vocab(vocab_path) if vocab_path is not None else build_vocab(tokens, cfg.min_count)
        if cfg.subsample_t is None:
            stream = vocab.encode(tokens)
        else:
            stream = subsample(tokens, vocab, cfg.subsample_t, cfg.seed)
        del tokens
        stats = count_stream(stream, cfg.window, len(vocab), cfg.threads)
        symmetric = stats.is_symmetric()
        if not symmetric:
            logger.warning("Co-occurrence counts are not symmetric; PMI(i, j) and PMI(j, i) will differ")
        pmi = build_pmi_matrix(stats)
        self_pmi_positive_fraction(pmi)

        write_vocab(vocab, out / VOCAB_FILE)
        write_stats(stats, out / STATS_FILE)
        write_pmi(pmi, out / PMI_FILE)
        if args.tsv:
            write_pmi_tsv(pmi, out / "pmi.tsv")

    manifest.config["symmetric_counts"] = symmetric
    for name in (VOCAB_FILE, STATS_FILE, PMI_FILE) + (("pmi.tsv",) if args.tsv else ()):
        manifest.add_output(name, out / name)
    manifest.finish(out / MANIFEST_NAME)


def cmd_train(args: argparse.Namespace, settings: SettingsResolver) -> None:
    cfg = settings.resolve(
        TrainConfig,
        "train",
        {
            "variant": args.variant,
            "d": args.dim,
            "epochs": args.epochs,
            "learning_rate": args.lr,
            "optimizer": args.optimizer,
            "alpha1": args.alpha1,
            "alpha2": args.alpha2,
            "k": args.negatives,
            "shift": args.shift,
            "negative_target": args.neg_target,
            "seed": args.seed,
            "parallel_mode": args.mode,
            "threads": args.threads,
            "weighting": args.weighting,
            "batch_size": args.batch_size,
        },
    )
    pmi_path = _require_file(args.pmi, "pmi")
    vocab_path = _sibling(pmi_path, VOCAB_FILE, args.vocab, "--vocab")
    stats_path = _sibling(pmi_path, STATS_FILE, args.stats, "--stats") if cfg.weighting == "count" else None
    out = _out_dir(settings, "train", args.out_dir)

    manifest = RunManifest.start("train", cfg)
    manifest.seeds["train"] = cfg.seed
    manifest.add_input(PMI_FILE, pmi_path)
    manifest.add_input(VOCAB_FILE, vocab_path)

    pmi = read_pmi(pmi_path)
    vocab = read_vocab(vocab_path)
    _check_alignment(list(vocab.words), pmi.n, "the PMI matrix")
    weights = None
    if stats_path is not None:
        manifest.add_input(STATS_FILE, stats_path)
        stats = read_stats(stats_path)
        if not np.array_equal(stats.keys, pmi.keys):
            raise ArtifactFormatError(f"{stats_path}: pairs do not match {pmi_path}")
        weights = stats.counts.astype(np.float64)

    with track_stage("train", variant=cfg.variant, d=cfg.d, epochs=cfg.epochs):
        result = train(pmi, cfg, weights)

    pair = result.embeddings
    outputs = {"W.txt": pair.vectors("W"), "C.txt": pair.vectors("C"), "A.txt": pair.vectors("A")}
    for name, vectors in outputs.items():
        save_word2vec(vectors, vocab.words, out / name)
        manifest.add_output(name, out / name)
    write_loss_trace(result.trace, out / "loss.csv")
    manifest.add_output("loss.csv", out / "loss.csv")
    manifest.config["resolved_negative_target"] = result.negative_target
    manifest.finish(out / MANIFEST_NAME)


def _vectors_file(embeddings: Path, kind: str) -> Path:
    if embeddings.is_dir():
        return _require_file(embeddings / f"{kind}.txt", "embeddings")
    return _require_file(embeddings, "embeddings")


def cmd_eval(args: argparse.Namespace, settings: SettingsResolver) -> None:
    cfg = settings.resolve(
        EvalConfig,
        "eval",
        {
            "task": args.task,
            "vectors": args.vectors,
            "subset": args.subset,
            "format": args.format,
            "method": args.method,
        },
    )
    dataset_path = _require_file(settings.value("eval", "dataset", args.dataset), "--dataset")
    vectors_path = _vectors_file(Path(args.embeddings), cfg.vectors)
    out = settings.value("eval", "out", args.out)
    if out is None:
        raise UsageError("is required", flag="--out")
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)

    manifest = RunManifest.start("eval", cfg)
    manifest.add_input("vectors", vectors_path)
    manifest.add_input("dataset", dataset_path)

    vectors = WordVectors.from_word2vec(vectors_path)
    with track_stage("eval", task=cfg.task):
        if cfg.task == "similarity":
            dataset = load_similarity(dataset_path, cfg.format, cfg.subset)
            report = EvalReport.for_similarity(
                dataset.name, cfg.subset, cfg.vectors, evaluate_similarity(vectors, dataset)
            )
        else:
            analogies = load_analogy(dataset_path)
            result = evaluate_analogy(
                vectors, analogies, cfg.method, cfg.batch_size, threads=args.threads or 1
            )
            report = EvalReport.for_analogy(analogies.name, cfg.vectors, cfg.method, result)

    report.write(out)
    manifest.add_output(out.name, out)
    manifest.finish(out.with_name(out.stem + "." + MANIFEST_NAME))
    print(f"{report.dataset} {report.task} ({report.vectors_used}): {report.score:.4f} "
          f"[{report.n_scored} scored, {report.n_skipped} skipped]")


def cmd_geometry(args: argparse.Namespace, settings: SettingsResolver) -> None:
    embeddings = Path(args.embeddings)
    pmi_path = _require_file(settings.value("geometry", "pmi", args.pmi), "--pmi")
    stats_path = _require_file(args.stats, "--stats") if args.stats is not None else None
    out = _out_dir(settings, "geometry", args.out)

    words, pair = _load_pair(embeddings)
    manifest = RunManifest.start(
        "geometry", {"pairs": args.pairs, "seed": args.seed, "identities": stats_path is not None}
    )
    manifest.seeds["pairs"] = args.seed
    manifest.add_input("W.txt", embeddings / "W.txt")
    manifest.add_input("C.txt", embeddings / "C.txt")
    manifest.add_input(PMI_FILE, pmi_path)

    pmi = read_pmi(pmi_path)
    _check_alignment(words, pmi.n, "the PMI matrix")

    with track_stage("geometry", n=pair.n):
        report = geometry_report(pair, pmi, words)
        write_geometry_json(report, out / "geometry.json")
        write_geometry_csv(report, out / "geometry.csv")
        outputs = ["geometry.json", "geometry.csv"]

        if stats_path is not None:
            manifest.add_input(STATS_FILE, stats_path)
            stats = read_stats(stats_path)
            _check_alignment(words, stats.n, "the count table")
            logs = log_probability_residuals(pair, stats, n_pairs=args.pairs, seed=args.seed)
            sphere = quasi_sphere_check(pair, stats, pairs=logs.pairs)
            identities = IdentityReport.build(logs, sphere)
            (out / "identities.json").write_text(identities.model_dump_json(indent=2), encoding="utf-8")
            outputs.append("identities.json")

    for name in outputs:
        manifest.add_output(name, out / name)
    manifest.finish(out / MANIFEST_NAME)
    s = report.summary
    print(f"mean internal angle {s.mean_internal_angle:.4f}, "
          f"factorization MSE {s.factorization_mse:.3e}, clamped {s.clamped_min_lengths}")


def cmd_contours(args: argparse.Namespace, settings: SettingsResolver) -> None:
    centers = None
    if args.centers is not None:
        try:
            centers = tuple(float(c) for c in args.centers.split(",") if c.strip())
        except ValueError as e:
            raise UsageError(f"expected comma-separated numbers, got {args.centers!r}", flag="--centers") from e
    cfg = settings.resolve(
        ContourConfig,
        "contours",
        {
            "context_word": args.context_word,
            "kind": args.kind,
            "centers": centers,
            "half_width": args.half_width,
            "plot": args.plot or None,
        },
    )
    embeddings = Path(args.embeddings)
    stats_path = _require_file(settings.value("contours", "stats", args.stats), "--stats")
    vocab_path = _sibling(stats_path, VOCAB_FILE, args.vocab, "--vocab")
    out = _out_dir(settings, "contours", args.out)

    words, pair = _load_pair(embeddings)
    manifest = RunManifest.start("contours", cfg)
    manifest.add_input("W.txt", embeddings / "W.txt")
    manifest.add_input("C.txt", embeddings / "C.txt")
    manifest.add_input(STATS_FILE, stats_path)

    vocab = read_vocab(vocab_path)
    if list(vocab.words) != words:
        raise ArtifactFormatError(f"{vocab_path}: words differ from {embeddings}")
    if cfg.context_word not in vocab:
        raise UsageError(f"{cfg.context_word!r} is not in the vocabulary", flag="--context-word")
    j = vocab.id_of(cfg.context_word)
    stats = read_stats(stats_path)
    _check_alignment(words, stats.n, "the count table")

    with track_stage("contours", kind=cfg.kind, context=cfg.context_word):
        projection = project_relative(pair, j)
        buckets = bucket_by_logprob(stats, cfg.kind, j, cfg.centers, cfg.half_width)
        export_contour_csv(projection, buckets, words, out / "contours.csv")
        manifest.add_output("contours.csv", out / "contours.csv")
        if cfg.plot and render_contours(
            projection, buckets, out / "contours.png", title=f"{cfg.kind} | {cfg.context_word}"
        ):
            manifest.add_output("contours.png", out / "contours.png")

    summary = contour_summary(projection, buckets)
    manifest.config["summary"] = {
        "monotonic": summary.monotonic,
        "within_spread": summary.within_spread,
        "between_spread": summary.between_spread,
        "bucket_sizes": [b.count for b in summary.buckets],
    }
    manifest.finish(out / MANIFEST_NAME)
    for b in summary.buckets:
        print(f"bucket {b.center:g}: {b.count} words, mean x {b.mean_x:.4f}, std x {b.std_x:.4f}")

