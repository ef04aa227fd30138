"""The ``pmivec`` command-line entry point.

Exit codes: 0 on success, 1 on a runtime error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence

from pydantic import ValidationError

from pmivec import __version__
from pmivec.cli import commands
from pmivec.cli.settings import SettingsResolver
from pmivec.eval.datasets import SIMILARITY_SUBSETS
from pmivec.utils.exceptions import PmivecError, UsageError

logger = logging.getLogger("pmivec")

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2

# model fields whose flag is not simply --field-name
FIELD_FLAGS = {
    "d": "--dim",
    "learning_rate": "--lr",
    "k": "--negatives",
    "negative_target": "--neg-target",
    "parallel_mode": "--mode",
    "context_word": "--context-word",
}

Handler = Callable[[argparse.Namespace, SettingsResolver], None]


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with one options object per subcommand")
    common.add_argument(
        "--log-level",
        default="INFO",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="logging level (default INFO)",
    )
    common.add_argument("--threads", type=int, help="worker threads (default 1, deterministic)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="pmivec", description="Word vectors regressed onto PMI statistics, with geometric diagnostics."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("vocab", parents=[common], help="build a vocabulary file")
    p.add_argument("corpus")
    p.add_argument("--min-count", type=int)
    p.add_argument("--max-tokens", type=int)
    p.add_argument("--out", help="output directory")
    p.set_defaults(handler=commands.cmd_vocab)

    p = sub.add_parser("cooccur", parents=[common], help="count co-occurrences and compute PMI")
    p.add_argument("corpus")
    p.add_argument("--vocab", help="existing vocabulary file (default: build from the corpus)")
    p.add_argument("--min-count", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--subsample-t", type=float)
    p.add_argument("--no-subsample", action="store_true")
    p.add_argument("--seed", type=int)
    p.add_argument("--max-tokens", type=int)
    p.add_argument("--tsv", action="store_true", help="also write pmi.tsv")
    p.add_argument("--out", help="output directory")
    p.set_defaults(handler=commands.cmd_cooccur)

    p = sub.add_parser("train", parents=[common], help="fit target and context vectors")
    p.add_argument("pmi", help="pmi.bin from cooccur")
    p.add_argument("--vocab", help="vocabulary file (default: vocab.txt next to the PMI file)")
    p.add_argument("--stats", help="count file for count weighting (default: stats.bin next to the PMI file)")
    p.add_argument("--variant", choices=["D", "L", "P", "shifted"])
    p.add_argument("--dim", type=int)
    p.add_argument("--epochs", type=int)
    p.add_argument("--lr", type=float)
    p.add_argument("--optimizer", choices=["adagrad", "sgd"])
    p.add_argument("--alpha1", type=float)
    p.add_argument("--alpha2", type=float)
    p.add_argument("-k", "--negatives", type=int)
    p.add_argument("--shift", type=float)
    p.add_argument("--neg-target", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--mode", choices=["deterministic", "sharded"])
    p.add_argument("--weighting", choices=["uniform", "count"])
    p.add_argument("--batch-size", type=int, help="positives per batched update (default 1, per-pair)")
    p.add_argument("--out-dir", help="output directory")
    p.set_defaults(handler=commands.cmd_train)

    p = sub.add_parser("eval", parents=[common], help="score vectors on similarity or analogy data")
    p.add_argument("embeddings", help="train output directory or a word2vec text file")
    p.add_argument("--vectors", choices=["W", "C", "A"])
    p.add_argument("--task", choices=["similarity", "analogy"])
    p.add_argument("--dataset")
    p.add_argument("--subset", choices=list(SIMILARITY_SUBSETS))
    p.add_argument("--format", choices=["tsv", "wordsim353"])
    p.add_argument("--method", choices=["norm", "cosine"])
    p.add_argument("--out", help="JSON report path")
    p.set_defaults(handler=commands.cmd_eval)

    p = sub.add_parser("geometry", parents=[common], help="angle, length and identity diagnostics")
    p.add_argument("embeddings", help="train output directory")
    p.add_argument("--pmi")
    p.add_argument("--stats", help="count file; adds probability identity residuals")
    p.add_argument("--pairs", type=int, default=500, help="sampled pairs for the pairwise identities")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output directory")
    p.set_defaults(handler=commands.cmd_geometry)

    p = sub.add_parser("contours", parents=[common], help="project vectors around one context word")
    p.add_argument("embeddings", help="train output directory")
    p.add_argument("--stats")
    p.add_argument("--vocab", help="vocabulary file (default: vocab.txt next to the count file)")
    p.add_argument("--context-word")
    p.add_argument("--kind", choices=["context_given_target", "target_given_context"])
    p.add_argument("--centers", help="comma-separated log-probability bucket centres")
    p.add_argument("--half-width", type=float)
    p.add_argument("--plot", action="store_true", help="also render contours.png")
    p.add_argument("--out", help="output directory")
    p.set_defaults(handler=commands.cmd_contours)

    return parser


def _describe(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        field = ".".join(str(loc) for loc in item["loc"])
        flag = FIELD_FLAGS.get(field, "--" + field.replace("_", "-"))
        parts.append(f"{flag}: {item['msg']}")
    return "; ".join(parts)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE

    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    handler: Handler = args.handler
    try:
        settings = SettingsResolver(args.config)
        handler(args, settings)
    except UsageError as e:
        print(f"pmivec {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as e:
        print(f"pmivec {args.command}: error: {_describe(e)}", file=sys.stderr)
        return EXIT_USAGE
    except (PmivecError, OSError, ValueError, IndexError) as e:
        logger.debug("Command failed", exc_info=True)
        print(f"pmivec {args.command}: error: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
