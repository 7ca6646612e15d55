"""``compat`` command-line tool.

Exit codes: 0 success, 1 usage error, 2 data error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import persistence, pipeline
from .errors import DataError

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="compat", description="Recruit/manager compatibility prediction.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="generate a labelled synthetic pair dataset")
    g.add_argument("--n", type=int, default=300, help="population size (default 300)")
    g.add_argument("--seed", type=int, default=42)
    g.add_argument("--out", required=True, type=Path, help="output directory")
    g.add_argument("--profiles", type=Path, help="use this profiles CSV instead of sampling")

    t = sub.add_parser("train", help="train the network on a generated dataset")
    t.add_argument("--data", required=True, type=Path)
    t.add_argument("--config", type=Path, help="run config JSON (defaults apply for missing keys)")
    t.add_argument("--model-out", required=True, type=Path)
    t.add_argument("--curves-out", required=True, type=Path)
    t.add_argument("--verbose", action="store_true", help="print one line per epoch")

    e = sub.add_parser("evaluate", help="classification report for a trained model")
    e.add_argument("--model", required=True, type=Path)
    e.add_argument("--data", type=Path, help="dataset directory; scores its test partition")
    e.add_argument("--all", type=Path, dest="all_path", help="score every row of this pairs CSV")
    e.add_argument("--report-out", required=True, type=Path,
                   help="base path; .json and .txt reports are written")

    p = sub.add_parser("predict", help="compatibility of one recruit/manager pair")
    p.add_argument("--model", required=True, type=Path)
    p.add_argument("--recruit", required=True, help="six comma-separated scores")
    p.add_argument("--manager", required=True, help="six comma-separated scores")
    p.add_argument("--explain", action="store_true")
    return parser


def cmd_generate(args) -> int:
    pairs = pipeline.generate(args.n, args.seed, args.out, args.profiles)
    m = pairs.meta
    print(f"wrote {m['n']} profiles and {len(pairs)} pairs to {args.out}")
    print(f"cutoff: {m['cutoff']:.6f}  positive share: {m['positive_share']:.5f}")
    return EXIT_OK


def cmd_train(args) -> int:
    config = pipeline.RunConfig.load(args.config) if args.config else pipeline.RunConfig()

    def log(rec):
        print(f"epoch {rec.epoch:3d}  loss {rec.train_loss:.5f}  val_loss {rec.val_loss:.5f}  "
              f"acc {rec.train_accuracy:.4f}  val_acc {rec.val_accuracy:.4f}", flush=True)

    result = pipeline.train(args.data, config, log=log if args.verbose else None)
    persistence.write_files_atomic(
        pipeline.train_outputs(result, args.model_out, args.curves_out, args.data)
    )
    h = result.history
    print(f"stopped_epoch: {h.stopped_epoch}")
    print(f"best_epoch: {h.best_epoch}")
    print(f"best val_loss: {h.best_val_loss:.6f}")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    if args.data is None and args.all_path is None:
        raise UsageError("evaluate: need --data or --all")
    rep = pipeline.evaluate(args.model, args.data, args.all_path)
    base = args.report_out.with_suffix("") if args.report_out.suffix in (".json", ".txt") else args.report_out
    text = rep.to_text()
    persistence.write_files_atomic({
        base.with_name(base.name + ".json"): rep.to_json(),
        base.with_name(base.name + ".txt"): text,
    })
    print(text, end="")
    return EXIT_OK


def cmd_predict(args) -> int:
    recruit = pipeline.parse_scores(args.recruit, "recruit")
    manager = pipeline.parse_scores(args.manager, "manager")
    print(pipeline.predict(args.model, recruit, manager, args.explain), end="")
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "train": cmd_train,
    "evaluate": cmd_evaluate,
    "predict": cmd_predict,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DataError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
