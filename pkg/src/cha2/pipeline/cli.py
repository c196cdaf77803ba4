"""Command-line interface.

    cha2 ingest   --in data.csv --out corpus.bin [--config cfg.json]
    cha2 train    --config cfg.json --checkpoint model.cha2
    cha2 generate --config cfg.json --checkpoint model.cha2 --out report/
    cha2 report   --in report/

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from ..autoencoder import load_checkpoint, save_checkpoint
from ..errors import DataError, UsageError
from .config import PipelineConfig, load_config
from .corpus import load_corpus, save_corpus
from .ingest import ingest
from .report import emit_report, render_summary
from .run import run_generation, train_autoencoder

log = logging.getLogger("cha2")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with 2
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="cha2", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="CSV dataset -> binary corpus")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--config")

    p = sub.add_parser("train", help="train an autoencoder checkpoint")
    p.add_argument("--config", required=True)
    p.add_argument("--checkpoint", required=True)

    p = sub.add_parser("generate", help="sample the hull, decode, report")
    p.add_argument("--config", required=True)
    p.add_argument("--checkpoint",
                   help="reuse a trained model instead of retraining")
    p.add_argument("--out", dest="output", required=True)

    p = sub.add_parser("report", help="re-render summaries of a report dir")
    p.add_argument("--in", dest="input", required=True)
    return parser


def _load_data(cfg: PipelineConfig):
    if cfg.corpus:
        try:
            return load_corpus(cfg.corpus)
        except FileNotFoundError:
            if not cfg.dataset:
                raise
    if not cfg.dataset:
        raise UsageError("config must name a 'corpus' or a 'dataset'")
    return ingest(cfg.dataset, cfg)


def _cmd_ingest(args) -> int:
    cfg = load_config(args.config) if args.config else PipelineConfig()
    result = ingest(args.input, cfg)
    save_corpus(result, args.output)
    print(f"ingested {len(result.records)} molecules "
          f"({result.n_dropped_long} over the token limit, "
          f"{result.n_failed} failed rows) -> {args.output}")
    return 0


def _cmd_train(args) -> int:
    cfg = load_config(args.config)
    data = _load_data(cfg)
    model, trace, (train_r, val_r, hull_r) = train_autoencoder(data, cfg)
    save_checkpoint(model, data.alphabet, args.checkpoint)
    print(f"trained on {len(train_r)} molecules "
          f"({len(val_r)} validation, {len(hull_r)} hull candidates); "
          f"{len(trace.train_mse)} epochs, "
          f"final train MSE {trace.train_mse[-1]:.5f} "
          f"-> {args.checkpoint}")
    return 0


def _cmd_generate(args) -> int:
    cfg = load_config(args.config)
    data = _load_data(cfg)
    model = None
    if args.checkpoint:
        model, ck_alphabet = load_checkpoint(args.checkpoint)
        if ck_alphabet.symbols != data.alphabet.symbols:
            raise DataError(
                "checkpoint alphabet does not match the corpus alphabet"
            )
    report = run_generation(cfg, data=data, model=model)
    emit_report(report, args.output)
    s = report.summary
    print(f"sampled {s['n_sampled']} points -> {s['n_unique']} unique "
          f"molecules ({s['n_novel']} novel, "
          f"{s['n_decoded_empty']} empty decodes) -> {args.output}")
    return 0


def _cmd_report(args) -> int:
    print(json.dumps(render_summary(args.input), indent=2, sort_keys=True))
    return 0


_COMMANDS = {
    "ingest": _cmd_ingest,
    "train": _cmd_train,
    "generate": _cmd_generate,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(
            level=logging.DEBUG if args.verbose else logging.INFO,
            format="%(levelname)s %(name)s: %(message)s",
        )
        return _COMMANDS[args.command](args)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 1
    except (DataError, FileNotFoundError, OSError) as err:
        print(f"data error: {err}", file=sys.stderr)
        return 2
    except Exception as err:  # noqa: BLE001 - CLI boundary
        print(f"internal error: {type(err).__name__}: {err}",
              file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
