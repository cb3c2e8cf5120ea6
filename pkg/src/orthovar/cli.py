"""Command-line interface.

Exit status: 0 on success, 2 for usage or validation errors, 1 for
runtime failures.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from pathlib import Path

from . import __version__
from .align import AlignmentModel, lexicon_pairs, load_merge_table, train_aligner
from .augment import (AugmentError, augment_corpus, count_new_variants, emit_augmented,
                      emit_parallel_target, emit_provenance, emit_union, load_corpus)
from .g2p import TranscriptionError, load_lexicon
from .metric import (calibrate, calibration_accuracy, best_threshold, levenshtein,
                     load_calibration, pwld)
from .phonology import load_inventory
from .pipeline import Config, ConfigError, Pipeline, load_config, save_weight_overrides

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _common_parser():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("configuration")
    g.add_argument("--config", type=Path, help="TOML config file (flags override it)")
    for name in ("inventory", "lexicon", "fallback", "merge-table", "rules", "blocklist",
                 "weight-overrides", "aligner-model"):
        g.add_argument(f"--{name}", type=Path, metavar="FILE")
    g.add_argument("--no-blocklist", action="store_true", help="do not filter real English words")
    g.add_argument("--indel-cost", type=float)
    g.add_argument("--epsilon", type=float)
    g.add_argument("--max-subsets", type=int)
    g.add_argument("--iterations", type=int)
    g.add_argument("--skip-cost", type=float)
    g.add_argument("--smoothing", type=float)
    g.add_argument("--seed", type=int)
    g.add_argument("--ascii", action="store_true", help="print phonemes as ASCII aliases")
    return p


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="orthovar", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transcribe", parents=[common], help="word → phonemes")
    p.add_argument("words", nargs="*")
    p.add_argument("--file", type=Path, help="one word per line")

    p = sub.add_parser("variants", parents=[common], help="ranked spelling variants of a word")
    p.add_argument("word")

    p = sub.add_parser("dist", parents=[common], help="LD and PWLD between a word and a variant")
    p.add_argument("word")
    p.add_argument("variant")

    p = sub.add_parser("align-train", parents=[common], help="train the character-phoneme aligner")
    p.add_argument("--out", type=Path, default=Path("aligner_model.tsv"))

    p = sub.add_parser("align", parents=[common], help="align a word to its phonemes")
    p.add_argument("words", nargs="+")
    p.add_argument("--model", type=Path, help="model written by align-train")

    p = sub.add_parser("calibrate", parents=[common], help="fit substitution costs to good/bad labels")
    p.add_argument("--labels", type=Path, required=True)
    p.add_argument("--out", type=Path, help="write adjusted costs as a weight-overrides file")

    p = sub.add_parser("augment", parents=[common], help="write a variation-augmented corpus")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--parallel-target", type=Path, help="translation side of a parallel corpus")
    p.add_argument("--target-out", type=Path, help="where to write the matching target side")
    kgroup = p.add_mutually_exclusive_group(required=True)
    kgroup.add_argument("--k", type=int)
    kgroup.add_argument("--k-frac", type=float)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--emit-union", action="store_true", help="write D followed by D'")
    p.add_argument("--provenance", type=Path, help="JSON lines, one record per augmented sentence")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("stats", parents=[common], help="count variant types absent from a reference")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--against", type=Path, required=True)
    return parser


def make_config(args) -> Config:
    config = load_config(args.config) if args.config else Config()
    changes = {
        "inventory": args.inventory, "lexicon": args.lexicon, "fallback": args.fallback,
        "merge_table": args.merge_table, "rules": args.rules, "blocklist": args.blocklist,
        "weight_overrides": args.weight_overrides, "aligner_model": args.aligner_model,
        "indel_cost": args.indel_cost, "epsilon": args.epsilon, "max_subsets": args.max_subsets,
        "iterations": args.iterations, "skip_cost": args.skip_cost, "smoothing": args.smoothing,
        "seed": args.seed,
    }
    config = config.replace(**changes)
    if args.no_blocklist:
        config = dataclasses.replace(config, blocklist=None)
    return config


def _phones(phonemes, inventory, ascii_):
    if ascii_:
        return " ".join(inventory.to_ascii(p) for p in phonemes)
    return " ".join(phonemes)


def cmd_transcribe(args, out):
    words = list(args.words)
    if args.file:
        words += [w.strip() for w in args.file.read_text(encoding="utf-8").splitlines() if w.strip()]
    if not words:
        raise UsageError("no words given")
    pipe = Pipeline(make_config(args), aligner=_NO_ALIGNER)
    status = EXIT_OK
    for w in words:
        try:
            t = pipe.transcribe(w)
        except TranscriptionError as e:
            print(f"{w}\tERROR\t{e}", file=out)
            print(f"error: {e}", file=sys.stderr)
            status = EXIT_USAGE
            continue
        print(f"{t.word}\t{_phones(t.phonemes, pipe.inventory, args.ascii)}\t{t.provenance}", file=out)
    return status


def cmd_variants(args, out):
    pipe = Pipeline(make_config(args))
    dist = pipe.distribution(args.word)
    if dist is None:
        return EXIT_OK
    seed = args.word.lower()
    rows = sorted(dist.candidates, key=lambda c: -c.probability)
    for c in rows:
        print(f"{c.surface}\t{c.rules_label}\t{levenshtein(seed, c.surface)}\t"
              f"{c.distance:.4f}\t{c.probability:.10f}", file=out)
    return EXIT_OK


def cmd_dist(args, out):
    pipe = Pipeline(make_config(args), aligner=_NO_ALIGNER)
    d = pwld(pipe.phonemes(args.word), pipe.phonemes(args.variant), pipe.weights)
    print(f"{args.word}\t{args.variant}\t{levenshtein(args.word.lower(), args.variant.lower())}\t{d:.4f}",
          file=out)
    return EXIT_OK


def cmd_align_train(args, out):
    config = make_config(args)
    inventory = load_inventory(config.inventory)
    lexicon = load_lexicon(config.lexicon, inventory)
    table = load_merge_table(config.merge_table)
    model = train_aligner(lexicon_pairs(lexicon, table), config.iterations, config.smoothing)
    model.save(args.out)
    for i, ll in enumerate(model.log_likelihoods):
        print(f"iteration {i}\tlog-likelihood {ll:.6f}", file=sys.stderr)
    print(f"wrote {args.out} ({len(model.translation_probs)} entries, "
          f"{model.iterations_trained} iterations)", file=out)
    return EXIT_OK


def cmd_align(args, out):
    config = make_config(args)
    model = AlignmentModel.load(args.model, config.smoothing) if args.model else None
    pipe = Pipeline(config, aligner=model)
    for w in args.words:
        a = pipe.aligned(w)
        links = []
        for i, g in enumerate(a.grapheme_units):
            ph = a.linked_phonemes(i)
            shown = _phones(ph, pipe.inventory, args.ascii) if ph else "-"
            links.append(f"{g}→{shown}")
        print(f"{w}\t{' '.join(links)}", file=out)
    return EXIT_OK


def cmd_calibrate(args, out):
    pipe = Pipeline(make_config(args), aligner=_NO_ALIGNER)
    data = load_calibration(args.labels)
    tr = pipe.phonemes
    base_tau, base_acc = best_threshold(
        [pwld(tr(s), tr(v), pipe.weights) for s, v, _ in data.items], data.labels)
    weights, tau = calibrate(pipe.weights, data, tr)
    acc = calibration_accuracy(weights, tau, data, tr)
    print(f"baseline\taccuracy={base_acc:.4f}\tthreshold={base_tau:.4f}", file=out)
    print(f"calibrated\taccuracy={acc:.4f}\tthreshold={tau:.4f}", file=out)
    if args.out:
        save_weight_overrides(args.out, pipe.weights, weights)
        print(f"wrote {args.out}", file=out)
    return EXIT_OK


def cmd_augment(args, out):
    config = make_config(args)
    corpus = load_corpus(args.input)
    m = len(corpus)
    if args.k is not None:
        k = args.k
    else:
        if not 0 < args.k_frac <= 1:
            raise UsageError("--k-frac must lie in (0, 1]")
        k = max(1, math.floor(args.k_frac * m))
    if k < 1:
        raise UsageError("K must be ≥ 1")
    if k > m:
        raise UsageError(f"K = {k} exceeds corpus size m = {m}")
    target = None
    if args.parallel_target:
        target = load_corpus(args.parallel_target)
        if len(target) != m:
            raise UsageError(f"parallel target has {len(target)} lines, source has {m}")
    pipe = Pipeline(config)
    dp = augment_corpus(corpus, k, pipe, config.seed, workers=args.workers)
    if args.emit_union:
        emit_union(corpus, dp, args.out)
    else:
        emit_augmented(dp, args.out)
    if target is not None:
        tgt_out = args.target_out or args.out.with_name(args.out.name + ".target")
        emit_parallel_target(target, dp, tgt_out, union=args.emit_union)
    if args.provenance:
        emit_provenance(dp, args.provenance)
    subs = sum(len(r.substitutions) for r in dp.provenance)
    print(f"augmented {dp.k} of {m} sentences ({subs} substitutions) → {args.out}", file=out)
    return EXIT_OK


def cmd_stats(args, out):
    stats = count_new_variants(load_corpus(args.against), load_corpus(args.input))
    json.dump({"new_variant_count": stats.new_variant_count, "type_counts": stats.type_counts},
              out, ensure_ascii=False, sort_keys=True)
    out.write("\n")
    return EXIT_OK


# Transcription-only commands skip aligner training.
_NO_ALIGNER = AlignmentModel({})

COMMANDS = {
    "transcribe": cmd_transcribe, "variants": cmd_variants, "dist": cmd_dist,
    "align-train": cmd_align_train, "align": cmd_align, "calibrate": cmd_calibrate,
    "augment": cmd_augment, "stats": cmd_stats,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, ConfigError, TranscriptionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (AugmentError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
