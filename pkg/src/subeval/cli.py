"""Command-line front end.

Subcommands: eval, align train, align apply, significance,
validate-lexical.  Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional, Sequence

from . import align as align_mod
from . import consistency as consistency_mod
from . import quality as quality_mod
from .conformity import (
    BreakDirection,
    BreakSelection,
    ConformityThresholds,
    LengthAggregation,
    conformity_report,
)
from .errors import DataError, FormatError, SubevalError
from .markers import load_marked_text
from .model import SubtitleDocument, pair_documents
from .report import EvaluationReport, report_to_json, report_to_tsv
from .srt import load_srt
from .textproc import Scheme, attach_tags, load_conllu, tokenize


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# Options accepted in a flat key-value config file for `eval`.
# name -> (type, default); booleans appear as flags on the CLI.
EVAL_OPTIONS: dict[str, tuple[type, Any]] = {
    "captions-hyp": (str, None),
    "captions-ref": (str, None),
    "subtitles-hyp": (str, None),
    "subtitles-ref": (str, None),
    "format": (str, "mustcinema"),
    "pos-captions": (str, None),
    "pos-subtitles": (str, None),
    "align-c2s": (str, None),
    "align-s2c": (str, None),
    "train-bitext": (str, None),
    "extra-bitext": (str, None),
    "max-cpl": (int, 42),
    "max-cps": (float, 21.0),
    "breaks": (str, "both"),
    "aggregation": (str, "line"),
    "seed": (int, 0),
    "out": (str, "json"),
    "out-file": (str, None),
    "diagnostics": (str, None),
    "system-name": (str, "system"),
    "caption-lang": (str, "en"),
    "subtitle-lang": (str, "en"),
    "iterations": (int, 5),
    "p0": (float, 0.08),
    "tension": (float, 4.0),
    "lenient": (bool, False),
    "skip-unaligned": (bool, False),
    "exclude-trailing-eob": (bool, False),
    "segmentation": (bool, False),
    "no-diagonal-prior": (bool, False),
}


def _parse_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read config file: {exc}")
    with fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" in line:
                key, _, value = line.partition("=")
            else:
                key, _, value = line.partition(" ")
            key, value = key.strip(), value.strip()
            if key not in EVAL_OPTIONS:
                raise FormatError(f"config line {lineno}: unknown key {key!r}")
            values[key] = value
    return values


def _coerce(key: str, raw: str) -> Any:
    typ, _ = EVAL_OPTIONS[key]
    if typ is bool:
        if raw.lower() in ("true", "1", "yes"):
            return True
        if raw.lower() in ("false", "0", "no"):
            return False
        raise FormatError(f"config key {key!r}: expected a boolean, got {raw!r}")
    try:
        return typ(raw)
    except ValueError:
        raise FormatError(f"config key {key!r}: bad value {raw!r}")


def _resolve_options(args: argparse.Namespace) -> dict[str, Any]:
    """Merge config file and CLI values; CLI wins, then config, then
    defaults."""
    config = _parse_config_file(args.config) if args.config else {}
    resolved: dict[str, Any] = {}
    for key, (_, default) in EVAL_OPTIONS.items():
        cli_value = getattr(args, key.replace("-", "_"))
        if cli_value is not None:
            resolved[key] = cli_value
        elif key in config:
            resolved[key] = _coerce(key, config[key])
        else:
            resolved[key] = default
    return resolved


def _add_eval_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key-value config file")
    for key, (typ, _) in EVAL_OPTIONS.items():
        flag = f"--{key}"
        if typ is bool:
            parser.add_argument(flag, action="store_const", const=True, default=None)
        else:
            parser.add_argument(flag, type=typ, default=None)


def _load_document(path: str, fmt: str, lenient: bool) -> SubtitleDocument:
    if fmt == "mustcinema":
        return load_marked_text(path, lenient=lenient)
    if fmt == "srt":
        return load_srt(path)
    raise UsageError(f"unknown format {fmt!r} (expected mustcinema or srt)")


def _tag_document(doc: SubtitleDocument, pos_path: str, lang: str):
    sentences = load_conllu(pos_path)
    if len(sentences) != len(doc.utterances):
        raise DataError(
            f"POS file {pos_path}: {len(sentences)} sentences for "
            f"{len(doc.utterances)} utterances"
        )
    tagged = []
    for utt, sentence in zip(doc.utterances, sentences):
        tokens = tokenize(utt.text(), Scheme.MT_DETACHED, lang=lang)
        tags = [upos for _, upos in sentence]
        tagged.append(attach_tags(tokens, tags, utt_id=utt.id))
    return tagged


def _bitext_pairs_from_docs(captions, subtitles, caption_lang, subtitle_lang):
    pairs = []
    for cap, sub in zip(captions.utterances, subtitles.utterances):
        src = tokenize(cap.text(), Scheme.MT_DETACHED, caption_lang).words()
        tgt = tokenize(sub.text(), Scheme.MT_DETACHED, subtitle_lang).words()
        pairs.append(align_mod.BitextPair(tuple(src), tuple(tgt)))
    return pairs


def _bitext_pairs_from_file(path, caption_lang, subtitle_lang):
    pairs = []
    for src_text, tgt_text in align_mod.load_bitext(path):
        src = tokenize(src_text, Scheme.MT_DETACHED, caption_lang).words()
        tgt = tokenize(tgt_text, Scheme.MT_DETACHED, subtitle_lang).words()
        pairs.append(align_mod.BitextPair(tuple(src), tuple(tgt)))
    return pairs


def _alignments_for_pairs(opts, system_pairs):
    """Load Pharaoh alignments or train both directions and align."""
    if opts["align-c2s"] and opts["align-s2c"]:
        c2s = align_mod.load_pharaoh(opts["align-c2s"])
        s2c = align_mod.load_pharaoh(opts["align-s2c"])
        if len(c2s) != len(system_pairs) or len(s2c) != len(system_pairs):
            raise DataError(
                f"alignment file length mismatch: {len(c2s)}/{len(s2c)} lines "
                f"for {len(system_pairs)} pairs"
            )
        return list(zip(c2s, s2c))
    if not opts["train-bitext"]:
        raise DataError(
            "consistency requires --align-c2s/--align-s2c or --train-bitext"
        )
    training = _bitext_pairs_from_file(
        opts["train-bitext"], opts["caption-lang"], opts["subtitle-lang"]
    )
    if opts["extra-bitext"]:
        training += _bitext_pairs_from_file(
            opts["extra-bitext"], opts["caption-lang"], opts["subtitle-lang"]
        )
    corpus_c2s = training + system_pairs
    corpus_s2c = [
        align_mod.BitextPair(p.target, p.source) for p in corpus_c2s
    ]
    kwargs = dict(
        iterations=opts["iterations"],
        use_diagonal_prior=not opts["no-diagonal-prior"],
        p0=opts["p0"],
        initial_tension=opts["tension"],
    )
    model_c2s = align_mod.train_aligner(corpus_c2s, **kwargs)
    model_s2c = align_mod.train_aligner(corpus_s2c, **kwargs)
    alignments = []
    for pair in system_pairs:
        rev = align_mod.BitextPair(pair.target, pair.source)
        alignments.append(
            (
                align_mod.viterbi_align(model_c2s, pair),
                align_mod.viterbi_align(model_s2c, rev),
            )
        )
    return alignments


def run_eval(args: argparse.Namespace) -> int:
    opts = _resolve_options(args)
    for key in ("captions-hyp", "captions-ref", "subtitles-hyp", "subtitles-ref"):
        if not opts[key]:
            raise UsageError(f"--{key} is required")
    if opts["segmentation"] and (not opts["pos-captions"] or not opts["pos-subtitles"]):
        raise DataError("segmentation requires POS input")
    fmt, lenient = opts["format"], opts["lenient"]
    captions_hyp = _load_document(opts["captions-hyp"], fmt, lenient)
    captions_ref = _load_document(opts["captions-ref"], fmt, lenient)
    subtitles_hyp = _load_document(opts["subtitles-hyp"], fmt, lenient)
    subtitles_ref = _load_document(opts["subtitles-ref"], fmt, lenient)

    wer_result = quality_mod.wer(captions_hyp.utterances, captions_ref.utterances)
    bleu_result = quality_mod.corpus_bleu(
        subtitles_hyp.utterances, subtitles_ref.utterances
    )

    thresholds = ConformityThresholds(max_cpl=opts["max-cpl"], max_cps=opts["max-cps"])
    aggregation = LengthAggregation(opts["aggregation"])
    try:
        breaks = BreakSelection(opts["breaks"])
    except ValueError:
        raise UsageError(f"--breaks must be eol, eob or both, got {opts['breaks']!r}")
    include_trailing = not opts["exclude-trailing-eob"]
    tagged_captions = (
        _tag_document(captions_hyp, opts["pos-captions"], opts["caption-lang"])
        if opts["pos-captions"]
        else None
    )
    tagged_subtitles = (
        _tag_document(subtitles_hyp, opts["pos-subtitles"], opts["subtitle-lang"])
        if opts["pos-subtitles"]
        else None
    )
    conf_captions = conformity_report(
        captions_hyp,
        thresholds,
        aggregation,
        tagged_captions,
        include_trailing_eob=include_trailing,
        breaks=breaks,
    )
    conf_subtitles = conformity_report(
        subtitles_hyp,
        thresholds,
        aggregation,
        tagged_subtitles,
        include_trailing_eob=include_trailing,
        breaks=breaks,
    )

    pairs = pair_documents(captions_hyp, subtitles_hyp)
    system_bitext = _bitext_pairs_from_docs(
        captions_hyp, subtitles_hyp, opts["caption-lang"], opts["subtitle-lang"]
    )
    alignments = _alignments_for_pairs(opts, system_bitext)
    cons = consistency_mod.consistency_report(
        pairs,
        alignments,
        caption_lang=opts["caption-lang"],
        subtitle_lang=opts["subtitle-lang"],
        skip_unaligned=opts["skip-unaligned"],
    )

    report = EvaluationReport(
        system_name=opts["system-name"],
        wer=wer_result.wer,
        bleu=bleu_result.score,
        length_captions=conf_captions.length_rate,
        length_subtitles=conf_subtitles.length_rate,
        reading_speed_captions=conf_captions.reading_speed_rate,
        reading_speed_subtitles=conf_subtitles.reading_speed_rate,
        segmentation_captions=conf_captions.segmentation_rate,
        segmentation_subtitles=conf_subtitles.segmentation_rate,
        structural=cons.structural,
        lexical=cons.lexical,
        line_count=cons.line_count,
        char_ratio=cons.char_ratio,
        config_echo={k: v for k, v in sorted(opts.items())},
    )

    if opts["diagnostics"]:
        with open(opts["diagnostics"], "w", encoding="utf-8") as fh:
            for pair, result in zip(pairs, cons.per_pair):
                fh.write(
                    json.dumps(
                        {
                            "id": pair.id,
                            "blocks_c": len(pair.caption.blocks),
                            "blocks_s": len(pair.subtitle.blocks),
                            "lex_c2s": result.lex_c2s,
                            "lex_s2c": result.lex_s2c,
                            "lex_pair": result.lex_pair,
                            "inconsistent_tokens": [
                                list(t) for t in result.inconsistent_tokens
                            ],
                        },
                        sort_keys=True,
                        ensure_ascii=False,
                    )
                    + "\n"
                )

    chunks = []
    if opts["out"] in ("json", "both"):
        chunks.append(report_to_json(report))
    if opts["out"] in ("tsv", "both"):
        chunks.append(report_to_tsv(report))
    if opts["out"] not in ("json", "tsv", "both"):
        raise UsageError(f"--out must be json, tsv or both, got {opts['out']!r}")
    output = "".join(chunks)
    if opts["out-file"]:
        with open(opts["out-file"], "w", encoding="utf-8") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)
    return 0


def run_align_train(args: argparse.Namespace) -> int:
    training = _bitext_pairs_from_file(args.train_bitext, args.source_lang, args.target_lang)
    if args.extra_bitext:
        training += _bitext_pairs_from_file(
            args.extra_bitext, args.source_lang, args.target_lang
        )
    model = align_mod.train_aligner(
        training,
        iterations=args.iterations,
        use_diagonal_prior=not args.no_diagonal_prior,
        p0=args.p0,
        initial_tension=args.tension,
    )
    align_mod.save_model(model, args.model_out)
    return 0


def run_align_apply(args: argparse.Namespace) -> int:
    try:
        model = align_mod.load_model(args.model)
    except OSError as exc:
        raise DataError(f"cannot load model: {exc}")
    pairs = _bitext_pairs_from_file(args.bitext, args.source_lang, args.target_lang)
    lines = [
        align_mod.write_pharaoh(align_mod.viterbi_align(model, pair)) for pair in pairs
    ]
    output = "".join(line + "\n" for line in lines)
    if args.out_file:
        with open(args.out_file, "w", encoding="utf-8") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)
    return 0


def run_significance(args: argparse.Namespace) -> int:
    if args.resamples < 1:
        raise UsageError("--resamples must be a positive integer")
    hyp_a = _load_document(args.hyp_a, args.format, lenient=False)
    hyp_b = _load_document(args.hyp_b, args.format, lenient=False)
    ref = _load_document(args.ref, args.format, lenient=False)
    result = quality_mod.bootstrap_significance(
        hyp_a.utterances,
        hyp_b.utterances,
        ref.utterances,
        metric=args.metric,
        resamples=args.resamples,
        seed=args.seed,
    )
    sys.stdout.write(
        json.dumps(
            {
                "p_value": result.p_value,
                "delta_mean": result.delta_mean,
                "resamples": result.resamples,
                "seed": result.seed,
                "better_system": result.better_system,
            },
            sort_keys=True,
        )
        + "\n"
    )
    return 0


def _read_floats(path: str) -> list[float]:
    with open(path, encoding="utf-8") as fh:
        return [float(line) for line in fh if line.strip()]


def _read_bools(path: str) -> list[bool]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip().lower()
            if not line:
                continue
            if line in ("1", "true", "yes", "consistent"):
                out.append(True)
            elif line in ("0", "false", "no", "inconsistent"):
                out.append(False)
            else:
                raise FormatError(f"{path} line {lineno}: expected a boolean, got {line!r}")
    return out


def run_validate_lexical(args: argparse.Namespace) -> int:
    mae, agreement = consistency_mod.validate_lexical_metric(
        _read_floats(args.auto_scores),
        _read_floats(args.manual_scores),
        _read_bools(args.auto_judgements),
        _read_bools(args.manual_judgements),
    )
    sys.stdout.write(
        json.dumps({"mae": mae, "agreement": agreement}, sort_keys=True) + "\n"
    )
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="subeval", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    eval_parser = sub.add_parser("eval", help="end-to-end evaluation report")
    _add_eval_arguments(eval_parser)
    eval_parser.set_defaults(func=run_eval)

    align_parser = sub.add_parser("align", help="word-alignment model")
    align_sub = align_parser.add_subparsers(dest="align_command", required=True)

    train = align_sub.add_parser("train")
    train.add_argument("--train-bitext", required=True)
    train.add_argument("--extra-bitext")
    train.add_argument("--model-out", required=True)
    train.add_argument("--iterations", type=int, default=5)
    train.add_argument("--p0", type=float, default=0.08)
    train.add_argument("--tension", type=float, default=4.0)
    train.add_argument("--no-diagonal-prior", action="store_true")
    train.add_argument("--source-lang", default="en")
    train.add_argument("--target-lang", default="en")
    train.set_defaults(func=run_align_train)

    apply_parser = align_sub.add_parser("apply")
    apply_parser.add_argument("--model", required=True)
    apply_parser.add_argument("--bitext", required=True)
    apply_parser.add_argument("--out-file")
    apply_parser.add_argument("--source-lang", default="en")
    apply_parser.add_argument("--target-lang", default="en")
    apply_parser.set_defaults(func=run_align_apply)

    sig = sub.add_parser("significance", help="pairwise bootstrap resampling")
    sig.add_argument("--metric", choices=["bleu", "wer"], required=True)
    sig.add_argument("--resamples", type=int, default=1000)
    sig.add_argument("--seed", type=int, default=0)
    sig.add_argument("--hyp-a", required=True)
    sig.add_argument("--hyp-b", required=True)
    sig.add_argument("--ref", required=True)
    sig.add_argument("--format", default="mustcinema")
    sig.set_defaults(func=run_significance)

    validate = sub.add_parser("validate-lexical", help="metric vs manual annotation")
    validate.add_argument("--auto-scores", required=True)
    validate.add_argument("--manual-scores", required=True)
    validate.add_argument("--auto-judgements", required=True)
    validate.add_argument("--manual-judgements", required=True)
    validate.set_defaults(func=run_validate_lexical)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SubevalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
