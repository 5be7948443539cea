"""Command line interface.

Subcommands: segment, baseline, eval, kappa, agree, ttest, translate,
stats. Results go to stdout (or --output); diagnostics go to stderr.
Exit codes: 0 success, 1 usage error, 2 input parse error, 3
validation or alignment error. Identical invocations produce byte-
identical output.
"""

from __future__ import annotations

import argparse
import sys

from . import baselines, metrics, porting, rules, segmenter
from .errors import CatsegError, ParseError, ValidationError
from .formats import (
    BRACKETS,
    STANDOFF,
    document_from_annotation,
    load_gold,
    load_vertical,
    serialize_segments,
)
from .lexicon import load_lexicon
from .model import compute_corpus_stats, format_corpus_stats


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _format_table(pairs: list[tuple[str, str]]) -> str:
    width = max(len(k) for k, _ in pairs)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in pairs) + "\n"


def _format_tsv(pairs: list[tuple[str, str]]) -> str:
    return "\n".join(f"{k}\t{v}" for k, v in pairs) + "\n"


def _emit(pairs: list[tuple[str, str]], tsv: bool, output: str | None) -> None:
    _write_output(_format_tsv(pairs) if tsv else _format_table(pairs), output)


_MODE_NAMES = {
    "intra": metrics.INTRA_BOUNDARY,
    "all": metrics.ALL_BOUNDARY,
    "segment": metrics.SEGMENT_EXACT,
}


def _cmd_segment(args) -> int:
    doc = load_vertical(args.input)
    lex = load_lexicon(args.lexicon)
    ruleset = rules.load_rules(args.rules)
    result = segmenter.segment(doc, lex, ruleset)
    _write_output(serialize_segments(result, args.format), args.output)
    return 0


def _cmd_baseline(args) -> int:
    doc = load_vertical(args.input)
    if args.which == "1":
        result = baselines.baseline_conjunctions(doc)
    else:
        result = baselines.baseline_sentences(doc)
    _write_output(serialize_segments(result, args.format), args.output)
    return 0


def _load_triples(token_paths, system_paths, gold_paths):
    if not (len(token_paths) == len(system_paths) == len(gold_paths)):
        raise ValidationError(
            "--tokens, --system and --gold need the same number of files"
        )
    triples = []
    for tok_path, sys_path, gold_path in zip(token_paths, system_paths, gold_paths):
        doc = load_vertical(tok_path)
        sys_ann = load_gold(sys_path, doc)
        gold_ann = load_gold(gold_path, doc)
        triples.append((document_from_annotation(sys_ann, doc), gold_ann))
    return triples


def _cmd_eval(args) -> int:
    mode = _MODE_NAMES[args.mode]
    triples = _load_triples(args.tokens, args.system, args.gold)
    reports = [
        metrics.boundary_prf(
            system,
            gold,
            mode=mode,
            sentences_count_as_correct=args.sentences_count_as_correct,
        )
        for system, gold in triples
    ]
    if args.per_text:
        body = "\n".join(f"{r.f_score:.6f}" for r in reports) + "\n"
        _write_output(body, args.output)
        return 0
    combined = metrics.combine_reports(reports)
    pairs = [
        ("mode", combined.mode),
        ("precision", f"{combined.precision:.6f}"),
        ("recall", f"{combined.recall:.6f}"),
        ("f-score", f"{combined.f_score:.6f}"),
        ("true-positives", str(combined.true_positives)),
        ("system", str(combined.system_count)),
        ("gold", str(combined.gold_count)),
    ]
    _emit(pairs, args.tsv, args.output)
    return 0


def _load_annotation_pairs(token_paths, a_paths, b_paths):
    if not (len(token_paths) == len(a_paths) == len(b_paths)):
        raise ValidationError("--tokens, --a and --b need the same number of files")
    pairs = []
    for tok_path, a_path, b_path in zip(token_paths, a_paths, b_paths):
        doc = load_vertical(tok_path)
        pairs.append((load_gold(a_path, doc), load_gold(b_path, doc)))
    return pairs


def _cmd_agree(args) -> int:
    from_counts = args.agreed is not None or args.disagreed is not None
    from_files = bool(args.a or args.b or args.tokens)
    if from_counts == from_files:
        raise UsageError(
            "catseg agree: give either --agreed/--disagreed or --a/--b/--tokens"
        )
    if from_counts:
        if args.agreed is None or args.disagreed is None:
            raise UsageError("catseg agree: --agreed and --disagreed go together")
        report = metrics.agreement_from_counts(args.agreed, args.disagreed)
    else:
        agreed = disagreed = 0
        for ann_a, ann_b in _load_annotation_pairs(args.tokens, args.a, args.b):
            r = metrics.raw_agreement(ann_a, ann_b)
            agreed += r.agreed
            disagreed += r.disagreed
        report = metrics.agreement_from_counts(agreed, disagreed)
    pairs = [
        ("agreed", str(report.agreed)),
        ("disagreed", str(report.disagreed)),
        ("raw-agreement", f"{report.raw_agreement:.6f}"),
    ]
    _emit(pairs, args.tsv, args.output)
    return 0


def _cmd_kappa(args) -> int:
    labels_a: list[int] = []
    labels_b: list[int] = []
    for ann_a, ann_b in _load_annotation_pairs(args.tokens, args.a, args.b):
        la, lb = metrics.boundary_labels(ann_a, ann_b, unit_mode=args.unit)
        labels_a.extend(la)
        labels_b.extend(lb)
    report = metrics.kappa_from_labels(labels_a, labels_b, unit_mode=args.unit)
    pairs = [
        ("unit", args.unit),
        ("items", str(report.agreed + report.disagreed)),
        ("agreed", str(report.agreed)),
        ("disagreed", str(report.disagreed)),
        ("observed-agreement", f"{report.raw_agreement:.6f}"),
        ("kappa", f"{report.kappa:.6f}"),
    ]
    _emit(pairs, args.tsv, args.output)
    return 0


def _read_scores(path) -> list[float]:
    scores = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                scores.append(float(line))
            except ValueError:
                raise ParseError(
                    f"{path}: expected one number per line, got {line!r}",
                    line=lineno,
                ) from None
    return scores


def _cmd_ttest(args) -> int:
    scores_a = _read_scores(args.a)
    scores_b = _read_scores(args.b)
    report = metrics.paired_fold_ttest(scores_a, scores_b, alpha=args.alpha)
    pairs = [
        ("folds", str(len(scores_a))),
        ("t-statistic", f"{report.t_statistic:.6f}"),
        ("df", str(report.degrees_of_freedom)),
        ("p-value", f"{report.p_value:.6f}"),
        ("alpha", f"{report.significant_at:.6f}"),
        ("significant", "yes" if report.significant else "no"),
    ]
    _emit(pairs, args.tsv, args.output)
    return 0


def _cmd_translate(args) -> int:
    if args.lexicon is None and args.rules is None:
        raise UsageError("catseg translate: give --lexicon and/or --rules")
    tmap = porting.load_map(args.map)
    report_parts = []
    if args.lexicon is not None:
        src_lex = load_lexicon(args.lexicon)
        out_lex, report = porting.translate_lexicon(src_lex, tmap)
        report_parts.append(("lexicon", report))
        if args.out_lexicon:
            from .lexicon import serialize_lexicon

            with open(args.out_lexicon, "w", encoding="utf-8") as fh:
                fh.write(serialize_lexicon(out_lex))
    if args.rules is not None:
        src_rules = rules.load_rules(args.rules, language="es")
        out_rules, report = porting.translate_ruleset(src_rules, tmap)
        report_parts.append(("ruleset", report))
        if args.out_rules:
            with open(args.out_rules, "w", encoding="utf-8") as fh:
                fh.write(rules.serialize_rules(out_rules))
    chunks = []
    for label, report in report_parts:
        chunks.append(f"# {label}\n" + porting.serialize_report(report))
    _write_output("".join(chunks), args.report)
    return 0


def _cmd_stats(args) -> int:
    if len(args.tokens) != len(args.seg):
        raise ValidationError("--tokens and --seg need the same number of files")
    corpus = []
    for tok_path, seg_path in zip(args.tokens, args.seg):
        doc = load_vertical(tok_path)
        ann = load_gold(seg_path, doc)
        corpus.append(document_from_annotation(ann, doc))
    stats = compute_corpus_stats(corpus)
    if args.tsv:
        pairs = [("texts", str(stats.num_texts))]
        for name, line in (
            ("words", stats.words),
            ("sentences", stats.sentences),
            ("segments", stats.segments),
        ):
            pairs.extend(
                [
                    (f"{name}_total", str(line.total)),
                    (f"{name}_longest", str(line.longest)),
                    (f"{name}_shortest", str(line.shortest)),
                    (f"{name}_average", f"{line.average:.2f}"),
                ]
            )
        _write_output(_format_tsv(pairs), args.output)
    else:
        _write_output(format_corpus_stats(stats), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="catseg",
        description="Rule-based discourse segmentation toolkit for Catalan.",
    )
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("segment", help="segment a tagged document")
    p.add_argument("--input", required=True, help="vertical tagged text (.vrt)")
    p.add_argument("--lexicon", required=True, help="marker lexicon TSV")
    p.add_argument("--rules", required=True, help="boundary rule file")
    p.add_argument("--format", choices=(BRACKETS, STANDOFF), default=BRACKETS)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_segment)

    p = sub.add_parser("baseline", help="run a reference baseline")
    p.add_argument("--which", choices=("1", "2"), required=True,
                   help="1: boundary before every conjunction; 2: sentences as segments")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=(BRACKETS, STANDOFF), default=BRACKETS)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_baseline)

    p = sub.add_parser("eval", help="score a segmentation against a reference")
    p.add_argument("--system", nargs="+", required=True, help=".seg output files")
    p.add_argument("--gold", nargs="+", required=True, help=".seg reference files")
    p.add_argument("--tokens", nargs="+", required=True, help=".vrt token files")
    p.add_argument("--mode", choices=tuple(_MODE_NAMES), default="intra")
    p.add_argument("--sentences-count-as-correct", action="store_true",
                   help="segment-exact mode: whole-sentence segments always count")
    p.add_argument("--per-text", action="store_true",
                   help="print one F-score per text (fold scores for ttest)")
    p.add_argument("--tsv", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("agree", help="raw inter-annotator agreement")
    p.add_argument("--a", nargs="+", help="first annotator .seg files")
    p.add_argument("--b", nargs="+", help="second annotator .seg files")
    p.add_argument("--tokens", nargs="+", help=".vrt token files")
    p.add_argument("--agreed", type=int, help="agreed boundary count")
    p.add_argument("--disagreed", type=int, help="disagreed boundary count")
    p.add_argument("--tsv", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_agree)

    p = sub.add_parser("kappa", help="Cohen's kappa between two annotators")
    p.add_argument("--a", nargs="+", required=True)
    p.add_argument("--b", nargs="+", required=True)
    p.add_argument("--tokens", nargs="+", required=True)
    p.add_argument("--unit", choices=(metrics.WORD_UNITS, metrics.CLAUSE_UNITS),
                   default=metrics.WORD_UNITS)
    p.add_argument("--tsv", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_kappa)

    p = sub.add_parser("ttest", help="paired two-tailed t-test over fold scores")
    p.add_argument("--a", required=True, help="score file, one number per line")
    p.add_argument("--b", required=True, help="score file, one number per line")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--tsv", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_ttest)

    p = sub.add_parser("translate", help="port Spanish resources to Catalan")
    p.add_argument("--map", required=True, help="translation map TSV")
    p.add_argument("--lexicon", help="source lexicon to translate")
    p.add_argument("--rules", help="source rule file to translate")
    p.add_argument("--out-lexicon", help="write the translated lexicon here")
    p.add_argument("--out-rules", help="write the translated rules here")
    p.add_argument("--report", help="write the port report here (default stdout)")
    p.set_defaults(func=_cmd_translate)

    p = sub.add_parser("stats", help="corpus statistics over segmented texts")
    p.add_argument("--tokens", nargs="+", required=True)
    p.add_argument("--seg", nargs="+", required=True)
    p.add_argument("--tsv", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_stats)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if getattr(args, "func", None) is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"catseg: parse error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"catseg: cannot read input: {exc}", file=sys.stderr)
        return 2
    except CatsegError as exc:
        print(f"catseg: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())
