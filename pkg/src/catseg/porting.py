"""Porting Spanish segmentation resources to Catalan.

A translation map drives the port. Map files are TSV with two kinds of
rows:

    SRC_PATTERN<TAB>TGT_PATTERN<TAB>CONTEXT_RULE|-    marker mapping
    tag:SRC<TAB>tag:TGT                               tag/label mapping
    tag:SRC<TAB>UNMAPPED                              explicitly unmapped

Several rows may share a source pattern; together they form one
one-to-many mapping. A one-to-many mapping whose targets are not told
apart by context conditions (at most one target may lack one) is
flagged as needing manual review rather than silently guessing.

Porting never drops material silently: lexicon entries without a
mapping are reported, and rules referencing unmapped tags or lemmas are
emitted disabled and reported. |source entries| always equals
|translated| + |unmapped|, with one-to-many expansions counted once.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import guards
from .errors import ParseError, ValidationError
from .lexicon import Lexicon, MarkerEntry
from .rules import MARKER_LABELS, Rule, RuleSet

UNMAPPED = "UNMAPPED"


@dataclass(frozen=True)
class TargetMapping:
    """One target of a marker mapping, with an optional context guard."""

    pattern: tuple[str, ...]
    context: str | None = None

    @property
    def pattern_text(self) -> str:
        return " ".join(self.pattern)


@dataclass(frozen=True)
class MarkerMapping:
    source: tuple[str, ...]
    targets: tuple[TargetMapping, ...]

    @property
    def source_text(self) -> str:
        return " ".join(self.source)

    @property
    def one_to_many(self) -> bool:
        return len(self.targets) > 1

    @property
    def needs_review(self) -> bool:
        """True when several targets lack a distinguishing context."""
        without_context = sum(1 for t in self.targets if t.context is None)
        return self.one_to_many and without_context > 1


@dataclass(frozen=True)
class TranslationMap:
    """Marker pattern mappings plus tag/label mappings.

    tags maps a source tag to its target, or to None when the source
    tag is declared unmapped. Every source pattern appears exactly once.
    """

    markers: dict[tuple[str, ...], MarkerMapping]
    tags: dict[str, str | None]


def parse_map(text: str) -> TranslationMap:
    """Parse a translation map; errors carry line numbers."""
    targets_by_source: dict[tuple[str, ...], list[TargetMapping]] = {}
    seen_pairs: set[tuple[tuple[str, ...], tuple[str, ...]]] = set()
    order: list[tuple[str, ...]] = []
    tags: dict[str, str | None] = {}
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if fields[0].startswith("tag:"):
            if len(fields) != 2:
                raise ParseError(
                    f"tag row needs 2 tab-separated fields, got {len(fields)}",
                    line=lineno,
                )
            src = fields[0][len("tag:") :].strip()
            if not src:
                raise ParseError("empty source tag", line=lineno)
            if src in tags:
                raise ParseError(f"duplicate tag mapping for {src!r}", line=lineno)
            rhs = fields[1].strip()
            if rhs == UNMAPPED:
                tags[src] = None
            elif rhs.startswith("tag:") and rhs[len("tag:") :]:
                tags[src] = rhs[len("tag:") :]
            else:
                raise ParseError(
                    f"tag target must be tag:NAME or {UNMAPPED}, got {rhs!r}",
                    line=lineno,
                )
            continue
        if len(fields) != 3:
            raise ParseError(
                f"marker row needs 3 tab-separated fields "
                f"(SRC_PATTERN, TGT_PATTERN, CONTEXT_RULE), got {len(fields)}",
                line=lineno,
            )
        src_text, tgt_text, context = (f.strip() for f in fields)
        source = tuple(src_text.lower().split())
        target = tuple(tgt_text.lower().split())
        if not source or not target:
            raise ParseError("empty marker pattern", line=lineno)
        context_rule = None if context == "-" else context
        if context_rule is not None and context_rule not in guards.GUARDS:
            raise ParseError(
                f"unknown context rule {context_rule!r}; known guards: "
                f"{', '.join(guards.known_guards())}",
                line=lineno,
            )
        if (source, target) in seen_pairs:
            raise ParseError(
                f"duplicate mapping {src_text!r} -> {tgt_text!r}", line=lineno
            )
        seen_pairs.add((source, target))
        if source not in targets_by_source:
            targets_by_source[source] = []
            order.append(source)
        targets_by_source[source].append(
            TargetMapping(pattern=target, context=context_rule)
        )
    markers = {
        source: MarkerMapping(source=source, targets=tuple(targets_by_source[source]))
        for source in order
    }
    return TranslationMap(markers=markers, tags=tags)


def load_map(path) -> TranslationMap:
    with open(path, encoding="utf-8") as fh:
        return parse_map(fh.read())


@dataclass(frozen=True)
class PortReport:
    """What a port did: counts, fan-outs, and everything unresolved."""

    translated: int
    one_to_many: tuple[tuple[str, tuple[str, ...]], ...]
    unmapped: tuple[tuple[str, str], ...]
    unmapped_tags: tuple[str, ...]
    needs_review: tuple[str, ...]


def serialize_report(report: PortReport) -> str:
    """Line-delimited report records, stable across runs."""
    lines = [f"translated\t{report.translated}"]
    for source, targets in report.one_to_many:
        lines.append(f"one-to-many\t{source}\t{'|'.join(targets)}")
    for item, reason in report.unmapped:
        lines.append(f"unmapped\t{item}\t{reason}")
    for tag in report.unmapped_tags:
        lines.append(f"unmapped-tag\t{tag}")
    for source in report.needs_review:
        lines.append(f"needs-review\t{source}")
    return "\n".join(lines) + "\n"


def translate_lexicon(
    src: Lexicon,
    tmap: TranslationMap,
    source_language: str = "es",
    target_language: str = "ca",
) -> tuple[Lexicon, PortReport]:
    """Translate every lexicon entry through the map.

    One-to-many mappings expand an entry into one target entry per
    target; a target carrying a context condition becomes an ambiguous
    entry guarded by it, otherwise the source entry's class and context
    rule are preserved. Entries without a mapping are dropped from the
    output but listed in the report.
    """
    for e in src.entries:
        if e.language != source_language:
            raise ValidationError(
                f"source lexicon entry {e.pattern_text!r} has language "
                f"{e.language!r}, expected {source_language!r}"
            )
    out: list[MarkerEntry] = []
    one_to_many: list[tuple[str, tuple[str, ...]]] = []
    unmapped: list[tuple[str, str]] = []
    needs_review: list[str] = []
    translated = 0
    for e in src.entries:
        mapping = tmap.markers.get(e.pattern)
        if mapping is None:
            unmapped.append((e.pattern_text, "no mapping"))
            continue
        translated += 1
        if mapping.one_to_many:
            one_to_many.append(
                (e.pattern_text, tuple(t.pattern_text for t in mapping.targets))
            )
            if mapping.needs_review:
                needs_review.append(e.pattern_text)
        for target in mapping.targets:
            context = target.context
            if context is None and e.ambiguous:
                context = e.context_rule
            out.append(
                MarkerEntry(
                    pattern=target.pattern,
                    ambiguous=context is not None,
                    context_rule=context,
                    language=target_language,
                )
            )
    report = PortReport(
        translated=translated,
        one_to_many=tuple(one_to_many),
        unmapped=tuple(unmapped),
        unmapped_tags=(),
        needs_review=tuple(needs_review),
    )
    return Lexicon(entries=tuple(out)), report


def _is_neutral_label(label: str) -> bool:
    # The toolkit's own marker labels mean the same thing in every
    # language, so rules triggering on them never need rewriting.
    return label in MARKER_LABELS


def translate_ruleset(
    src: RuleSet,
    tmap: TranslationMap,
    target_language: str = "ca",
) -> tuple[RuleSet, PortReport]:
    """Rewrite rule triggers through the map.

    Punctuation triggers and marker-chunk triggers are language-neutral
    and pass through unchanged. Chunk-label triggers are looked up in
    the tag mappings and lemma triggers in the marker mappings; a lemma
    mapped to several targets fans the rule out into one rule per
    target, suffixing the rule names and using the map's context
    conditions as guards (the original guard is kept when a target has
    no condition). Anything unresolvable keeps its rule, disabled, and
    is reported.
    """
    out: list[Rule] = []
    one_to_many: list[tuple[str, tuple[str, ...]]] = []
    unmapped: list[tuple[str, str]] = []
    unmapped_tags: list[str] = []
    needs_review: list[str] = []
    translated = 0
    for rule in src.rules:
        kind, value = rule.trigger
        if kind == "punct" or (kind == "cat" and _is_neutral_label(value)):
            out.append(rule)
            translated += 1
            continue
        if kind == "cat":
            target_tag = tmap.tags.get(value, UNMAPPED)
            if target_tag is None or target_tag == UNMAPPED:
                out.append(replace(rule, enabled=False))
                unmapped.append((rule.name, f"unmapped tag {value!r}"))
                if value not in unmapped_tags:
                    unmapped_tags.append(value)
                continue
            out.append(replace(rule, trigger=("cat", target_tag)))
            translated += 1
            continue
        # conj:LEMMA
        mapping = tmap.markers.get((value,))
        if mapping is None:
            out.append(replace(rule, enabled=False))
            unmapped.append((rule.name, f"no mapping for lemma {value!r}"))
            continue
        usable = [t for t in mapping.targets if len(t.pattern) == 1]
        if not usable:
            out.append(replace(rule, enabled=False))
            unmapped.append(
                (rule.name, f"no single-token target for lemma {value!r}")
            )
            continue
        translated += 1
        if len(usable) > 1:
            one_to_many.append(
                (rule.name, tuple(t.pattern_text for t in usable))
            )
            if mapping.needs_review:
                needs_review.append(rule.name)
            for target in usable:
                out.append(
                    replace(
                        rule,
                        name=f"{rule.name}_{'_'.join(target.pattern)}",
                        trigger=("conj", target.pattern[0]),
                        guard=target.context if target.context else rule.guard,
                    )
                )
        else:
            target = usable[0]
            out.append(
                replace(
                    rule,
                    trigger=("conj", target.pattern[0]),
                    guard=target.context if target.context else rule.guard,
                )
            )
    report = PortReport(
        translated=translated,
        one_to_many=tuple(one_to_many),
        unmapped=tuple(unmapped),
        unmapped_tags=tuple(unmapped_tags),
        needs_review=tuple(needs_review),
    )
    return RuleSet(rules=tuple(out), language=target_language), report
