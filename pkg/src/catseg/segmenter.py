"""The segmentation pipeline: recategorize, detect boundaries, form EDUs.

Stage 1 (recategorize) runs the marker lexicon over each sentence and
adds a chunk labelled disc-mk or disc-mk-amb over every accepted match;
ambiguous matches are accepted only when their context rule holds.
Tokens covered by a marker chunk belong to that chunk and are invisible
to token-level triggers afterwards, so a conjunction inside a multiword
marker can no longer fire on its own.

Stage 2 (detect_boundaries) applies the boundary rules in priority
order (ties broken by leftmost trigger), first over whole sentences,
then a second time inside each segment found by the first pass, with
segment edges acting as sentence edges for the guards. A trigger
occurrence fires at most once across passes. Boundaries are only kept
when they fall strictly inside the segment being scanned.

Stage 3 (form_edus) enforces the verb requirement: a candidate segment
with no verb token is merged into its left neighbour, or its right
neighbour when it starts the sentence. A sentence without any verb
stays a single unit.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import guards
from .errors import ValidationError
from .formats import VerticalDocument
from .lexicon import (
    AMBIGUOUS_MARKER_LABEL,
    Lexicon,
    MARKER_LABEL,
    disambiguate,
    match_markers,
)
from .model import (
    BoundarySet,
    ChunkNode,
    SegmentedDocument,
    Sentence,
    segment_spans,
)
from .rules import CLOSE_TAGS, DASH_TAGS, OPEN_TAGS, Rule, RuleSet

_MARKER_LABELS = (MARKER_LABEL, AMBIGUOUS_MARKER_LABEL)


def recategorize(doc: VerticalDocument, lex: Lexicon) -> VerticalDocument:
    """Add marker chunks over accepted lexicon matches.

    Tokens are never changed. Pre-existing chunks survive unless they
    overlap a marker span, in which case the marker chunk wins.
    """
    new_sentences = []
    for si, sent in enumerate(doc.sentences):
        accepted = []
        for match in match_markers(sent, lex, sentence_index=si):
            if match.entry.ambiguous:
                match = disambiguate(match, sent)
            if match.resolved:
                accepted.append(match)
        if not accepted:
            new_sentences.append(sent)
            continue
        marker_chunks = [
            ChunkNode(label=m.entry.category, start=m.start, end=m.end)
            for m in accepted
        ]
        kept = [
            c
            for c in sent.chunks
            if not any(c.start < m.end and m.start < c.end for m in marker_chunks)
        ]
        chunks = tuple(sorted(kept + marker_chunks, key=lambda c: c.start))
        new_sentences.append(replace(sent, chunks=chunks))
    return replace(doc, sentences=tuple(new_sentences))


@dataclass(frozen=True)
class Firing:
    """One applied rule firing, recorded for inspection."""

    pass_no: int
    sentence_index: int
    rule_name: str
    span: tuple[int, int]
    gap: int
    inserted: bool


def _covered_positions(sent: Sentence) -> set[int]:
    covered = set()
    for chunk in sent.chunks:
        if chunk.label in _MARKER_LABELS:
            covered.update(range(chunk.start, chunk.end))
    return covered


def _punct_pairs(
    sent: Sentence, start: int, end: int, covered: set[int]
) -> list[tuple[int, int]]:
    """Paired delimiter positions (open_idx, close_idx) within [start, end).

    Bracket-like delimiters match by class with nesting; dashes pair by
    alternation. Unmatched delimiters yield no pair.
    """
    pairs: list[tuple[int, int]] = []
    stack: list[tuple[str, int]] = []
    dash_open: int | None = None
    for i in range(start, end):
        if i in covered:
            continue
        tag = sent.tokens[i].tag
        if tag in OPEN_TAGS:
            stack.append((OPEN_TAGS[tag], i))
        elif tag in CLOSE_TAGS:
            cls = CLOSE_TAGS[tag]
            if stack and stack[-1][0] == cls:
                _, open_i = stack.pop()
                pairs.append((open_i, i))
        elif tag in DASH_TAGS:
            if dash_open is None:
                dash_open = i
            else:
                pairs.append((dash_open, i))
                dash_open = None
    pairs.sort()
    return pairs


def _occurrences(
    rule: Rule, sent: Sentence, start: int, end: int, covered: set[int]
) -> list[tuple[int, int]]:
    """Trigger spans for one rule within segment [start, end)."""
    kind, value = rule.trigger
    if kind == "cat":
        return [
            (c.start, c.end)
            for c in sent.chunks
            if c.label == value and start <= c.start and c.end <= end
        ]
    if kind == "conj":
        return [
            (i, i + 1)
            for i in range(start, end)
            if i not in covered
            and sent.tokens[i].tag.startswith("CC")
            and sent.tokens[i].lemma == value
        ]
    # punct:open and punct:close both match the full paired span; the
    # action picks which end receives the boundary.
    return [(i, j + 1) for i, j in _punct_pairs(sent, start, end, covered)]


def trace_boundaries(
    doc: VerticalDocument, ruleset: RuleSet, passes: int = 2
) -> tuple[BoundarySet, tuple[Firing, ...]]:
    """Boundary detection with a full firing trace.

    Within one pass every enabled rule's trigger occurrences inside the
    current segment are collected and applied in (priority, leftmost)
    order. A firing is applied when its guard holds and its gap falls
    strictly inside the segment; applied occurrences are consumed and
    skipped by later passes.
    """
    if passes < 1:
        raise ValidationError("boundary detection needs at least one pass")
    all_gaps: list[set[int]] = [set() for _ in doc.sentences]
    trace: list[Firing] = []
    for si, sent in enumerate(doc.sentences):
        covered = _covered_positions(sent)
        consumed: set[tuple[str, int, int]] = set()
        gaps = all_gaps[si]
        for pass_no in range(1, passes + 1):
            segments = segment_spans(len(sent.tokens), frozenset(gaps))
            for seg_start, seg_end in segments:
                candidates = []
                for ri, rule in enumerate(ruleset.rules):
                    if not rule.enabled:
                        continue
                    for span in _occurrences(rule, sent, seg_start, seg_end, covered):
                        candidates.append((rule.priority, span[0], ri, span, rule))
                candidates.sort(key=lambda c: (c[0], c[1], c[2]))
                for _, _, _, span, rule in candidates:
                    key = (rule.name, span[0], span[1])
                    if key in consumed:
                        continue
                    gap = span[0] if rule.action == "before" else span[1]
                    if not (seg_start < gap < seg_end):
                        continue
                    if rule.guard is not None and not guards.evaluate(
                        rule.guard, sent, span[0], span[1], seg_start, seg_end
                    ):
                        continue
                    inserted = gap not in gaps
                    gaps.add(gap)
                    consumed.add(key)
                    trace.append(
                        Firing(
                            pass_no=pass_no,
                            sentence_index=si,
                            rule_name=rule.name,
                            span=span,
                            gap=gap,
                            inserted=inserted,
                        )
                    )
    boundary_set = BoundarySet.from_iterables(all_gaps)
    return boundary_set, tuple(trace)


def detect_boundaries(doc: VerticalDocument, ruleset: RuleSet) -> BoundarySet:
    """Two-pass rule-based boundary detection (see trace_boundaries)."""
    boundaries, _ = trace_boundaries(doc, ruleset, passes=2)
    return boundaries


def form_edus(doc: VerticalDocument, boundaries: BoundarySet) -> SegmentedDocument:
    """Merge verbless candidate segments into discourse units.

    Working left to right: a verbless segment joins the unit to its
    left; while the leading unit is still verbless it absorbs segments
    to its right instead. The result is that every unit of a multi-unit
    sentence contains a verb, and a sentence without verbs (a title
    line, say) comes out as exactly one unit.
    """
    if len(boundaries.gaps) != len(doc.sentences):
        raise ValidationError(
            f"boundary set covers {len(boundaries.gaps)} sentences, "
            f"document has {len(doc.sentences)}"
        )
    merged_gaps = []
    for sent, gaps in zip(doc.sentences, boundaries.gaps):
        spans = segment_spans(len(sent.tokens), gaps)
        merged: list[tuple[int, int]] = []
        for span in spans:
            if merged and (
                not sent.has_verb(*span) or not sent.has_verb(*merged[-1])
            ):
                merged[-1] = (merged[-1][0], span[1])
            else:
                merged.append(span)
        merged_gaps.append(frozenset(start for start, _ in merged[1:]))
    return SegmentedDocument(
        sentences=doc.sentences, boundaries=BoundarySet(tuple(merged_gaps))
    )


def segment(doc: VerticalDocument, lex: Lexicon, ruleset: RuleSet) -> SegmentedDocument:
    """Full pipeline: recategorize, detect boundaries, form EDUs."""
    recategorized = recategorize(doc, lex)
    boundaries = detect_boundaries(recategorized, ruleset)
    return form_edus(recategorized, boundaries)
