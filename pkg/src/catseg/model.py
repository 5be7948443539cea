"""Document model for discourse segmentation.

A document is a sequence of sentences; a sentence is a sequence of
POS-tagged tokens plus a flat chunk layer. Segmentations are stored as
boundary sets: for each sentence, the set of gap indices g
(1 <= g <= len(tokens) - 1) where a boundary falls between tokens g-1
and g. Sentence edges are implicit boundaries and are never stored.

Tags follow the positional EAGLES convention: the first character is
the category (V verb, C conjunction, S preposition, F punctuation, ...)
and, for verbs, the third character is the mood. Moods I/S/M are finite,
N/G/P (infinitive, gerund, participle) are non-finite. Whether a verb
is finite is decidable from the tag alone.

All types are immutable value objects; operations that "modify" a
document build a new one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ValidationError

FINITE_MOODS = "ISM"
NONFINITE_MOODS = "NGP"


def tag_category(tag: str) -> str:
    """First character of a positional tag: the word category."""
    return tag[:1]


def is_verb(tag: str) -> bool:
    """True for any verb tag, finite or not."""
    return tag.startswith("V")


def is_finite_verb(tag: str) -> bool:
    """True when the tag is a verb in a finite mood (I, S or M)."""
    return len(tag) >= 3 and tag[0] == "V" and tag[2] in FINITE_MOODS


def is_nonfinite_verb(tag: str) -> bool:
    """True for infinitives, gerunds and participles (mood N, G or P)."""
    return len(tag) >= 3 and tag[0] == "V" and tag[2] in NONFINITE_MOODS


@dataclass(frozen=True)
class Token:
    """One surface token with its lemma and positional tag."""

    index: int
    form: str
    lemma: str
    tag: str

    def __post_init__(self):
        if self.index < 0:
            raise ValidationError(f"token index must be >= 0, got {self.index}")
        for name in ("form", "lemma", "tag"):
            if not getattr(self, name):
                raise ValidationError(f"token {name} must be non-empty")


@dataclass(frozen=True)
class ChunkNode:
    """A labelled span over token positions, half-open [start, end)."""

    label: str
    start: int
    end: int

    def __post_init__(self):
        if not self.label:
            raise ValidationError("chunk label must be non-empty")
        if not (0 <= self.start < self.end):
            raise ValidationError(
                f"chunk span must satisfy 0 <= start < end, got [{self.start}, {self.end})"
            )

    def covers(self, position: int) -> bool:
        return self.start <= position < self.end


@dataclass(frozen=True)
class Sentence:
    """Tokens plus a flat, non-overlapping chunk layer."""

    tokens: tuple[Token, ...]
    chunks: tuple[ChunkNode, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "chunks", tuple(self.chunks))
        for pos, tok in enumerate(self.tokens):
            if tok.index != pos:
                raise ValidationError(
                    f"token indices must be contiguous from 0, got {tok.index} at {pos}"
                )
        prev_end = 0
        for chunk in self.chunks:
            if chunk.start < prev_end:
                raise ValidationError(
                    f"chunks must be ordered and non-overlapping, span [{chunk.start}, {chunk.end})"
                )
            if chunk.end > len(self.tokens):
                raise ValidationError(
                    f"chunk span [{chunk.start}, {chunk.end}) exceeds sentence length {len(self.tokens)}"
                )
            prev_end = chunk.end

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def forms(self) -> tuple[str, ...]:
        return tuple(tok.form for tok in self.tokens)

    def has_verb(self, start: int = 0, end: int | None = None) -> bool:
        """Any verb-tagged token in [start, end)."""
        stop = len(self.tokens) if end is None else end
        return any(is_verb(tok.tag) for tok in self.tokens[start:stop])


@dataclass(frozen=True)
class BoundarySet:
    """Per-sentence sets of intra-sentence gap indices.

    Gap g marks a boundary between tokens g-1 and g, so g = 0 is never
    stored; the upper bound depends on sentence length and is checked
    where sentences are available (SegmentedDocument).
    """

    gaps: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "gaps", tuple(frozenset(g) for g in self.gaps)
        )
        for si, sentence_gaps in enumerate(self.gaps):
            for g in sentence_gaps:
                if g < 1:
                    raise ValidationError(
                        f"sentence {si}: gap index must be >= 1, got {g}"
                    )

    @classmethod
    def from_iterables(cls, gaps: Iterable[Iterable[int]]) -> "BoundarySet":
        return cls(tuple(frozenset(g) for g in gaps))

    @classmethod
    def empty(cls, num_sentences: int) -> "BoundarySet":
        return cls(tuple(frozenset() for _ in range(num_sentences)))

    def __len__(self) -> int:
        return len(self.gaps)

    @property
    def total(self) -> int:
        """Total number of intra-sentence boundaries."""
        return sum(len(g) for g in self.gaps)


def segment_spans(length: int, gaps: frozenset[int]) -> tuple[tuple[int, int], ...]:
    """Half-open spans obtained by cutting [0, length) at each gap."""
    cuts = [0, *sorted(gaps), length]
    return tuple((cuts[i], cuts[i + 1]) for i in range(len(cuts) - 1))


@dataclass(frozen=True)
class SegmentedDocument:
    """Sentences paired with a validated boundary set.

    Segments are derived, never stored: each sentence's segments are
    the spans between consecutive boundaries, so they always tile the
    sentence and segment count = boundary count + 1.
    """

    sentences: tuple[Sentence, ...]
    boundaries: BoundarySet

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))
        if len(self.boundaries.gaps) != len(self.sentences):
            raise ValidationError(
                f"boundary set covers {len(self.boundaries.gaps)} sentences, "
                f"document has {len(self.sentences)}"
            )
        for si, (sent, gaps) in enumerate(zip(self.sentences, self.boundaries.gaps)):
            for g in gaps:
                if g > len(sent.tokens) - 1:
                    raise ValidationError(
                        f"sentence {si}: gap {g} out of range for {len(sent.tokens)} tokens"
                    )

    def segments_for(self, sentence_index: int) -> tuple[tuple[int, int], ...]:
        sent = self.sentences[sentence_index]
        return segment_spans(len(sent.tokens), self.boundaries.gaps[sentence_index])

    def all_segments(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        return tuple(self.segments_for(i) for i in range(len(self.sentences)))

    @property
    def num_words(self) -> int:
        return sum(len(s.tokens) for s in self.sentences)

    @property
    def num_sentences(self) -> int:
        return len(self.sentences)

    @property
    def num_segments(self) -> int:
        return sum(len(g) + 1 for g in self.boundaries.gaps)


@dataclass(frozen=True)
class StatLine:
    """One corpus measure: total plus per-text extremes and mean."""

    total: int
    longest: int
    shortest: int
    average: float


@dataclass(frozen=True)
class CorpusStats:
    num_texts: int
    words: StatLine
    sentences: StatLine
    segments: StatLine


def compute_corpus_stats(corpus: Sequence[SegmentedDocument]) -> CorpusStats:
    """Word, sentence and segment totals over a corpus of texts.

    Averages are per-text ratios; reports format them with two decimals.
    Raises ValidationError on an empty corpus.
    """
    if not corpus:
        raise ValidationError("cannot compute statistics over an empty corpus")

    def line(counts: list[int]) -> StatLine:
        return StatLine(
            total=sum(counts),
            longest=max(counts),
            shortest=min(counts),
            average=sum(counts) / len(counts),
        )

    return CorpusStats(
        num_texts=len(corpus),
        words=line([d.num_words for d in corpus]),
        sentences=line([d.num_sentences for d in corpus]),
        segments=line([d.num_segments for d in corpus]),
    )


def format_corpus_stats(stats: CorpusStats) -> str:
    """Plain-text table with one row per measure, averages to 2 decimals."""
    rows = [
        ("words", stats.words),
        ("sentences", stats.sentences),
        ("segments", stats.segments),
    ]
    out = [f"texts      {stats.num_texts}"]
    out.append(f"{'':<10} {'total':>7} {'longest':>8} {'shortest':>9} {'average':>9}")
    for name, sl in rows:
        out.append(
            f"{name:<10} {sl.total:>7} {sl.longest:>8} {sl.shortest:>9} {sl.average:>9.2f}"
        )
    return "\n".join(out) + "\n"
