"""Parsing and serialization of the corpus file formats.

Vertical tagged text (.vrt):
    one token per line as FORM<TAB>LEMMA<TAB>TAG, a blank line between
    sentences, lines starting with '#' carry metadata ("# key: value").
    UTF-8, LF line endings.

Bracketed segmentations (.seg):
    one sentence per line, each discourse segment wrapped in square
    brackets, segments separated by single spaces:
        [Tok tok tok] [tok tok .]
    The bracketed forms must reproduce the token sequence of the
    sentence exactly, so forms may not contain whitespace or square
    brackets.

Standoff segmentations:
    one line per sentence, SENT_INDEX<TAB>g1,g2,... with the gap list
    empty for an unsegmented sentence.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AlignmentError, ParseError, ValidationError
from .model import BoundarySet, SegmentedDocument, Sentence, Token

BRACKETS = "brackets"
STANDOFF = "standoff"


@dataclass(frozen=True)
class VerticalDocument:
    """Parsed vertical text: metadata comments plus tagged sentences."""

    metadata: dict[str, str]
    sentences: tuple[Sentence, ...]

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))

    def __len__(self) -> int:
        return len(self.sentences)


def parse_vertical(text: str) -> VerticalDocument:
    """Parse vertical tagged text into a document.

    Raises ParseError (with the offending line number) on lines that do
    not have exactly three non-empty tab-separated fields, and on input
    containing no tokens at all.
    """
    metadata: dict[str, str] = {}
    sentences: list[Sentence] = []
    current: list[Token] = []

    def flush():
        if current:
            sentences.append(Sentence(tuple(current)))
            current.clear()

    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if ":" in body:
                key, _, value = body.partition(":")
                metadata[key.strip()] = value.strip()
            elif body:
                metadata[body] = ""
            continue
        if not line.strip():
            flush()
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise ParseError(
                f"expected 3 tab-separated fields (FORM, LEMMA, TAG), got {len(fields)}",
                line=lineno,
            )
        form, lemma, tag = fields
        if not form or not lemma or not tag:
            raise ParseError("empty field in token line", line=lineno)
        current.append(Token(index=len(current), form=form, lemma=lemma, tag=tag))
    flush()

    if not sentences:
        raise ParseError("input contains no token lines")
    return VerticalDocument(metadata=metadata, sentences=tuple(sentences))


def load_vertical(path) -> VerticalDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_vertical(fh.read())


@dataclass(frozen=True)
class GoldAnnotation:
    """A reference segmentation: per-sentence segments of token forms,
    resolved to a boundary set against the underlying document."""

    segments: tuple[tuple[tuple[str, ...], ...], ...]
    boundaries: BoundarySet

    @property
    def tokens(self) -> tuple[tuple[str, ...], ...]:
        """Token forms per sentence, concatenated across segments."""
        return tuple(
            tuple(form for seg in sent_segs for form in seg)
            for sent_segs in self.segments
        )

    @property
    def num_segments(self) -> int:
        return sum(len(s) for s in self.segments)


def _parse_bracket_line(line: str, lineno: int) -> list[list[str]]:
    segments: list[list[str]] = []
    current: list[str] | None = None
    buf: list[str] = []
    for ch in line:
        if ch == "[":
            if current is not None:
                raise ParseError("nested '[' in segment line", line=lineno)
            current = []
            buf = []
        elif ch == "]":
            if current is None:
                raise ParseError("']' without matching '['", line=lineno)
            current.extend("".join(buf).split())
            if not current:
                raise ParseError("empty segment", line=lineno)
            segments.append(current)
            current = None
            buf = []
        elif current is not None:
            buf.append(ch)
        elif not ch.isspace():
            raise ParseError(
                f"character {ch!r} outside segment brackets", line=lineno
            )
    if current is not None:
        raise ParseError("'[' without matching ']'", line=lineno)
    if not segments:
        raise ParseError("line holds no segments", line=lineno)
    return segments


def parse_gold(text: str, doc: VerticalDocument) -> GoldAnnotation:
    """Parse a bracketed segmentation and align it with doc.

    Every non-whitespace character must lie inside exactly one bracket
    pair, and the concatenated segment tokens of each line must equal
    the forms of the corresponding sentence (exact string equality).
    Raises ParseError for malformed brackets and AlignmentError for
    token mismatches.
    """
    lines = [
        (lineno, line)
        for lineno, line in enumerate(text.split("\n"), start=1)
        if line.strip()
    ]
    if len(lines) != len(doc.sentences):
        raise AlignmentError(
            f"segmentation has {len(lines)} sentences, document has {len(doc.sentences)}"
        )

    all_segments: list[tuple[tuple[str, ...], ...]] = []
    all_gaps: list[frozenset[int]] = []
    for (lineno, line), sent in zip(lines, doc.sentences):
        segments = _parse_bracket_line(line, lineno)
        flat = [form for seg in segments for form in seg]
        if tuple(flat) != sent.forms:
            raise AlignmentError(
                f"line {lineno}: segment tokens do not match the sentence "
                f"(got {len(flat)} tokens, expected {len(sent.forms)})"
                if len(flat) != len(sent.forms)
                else f"line {lineno}: segment tokens do not match the sentence"
            )
        gaps = set()
        offset = 0
        for seg in segments[:-1]:
            offset += len(seg)
            gaps.add(offset)
        all_segments.append(tuple(tuple(seg) for seg in segments))
        all_gaps.append(frozenset(gaps))

    return GoldAnnotation(
        segments=tuple(all_segments), boundaries=BoundarySet(tuple(all_gaps))
    )


def load_gold(path, doc: VerticalDocument) -> GoldAnnotation:
    with open(path, encoding="utf-8") as fh:
        return parse_gold(fh.read(), doc)


def _check_serializable(form: str) -> None:
    if "[" in form or "]" in form or any(ch.isspace() for ch in form):
        raise ValidationError(
            f"token form {form!r} cannot be serialized to bracket format"
        )


def serialize_segments(doc: SegmentedDocument, fmt: str = BRACKETS) -> str:
    """Render a segmentation as bracket or standoff text.

    Bracket output round-trips: parse_gold(serialize_segments(d), ...)
    recovers exactly d's boundaries.
    """
    if fmt == BRACKETS:
        lines = []
        for si, sent in enumerate(doc.sentences):
            parts = []
            for start, end in doc.segments_for(si):
                forms = [tok.form for tok in sent.tokens[start:end]]
                for form in forms:
                    _check_serializable(form)
                parts.append("[" + " ".join(forms) + "]")
            lines.append(" ".join(parts))
        return "\n".join(lines) + "\n"
    if fmt == STANDOFF:
        lines = [
            f"{si}\t{','.join(str(g) for g in sorted(gaps))}"
            for si, gaps in enumerate(doc.boundaries.gaps)
        ]
        return "\n".join(lines) + "\n"
    raise ValidationError(f"unknown serialization format {fmt!r}")


def annotation_from_document(doc: SegmentedDocument) -> GoldAnnotation:
    """View a system segmentation as an annotation (for metrics that
    compare two annotations)."""
    segments = tuple(
        tuple(
            tuple(tok.form for tok in sent.tokens[start:end])
            for start, end in doc.segments_for(si)
        )
        for si, sent in enumerate(doc.sentences)
    )
    return GoldAnnotation(segments=segments, boundaries=doc.boundaries)


def document_from_annotation(
    ann: GoldAnnotation, doc: VerticalDocument
) -> SegmentedDocument:
    """Attach an annotation's boundaries to the tagged document it
    annotates. Raises AlignmentError if the token forms differ."""
    if len(ann.tokens) != len(doc.sentences):
        raise AlignmentError(
            f"annotation covers {len(ann.tokens)} sentences, document has {len(doc.sentences)}"
        )
    for si, (forms, sent) in enumerate(zip(ann.tokens, doc.sentences)):
        if forms != sent.forms:
            raise AlignmentError(f"sentence {si}: annotation tokens do not match document")
    return SegmentedDocument(sentences=doc.sentences, boundaries=ann.boundaries)
