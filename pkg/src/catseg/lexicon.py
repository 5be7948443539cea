"""Discourse marker lexicon: loading, matching, disambiguation.

Lexicon files are TSV with one marker per line:

    PATTERN<TAB>CLASS<TAB>CONTEXT_RULE<TAB>LANG

PATTERN is a space-separated sequence of lowercase surface forms (so
markers may span several tokens), CLASS is "mk" for markers that always
signal discourse structure or "mk-amb" for markers that need a context
test, CONTEXT_RULE is a guard id for mk-amb entries and "-" otherwise,
LANG is "ca" or "es". Lines starting with '#' are comments.

Matching is leftmost-longest over lowercased token forms, and accepted
matches never overlap.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import guards
from .errors import ParseError, ValidationError
from .model import Sentence

MARKER_LABEL = "disc-mk"
AMBIGUOUS_MARKER_LABEL = "disc-mk-amb"

_CLASS_NAMES = {"mk": False, "mk-amb": True}
_LANGUAGES = {"ca", "es"}


@dataclass(frozen=True)
class MarkerEntry:
    """One lexicon entry: a lowercase form pattern plus its class."""

    pattern: tuple[str, ...]
    ambiguous: bool
    context_rule: str | None
    language: str

    def __post_init__(self):
        object.__setattr__(self, "pattern", tuple(self.pattern))
        if not self.pattern or any(not p for p in self.pattern):
            raise ValidationError("marker pattern must be a non-empty form sequence")
        if any(p != p.lower() for p in self.pattern):
            raise ValidationError(f"marker pattern must be lowercase: {self.pattern}")
        if self.ambiguous and not self.context_rule:
            raise ValidationError(
                f"ambiguous marker {self.pattern_text!r} needs a context rule"
            )
        if not self.ambiguous and self.context_rule:
            raise ValidationError(
                f"non-ambiguous marker {self.pattern_text!r} must not carry a context rule"
            )

    @property
    def pattern_text(self) -> str:
        return " ".join(self.pattern)

    @property
    def category(self) -> str:
        """Chunk label assigned on recategorization."""
        return AMBIGUOUS_MARKER_LABEL if self.ambiguous else MARKER_LABEL


@dataclass(frozen=True)
class Lexicon:
    entries: tuple[MarkerEntry, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        seen = set()
        for e in self.entries:
            key = (e.pattern, e.language)
            if key in seen:
                raise ValidationError(
                    f"duplicate lexicon entry {e.pattern_text!r} for language {e.language}"
                )
            seen.add(key)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def num_ambiguous(self) -> int:
        return sum(1 for e in self.entries if e.ambiguous)

    @property
    def num_non_ambiguous(self) -> int:
        return sum(1 for e in self.entries if not e.ambiguous)

    def patterns(self) -> tuple[str, ...]:
        return tuple(e.pattern_text for e in self.entries)


@dataclass(frozen=True)
class MarkerMatch:
    """A lexicon entry found in a sentence, span [start, end).

    Non-ambiguous entries match resolved; ambiguous ones start
    unresolved and only count as markers after disambiguation.
    """

    sentence_index: int
    start: int
    end: int
    entry: MarkerEntry
    resolved: bool


def parse_lexicon(text: str) -> Lexicon:
    """Parse lexicon TSV; errors carry line numbers."""
    entries: list[MarkerEntry] = []
    seen: set[tuple[tuple[str, ...], str]] = set()
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise ParseError(
                f"expected 4 tab-separated fields (PATTERN, CLASS, CONTEXT_RULE, LANG), got {len(fields)}",
                line=lineno,
            )
        pattern_text, cls, context, lang = (f.strip() for f in fields)
        if cls not in _CLASS_NAMES:
            raise ParseError(f"unknown marker class {cls!r} (expected mk or mk-amb)", line=lineno)
        ambiguous = _CLASS_NAMES[cls]
        if lang not in _LANGUAGES:
            raise ParseError(f"unknown language {lang!r} (expected ca or es)", line=lineno)
        context_rule = None if context == "-" else context
        if ambiguous and context_rule is None:
            raise ParseError(
                f"ambiguous marker {pattern_text!r} is missing its context rule", line=lineno
            )
        if not ambiguous and context_rule is not None:
            raise ParseError(
                f"non-ambiguous marker {pattern_text!r} must use '-' for CONTEXT_RULE",
                line=lineno,
            )
        if context_rule is not None and context_rule not in guards.GUARDS:
            raise ParseError(
                f"unknown context rule {context_rule!r}; known guards: "
                f"{', '.join(guards.known_guards())}",
                line=lineno,
            )
        pattern = tuple(pattern_text.lower().split())
        if not pattern:
            raise ParseError("empty marker pattern", line=lineno)
        key = (pattern, lang)
        if key in seen:
            raise ParseError(
                f"duplicate entry {pattern_text!r} for language {lang}", line=lineno
            )
        seen.add(key)
        entries.append(
            MarkerEntry(
                pattern=pattern,
                ambiguous=ambiguous,
                context_rule=context_rule,
                language=lang,
            )
        )
    return Lexicon(entries=tuple(entries))


def load_lexicon(path) -> Lexicon:
    with open(path, encoding="utf-8") as fh:
        return parse_lexicon(fh.read())


def serialize_lexicon(lex: Lexicon) -> str:
    lines = []
    for e in lex.entries:
        context = e.context_rule if e.context_rule else "-"
        cls = "mk-amb" if e.ambiguous else "mk"
        lines.append(f"{e.pattern_text}\t{cls}\t{context}\t{e.language}")
    return "\n".join(lines) + ("\n" if lines else "")


def match_markers(
    sent: Sentence, lex: Lexicon, sentence_index: int = 0
) -> tuple[MarkerMatch, ...]:
    """Leftmost-longest, non-overlapping marker matching.

    Comparison is over lowercased token forms. At each position the
    longest matching pattern wins and matching resumes after its end.
    """
    forms = [tok.form.lower() for tok in sent.tokens]
    by_length = sorted(lex.entries, key=lambda e: len(e.pattern), reverse=True)
    matches: list[MarkerMatch] = []
    i = 0
    while i < len(forms):
        hit = None
        for entry in by_length:
            k = len(entry.pattern)
            if forms[i : i + k] == list(entry.pattern):
                hit = entry
                break
        if hit is None:
            i += 1
            continue
        matches.append(
            MarkerMatch(
                sentence_index=sentence_index,
                start=i,
                end=i + len(hit.pattern),
                entry=hit,
                resolved=not hit.ambiguous,
            )
        )
        i += len(hit.pattern)
    return tuple(matches)


def disambiguate(match: MarkerMatch, sent: Sentence) -> MarkerMatch:
    """Apply an ambiguous match's context rule over the whole sentence.

    Returns the match with `resolved` set to the guard's verdict.
    Passing a non-ambiguous match is a contract violation.
    """
    if not match.entry.ambiguous:
        raise ValidationError(
            f"disambiguate() requires an ambiguous marker, got {match.entry.pattern_text!r}"
        )
    ok = guards.evaluate(
        match.entry.context_rule,
        sent,
        match.start,
        match.end,
        0,
        len(sent.tokens),
    )
    return replace(match, resolved=ok)
