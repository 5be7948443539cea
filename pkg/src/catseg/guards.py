"""Context guard predicates shared by the marker lexicon and the rules.

Guards form a closed set referenced by id from lexicon entries (context
rules for ambiguous markers) and from boundary rules. Each predicate
sees the sentence, the trigger span [span_start, span_end) and the
extent [seg_start, seg_end) of the segment currently being scanned.
During marker disambiguation the segment is the whole sentence; during
the second boundary pass, segment edges act as sentence edges.
"""

from __future__ import annotations

from typing import Callable

from .errors import ConfigError
from .model import Sentence, is_finite_verb, is_nonfinite_verb, is_verb

GuardFn = Callable[[Sentence, int, int, int, int], bool]

_DE_LEMMAS = {"de", "del", "dels"}
_DE_CONTRACTED_FORMS = {"del", "dels"}


def _finite_verb_right(sent: Sentence, span_start, span_end, seg_start, seg_end) -> bool:
    return any(
        is_finite_verb(tok.tag) for tok in sent.tokens[span_end:seg_end]
    )


def _verb_right(sent: Sentence, span_start, span_end, seg_start, seg_end) -> bool:
    return any(is_verb(tok.tag) for tok in sent.tokens[span_end:seg_end])


def _verb_left(sent: Sentence, span_start, span_end, seg_start, seg_end) -> bool:
    return any(is_verb(tok.tag) for tok in sent.tokens[seg_start:span_start])


def _nonfinite_after_de(sent: Sentence, span_start, span_end, seg_start, seg_end) -> bool:
    """The span is followed by the preposition "de" (or a contraction
    "del"/"dels") and a non-finite verb appears before the next finite
    verb or the segment end.

    This is the temporal-vs-marker test for "despres": "despres de" +
    infinitive introduces a discourse segment, while "despres del" +
    noun phrase headed by a finite verb is a plain time adverb.
    """
    if span_end >= seg_end:
        return False
    prep = sent.tokens[span_end]
    looks_like_de = (
        prep.lemma in _DE_LEMMAS or prep.form.lower() in _DE_CONTRACTED_FORMS
    )
    if not (prep.tag.startswith("S") and looks_like_de):
        return False
    for tok in sent.tokens[span_end + 1 : seg_end]:
        if is_nonfinite_verb(tok.tag):
            return True
        if is_finite_verb(tok.tag):
            return False
    return False


def _verb_inside(sent: Sentence, span_start, span_end, seg_start, seg_end) -> bool:
    """A verb strictly inside the trigger span, delimiters excluded.
    Used by paired-punctuation rules, whose span covers both delimiters."""
    return any(
        is_verb(tok.tag) for tok in sent.tokens[span_start + 1 : span_end - 1]
    )


GUARDS: dict[str, GuardFn] = {
    "FINITE_VERB_RIGHT": _finite_verb_right,
    "VERB_RIGHT": _verb_right,
    "VERB_LEFT": _verb_left,
    "NONFINITE_AFTER_DE": _nonfinite_after_de,
    "VERB_INSIDE": _verb_inside,
}


def known_guards() -> tuple[str, ...]:
    return tuple(sorted(GUARDS))


def evaluate(
    name: str,
    sent: Sentence,
    span_start: int,
    span_end: int,
    seg_start: int,
    seg_end: int,
) -> bool:
    """Evaluate guard `name`; unknown ids raise ConfigError."""
    try:
        fn = GUARDS[name]
    except KeyError:
        raise ConfigError(
            f"unknown guard {name!r}; known guards: {', '.join(known_guards())}"
        ) from None
    return fn(sent, span_start, span_end, seg_start, seg_end)
