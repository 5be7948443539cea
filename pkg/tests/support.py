"""Shared test helpers: token builders, random generators over a closed
vocabulary, and an independent brute-force boundary oracle.

The oracle deliberately re-implements trigger matching and guard
evaluation from the documented behaviour, without reusing the
segmenter's code, so the two paths can check each other.
"""

from __future__ import annotations

import random

from catseg.formats import VerticalDocument, load_gold, load_vertical
from catseg.model import BoundarySet, SegmentedDocument, Sentence, Token
from catseg import fixtures


def T(form: str, lemma: str, tag: str, index: int = 0) -> Token:
    return Token(index=index, form=form, lemma=lemma, tag=tag)


def sent(*specs: tuple[str, str, str], chunks=()) -> Sentence:
    tokens = tuple(
        Token(index=i, form=f, lemma=l, tag=t) for i, (f, l, t) in enumerate(specs)
    )
    return Sentence(tokens=tokens, chunks=tuple(chunks))


def doc_of(*sentences: Sentence) -> VerticalDocument:
    return VerticalDocument(metadata={}, sentences=tuple(sentences))


def load_micro(doc_id: str):
    vrt, gold, expected = fixtures.micro_paths(doc_id)
    doc = load_vertical(vrt)
    return doc, load_gold(gold, doc), load_gold(expected, doc)


# --- random sentence generation over a closed vocabulary ---------------

# (form, lemma, tag) triples; tags follow the positional convention the
# segmenter reads (category first, verb mood third).
VOCAB = [
    ("el", "el", "DA0MS0"),
    ("la", "el", "DA0FS0"),
    ("gos", "gos", "NCMS000"),
    ("casa", "casa", "NCFS000"),
    ("prova", "prova", "NCFS000"),
    ("test", "test", "NCMS000"),
    ("corre", "córrer", "VMIP3S0"),
    ("salta", "saltar", "VMIP3S0"),
    ("era", "ser", "VSII3S0"),
    ("córrer", "córrer", "VMN0000"),
    ("corrent", "córrer", "VMG0000"),
    ("fet", "fer", "VMP00SM"),
    ("i", "i", "CC"),
    ("o", "o", "CC"),
    ("però", "però", "CC"),
    ("que", "que", "CS"),
    ("de", "de", "SPS00"),
    ("del", "del", "SPCMS"),
    ("en", "en", "SPS00"),
    (",", ",", "Fc"),
    ("(", "(", "Fpa"),
    (")", ")", "Fpt"),
    ("-", "-", "Fg"),
    ("ràpid", "ràpid", "AQ0MS0"),
    ("aleshores", "aleshores", "RG"),
    ("tot", "tot", "RG"),
    ("seguit", "seguit", "AQ0MS0"),
    ("després", "després", "RG"),
    ("com", "com", "CS"),
    ("a", "a", "SPS00"),
    ("mostra", "mostra", "NCFS000"),
]

# Multi-token snippets occasionally injected so markers, guards and
# paired punctuation all get exercised.
SNIPPETS = [
    [("tot", "tot", "RG"), ("i", "i", "CC"), ("que", "que", "CS")],
    [("tot", "tot", "RG"), ("seguit", "seguit", "AQ0MS0")],
    [("després", "després", "RG"), ("de", "de", "SPS00"), ("córrer", "córrer", "VMN0000")],
    [("després", "després", "RG"), ("del", "del", "SPCMS"), ("test", "test", "NCMS000")],
    [("com", "com", "CS"), ("a", "a", "SPS00"), ("mostra", "mostra", "NCFS000")],
    [("(", "(", "Fpa"), ("corre", "córrer", "VMIP3S0"), (")", ")", "Fpt")],
    [("(", "(", "Fpa"), ("test", "test", "NCMS000"), (")", ")", "Fpt")],
    [("i", "i", "CC"), ("salta", "saltar", "VMIP3S0")],
]


def random_sentence(rng: random.Random, max_len: int = 12) -> Sentence:
    specs: list[tuple[str, str, str]] = []
    target = rng.randint(1, max_len)
    while len(specs) < target:
        if rng.random() < 0.35:
            snippet = rng.choice(SNIPPETS)
            specs.extend(snippet)
        else:
            specs.append(rng.choice(VOCAB))
    specs = specs[:max_len]
    return sent(*specs)


def random_document(
    rng: random.Random, max_sentences: int = 4, max_len: int = 12
) -> VerticalDocument:
    n = rng.randint(1, max_sentences)
    return doc_of(*(random_sentence(rng, max_len) for _ in range(n)))


def random_segmentation(rng: random.Random, doc: VerticalDocument) -> SegmentedDocument:
    gaps = []
    for s in doc.sentences:
        gaps.append(
            frozenset(
                g for g in range(1, len(s.tokens)) if rng.random() < 0.3
            )
        )
    return SegmentedDocument(
        sentences=doc.sentences, boundaries=BoundarySet(tuple(gaps))
    )


# --- independent boundary oracle ---------------------------------------

_FINITE = set("ISM")
_NONFINITE = set("NGP")
_OPENERS = {"Fpa": "Fpt", "Fca": "Fct", "Fra": "Frc"}
_CLOSERS = {v: k for k, v in _OPENERS.items()}


def _o_is_verb(tag):
    return tag[:1] == "V"


def _o_is_finite(tag):
    return tag[:1] == "V" and len(tag) > 2 and tag[2] in _FINITE


def _o_is_nonfinite(tag):
    return tag[:1] == "V" and len(tag) > 2 and tag[2] in _NONFINITE


def _o_covered(sentence: Sentence) -> set[int]:
    out = set()
    for c in sentence.chunks:
        if c.label in ("disc-mk", "disc-mk-amb"):
            for i in range(c.start, c.end):
                out.add(i)
    return out


def _o_guard(name, sentence, span, seg):
    toks = sentence.tokens
    s, e = span
    a, b = seg
    if name == "FINITE_VERB_RIGHT":
        return any(_o_is_finite(toks[i].tag) for i in range(e, b))
    if name == "VERB_RIGHT":
        return any(_o_is_verb(toks[i].tag) for i in range(e, b))
    if name == "VERB_LEFT":
        return any(_o_is_verb(toks[i].tag) for i in range(a, s))
    if name == "VERB_INSIDE":
        return any(_o_is_verb(toks[i].tag) for i in range(s + 1, e - 1))
    if name == "NONFINITE_AFTER_DE":
        if e >= b:
            return False
        prep = toks[e]
        if prep.tag[:1] != "S":
            return False
        if prep.lemma not in ("de", "del", "dels") and prep.form.lower() not in (
            "del",
            "dels",
        ):
            return False
        for i in range(e + 1, b):
            if _o_is_nonfinite(toks[i].tag):
                return True
            if _o_is_finite(toks[i].tag):
                return False
        return False
    raise AssertionError(f"oracle knows no guard {name}")


def _o_pairs(sentence, a, b, covered):
    pairs = []
    stack = []
    dash = None
    for i in range(a, b):
        if i in covered:
            continue
        tag = sentence.tokens[i].tag
        if tag in _OPENERS:
            stack.append((tag, i))
        elif tag in _CLOSERS:
            if stack and stack[-1][0] == _CLOSERS[tag]:
                pairs.append((stack.pop()[1], i))
        elif tag == "Fg":
            if dash is None:
                dash = i
            else:
                pairs.append((dash, i))
                dash = None
    return pairs


def _o_spans(rule, sentence, a, b, covered):
    kind, value = rule.trigger
    if kind == "cat":
        return [
            (c.start, c.end)
            for c in sentence.chunks
            if c.label == value and a <= c.start and c.end <= b
        ]
    if kind == "conj":
        return [
            (i, i + 1)
            for i in range(a, b)
            if i not in covered
            and sentence.tokens[i].tag[:2] == "CC"
            and sentence.tokens[i].lemma == value
        ]
    return [(i, j + 1) for i, j in _o_pairs(sentence, a, b, covered)]


def oracle_boundaries(doc: VerticalDocument, ruleset, passes: int = 2) -> BoundarySet:
    """Gap-by-gap evaluation of every rule, independent of the engine.

    Per pass: a gap is inserted when some enabled rule has an unconsumed
    trigger occurrence inside the current segment whose action lands on
    that gap (strictly inside the segment) with a passing guard. All
    occurrences that fired are consumed at the end of the pass.
    """
    per_sentence = []
    for sentence in doc.sentences:
        covered = _o_covered(sentence)
        gaps: set[int] = set()
        consumed: set[tuple] = set()
        for _ in range(passes):
            cuts = [0, *sorted(gaps), len(sentence.tokens)]
            segments = list(zip(cuts, cuts[1:]))
            fired = set()
            for a, b in segments:
                for g in range(a + 1, b):
                    for rule in ruleset.rules:
                        if not rule.enabled:
                            continue
                        for span in _o_spans(rule, sentence, a, b, covered):
                            key = (rule.name, span)
                            if key in consumed:
                                continue
                            lands = span[0] if rule.action == "before" else span[1]
                            if lands != g:
                                continue
                            if rule.guard and not _o_guard(
                                rule.guard, sentence, span, (a, b)
                            ):
                                continue
                            gaps.add(g)
                            fired.add(key)
            consumed |= fired
        per_sentence.append(frozenset(gaps))
    return BoundarySet(tuple(per_sentence))
