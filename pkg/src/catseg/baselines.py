"""Reference baselines the segmenter is compared against.

Baseline 1 places a boundary before every coordinating conjunction,
with no guards and no verb-based merging. Baseline 2 leaves sentences
whole, treating each sentence as one discourse segment.
"""

from __future__ import annotations

from .formats import VerticalDocument
from .model import BoundarySet, SegmentedDocument


def baseline_conjunctions(doc: VerticalDocument) -> SegmentedDocument:
    """Boundary before every CC-tagged token (except in first position,
    where no intra-sentence gap exists)."""
    gaps = []
    for sent in doc.sentences:
        gaps.append(
            frozenset(
                i
                for i, tok in enumerate(sent.tokens)
                if i >= 1 and tok.tag.startswith("CC")
            )
        )
    return SegmentedDocument(
        sentences=doc.sentences, boundaries=BoundarySet(tuple(gaps))
    )


def baseline_sentences(doc: VerticalDocument) -> SegmentedDocument:
    """Every sentence is a single segment: no intra-sentence boundaries."""
    return SegmentedDocument(
        sentences=doc.sentences,
        boundaries=BoundarySet.empty(len(doc.sentences)),
    )
