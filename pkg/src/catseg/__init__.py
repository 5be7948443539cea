"""Rule-based discourse segmentation toolkit for Catalan.

The pipeline tags discourse markers from a lexicon, applies priority-
ordered boundary rules in two passes, and merges verbless fragments so
that every discourse unit contains a verb. Spanish rule sets and
lexicons can be ported to Catalan through a translation map, and an
evaluation suite covers precision/recall/F, raw agreement, Cohen's
kappa and paired significance testing.
"""

from .baselines import baseline_conjunctions, baseline_sentences
from .errors import (
    AlignmentError,
    CatsegError,
    ConfigError,
    ParseError,
    ValidationError,
)
from .formats import (
    GoldAnnotation,
    VerticalDocument,
    annotation_from_document,
    document_from_annotation,
    load_gold,
    load_vertical,
    parse_gold,
    parse_vertical,
    serialize_segments,
)
from .lexicon import (
    Lexicon,
    MarkerEntry,
    MarkerMatch,
    disambiguate,
    load_lexicon,
    match_markers,
    parse_lexicon,
)
from .metrics import (
    AgreementReport,
    EvalReport,
    SignificanceReport,
    agreement_from_counts,
    boundary_prf,
    cohen_kappa,
    f1,
    paired_fold_ttest,
    raw_agreement,
)
from .model import (
    BoundarySet,
    ChunkNode,
    CorpusStats,
    SegmentedDocument,
    Sentence,
    Token,
    compute_corpus_stats,
)
from .porting import (
    PortReport,
    TranslationMap,
    load_map,
    parse_map,
    translate_lexicon,
    translate_ruleset,
)
from .rules import Rule, RuleSet, load_rules, parse_rules
from .segmenter import detect_boundaries, form_edus, recategorize, segment

__version__ = "0.1.0"

__all__ = [
    "AgreementReport",
    "AlignmentError",
    "BoundarySet",
    "CatsegError",
    "ChunkNode",
    "ConfigError",
    "CorpusStats",
    "EvalReport",
    "GoldAnnotation",
    "Lexicon",
    "MarkerEntry",
    "MarkerMatch",
    "ParseError",
    "PortReport",
    "Rule",
    "RuleSet",
    "SegmentedDocument",
    "Sentence",
    "SignificanceReport",
    "Token",
    "TranslationMap",
    "ValidationError",
    "VerticalDocument",
    "agreement_from_counts",
    "annotation_from_document",
    "baseline_conjunctions",
    "baseline_sentences",
    "boundary_prf",
    "cohen_kappa",
    "compute_corpus_stats",
    "detect_boundaries",
    "disambiguate",
    "document_from_annotation",
    "f1",
    "form_edus",
    "load_gold",
    "load_lexicon",
    "load_map",
    "load_rules",
    "load_vertical",
    "match_markers",
    "paired_fold_ttest",
    "parse_gold",
    "parse_lexicon",
    "parse_map",
    "parse_rules",
    "parse_vertical",
    "raw_agreement",
    "recategorize",
    "segment",
    "serialize_segments",
    "translate_lexicon",
    "translate_ruleset",
]
