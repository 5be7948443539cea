"""Bundled resources: seed lexicons, rule sets, the translation map and
a small hand-tagged Catalan corpus with reference and expected-output
segmentations.

The expected .seg files freeze the segmenter's documented behaviour on
the sample corpus, including its known mistakes (an over-segmented
coordination, a missed comma split), so regressions show up as byte
diffs.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib.resources import files
from pathlib import Path

from . import porting, rules, segmenter
from .errors import CatsegError
from .formats import load_gold, load_vertical, serialize_segments
from .lexicon import load_lexicon

MICRO_DOC_IDS = ("despres", "coordinacio", "costbaix")


def data_dir() -> Path:
    return Path(str(files("catseg") / "data"))


def ca_lexicon_path() -> Path:
    return data_dir() / "ca_markers.tsv"


def es_lexicon_path() -> Path:
    return data_dir() / "es_markers.tsv"


def ca_rules_path() -> Path:
    return data_dir() / "ca.rules"


def es_rules_path() -> Path:
    return data_dir() / "es.rules"


def map_path() -> Path:
    return data_dir() / "es-ca.map"


def micro_paths(doc_id: str, base: Path | None = None) -> tuple[Path, Path, Path]:
    """(.vrt, gold .seg, expected .seg) paths for one sample document."""
    root = (base or data_dir()) / "micro"
    return (
        root / f"{doc_id}.vrt",
        root / f"{doc_id}.gold.seg",
        root / f"{doc_id}.expected.seg",
    )


@dataclass(frozen=True)
class FixtureReport:
    ok: bool
    problems: tuple[str, ...]
    lexicon_counts: dict[str, tuple[int, int]]


def validate_fixtures(base: Path | None = None) -> FixtureReport:
    """Check that every bundled resource parses, aligns and still
    reproduces the expected segmenter output byte for byte.

    lexicon_counts maps language to (non-ambiguous, ambiguous) counts.
    """
    root = base or data_dir()
    problems: list[str] = []
    counts: dict[str, tuple[int, int]] = {}

    ca_lex = ca_rule_set = None
    for name, loader in (
        ("ca_markers.tsv", load_lexicon),
        ("es_markers.tsv", load_lexicon),
    ):
        try:
            lex = loader(root / name)
            counts[name.split("_")[0]] = (lex.num_non_ambiguous, lex.num_ambiguous)
            if name.startswith("ca"):
                ca_lex = lex
        except (CatsegError, OSError) as exc:
            problems.append(f"{name}: {exc}")
    for name, language in (("ca.rules", "ca"), ("es.rules", "es")):
        try:
            rs = rules.load_rules(root / name, language=language)
            if language == "ca":
                ca_rule_set = rs
        except (CatsegError, OSError) as exc:
            problems.append(f"{name}: {exc}")
    try:
        porting.load_map(root / "es-ca.map")
    except (CatsegError, OSError) as exc:
        problems.append(f"es-ca.map: {exc}")

    for doc_id in MICRO_DOC_IDS:
        vrt_path, gold_path, expected_path = micro_paths(doc_id, base=root)
        try:
            doc = load_vertical(vrt_path)
        except (CatsegError, OSError) as exc:
            problems.append(f"{vrt_path.name}: {exc}")
            continue
        for seg_path in (gold_path, expected_path):
            try:
                load_gold(seg_path, doc)
            except (CatsegError, OSError) as exc:
                problems.append(f"{seg_path.name}: {exc}")
        if ca_lex is None or ca_rule_set is None:
            continue
        try:
            produced = serialize_segments(segmenter.segment(doc, ca_lex, ca_rule_set))
            on_disk = expected_path.read_text(encoding="utf-8")
            if produced != on_disk:
                problems.append(
                    f"{expected_path.name}: segmenter output no longer matches"
                )
        except (CatsegError, OSError) as exc:
            problems.append(f"{doc_id}: {exc}")

    return FixtureReport(
        ok=not problems, problems=tuple(problems), lexicon_counts=counts
    )
