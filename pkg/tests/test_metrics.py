"""Evaluation metrics against hand counts and independent oracles."""

import math
import random

import pytest
import scipy.special
import scipy.stats

from catseg.errors import AlignmentError, ValidationError
from catseg.formats import GoldAnnotation, annotation_from_document, document_from_annotation
from catseg.metrics import (
    ALL_BOUNDARY,
    CLAUSE_UNITS,
    INTRA_BOUNDARY,
    SEGMENT_EXACT,
    WORD_UNITS,
    EvalReport,
    agreement_from_counts,
    boundary_labels,
    boundary_prf,
    cohen_kappa,
    combine_reports,
    f1,
    kappa_from_labels,
    paired_fold_ttest,
    raw_agreement,
    regularized_incomplete_beta,
    student_t_two_tailed_p,
)
from catseg.model import BoundarySet, SegmentedDocument

from support import load_micro, random_document, random_segmentation, sent


def ann(*sentences):
    """Annotation from (forms, gaps) pairs; forms is a space-split string."""
    segments = []
    gaps_out = []
    for forms_text, gaps in sentences:
        forms = forms_text.split()
        cuts = [0, *sorted(gaps), len(forms)]
        segments.append(
            tuple(tuple(forms[a:b]) for a, b in zip(cuts, cuts[1:]))
        )
        gaps_out.append(frozenset(gaps))
    return GoldAnnotation(
        segments=tuple(segments), boundaries=BoundarySet(tuple(gaps_out))
    )


def seg_doc(*sentences):
    """System document from (forms, gaps) pairs with dummy tags."""
    sents = []
    gaps_out = []
    for forms_text, gaps in sentences:
        forms = forms_text.split()
        sents.append(sent(*((f, f, "X") for f in forms)))
        gaps_out.append(frozenset(gaps))
    return SegmentedDocument(
        sentences=tuple(sents), boundaries=BoundarySet(tuple(gaps_out))
    )


class TestF1:
    def test_published_style_values(self):
        assert f1(0.68, 0.85) == pytest.approx(0.7555555556, abs=1e-9)
        assert f1(0.44, 0.65) == pytest.approx(0.5247706422, abs=1e-9)
        assert f1(1.0, 0.1) == pytest.approx(0.1818181818, abs=1e-9)

    def test_zero_when_both_zero(self):
        assert f1(0.0, 0.0) == 0.0

    def test_range_checked(self):
        with pytest.raises(ValidationError):
            f1(1.2, 0.5)
        with pytest.raises(ValidationError):
            f1(0.5, -0.1)

    def test_harmonic_mean_never_exceeds_arithmetic(self):
        rng = random.Random(2)
        for _ in range(200):
            p, r = rng.random(), rng.random()
            assert f1(p, r) <= (p + r) / 2 + 1e-12
            assert f1(p, r) <= max(p, r) + 1e-12


class TestConventions:
    def test_empty_system_is_vacuously_precise(self):
        report = EvalReport(INTRA_BOUNDARY, 0, 0, 5)
        assert report.precision == 1.0
        assert report.recall == 0.0
        assert report.f_score == 0.0

    def test_empty_gold_is_vacuously_recalled(self):
        report = EvalReport(INTRA_BOUNDARY, 0, 5, 0)
        assert report.recall == 1.0
        assert report.precision == 0.0


class TestBoundaryPrf:
    def _micro_pair(self, doc_id):
        doc, gold, expected = load_micro(doc_id)
        system = document_from_annotation(expected, doc)
        return system, gold

    def test_micro_intra_counts(self):
        reports = [
            boundary_prf(*self._micro_pair(doc_id), INTRA_BOUNDARY)
            for doc_id in ("despres", "coordinacio", "costbaix")
        ]
        combined = combine_reports(reports)
        assert (combined.true_positives, combined.system_count, combined.gold_count) == (
            1,
            2,
            2,
        )
        assert combined.precision == 0.5
        assert combined.recall == 0.5
        assert combined.f_score == 0.5

    def test_micro_all_boundary_adds_shared_items(self):
        # Only "despres" has a second sentence, so the corpus gains one
        # trivially shared boundary on each side.
        reports = [
            boundary_prf(*self._micro_pair(doc_id), ALL_BOUNDARY)
            for doc_id in ("despres", "coordinacio", "costbaix")
        ]
        combined = combine_reports(reports)
        assert (combined.true_positives, combined.system_count, combined.gold_count) == (
            2,
            3,
            3,
        )

    def test_micro_segment_exact(self):
        reports = [
            boundary_prf(*self._micro_pair(doc_id), SEGMENT_EXACT)
            for doc_id in ("despres", "coordinacio", "costbaix")
        ]
        combined = combine_reports(reports)
        assert (combined.true_positives, combined.system_count, combined.gold_count) == (
            3,
            6,
            6,
        )

    def test_whole_sentence_convention_only_adds_hits(self):
        system, gold = self._micro_pair("costbaix")
        plain = boundary_prf(system, gold, SEGMENT_EXACT)
        lenient = boundary_prf(
            system, gold, SEGMENT_EXACT, sentences_count_as_correct=True
        )
        # The system leaves the sentence whole; the reference splits it.
        assert (plain.true_positives, lenient.true_positives) == (0, 1)
        assert plain.gold_count == lenient.gold_count == 2

    def test_perfect_system_scores_one_in_every_mode(self):
        rng = random.Random(17)
        for mode in (INTRA_BOUNDARY, ALL_BOUNDARY, SEGMENT_EXACT):
            doc = random_segmentation(rng, random_document(rng))
            report = boundary_prf(doc, annotation_from_document(doc), mode)
            assert report.precision == 1.0
            assert report.recall == 1.0
            assert report.f_score == 1.0

    def test_unknown_mode_rejected(self):
        system, gold = self._micro_pair("costbaix")
        with pytest.raises(ValidationError):
            boundary_prf(system, gold, "strict")

    def test_mismatched_tokens_rejected(self):
        system = seg_doc(("a b c", ()))
        gold = ann(("a b d", ()))
        with pytest.raises(AlignmentError):
            boundary_prf(system, gold)

    def test_counts_are_symmetric_between_system_and_gold(self):
        rng = random.Random(31)
        for _ in range(50):
            doc = random_document(rng)
            x = random_segmentation(rng, doc)
            y = random_segmentation(rng, doc)
            fwd = boundary_prf(x, annotation_from_document(y))
            rev = boundary_prf(y, annotation_from_document(x))
            assert fwd.precision == rev.recall
            assert fwd.recall == rev.precision
            assert fwd.f_score == pytest.approx(rev.f_score, abs=1e-12)


class TestCombine:
    def test_sum_not_average(self):
        a = EvalReport(INTRA_BOUNDARY, 1, 2, 4)
        b = EvalReport(INTRA_BOUNDARY, 3, 4, 4)
        c = combine_reports([a, b])
        assert (c.true_positives, c.system_count, c.gold_count) == (4, 6, 8)
        # Micro-averaged, not the mean of the two precisions.
        assert c.precision == 4 / 6

    def test_mode_mismatch_rejected(self):
        with pytest.raises(ValidationError):
            combine_reports(
                [
                    EvalReport(INTRA_BOUNDARY, 1, 1, 1),
                    EvalReport(SEGMENT_EXACT, 1, 1, 1),
                ]
            )

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            combine_reports([])


class TestRawAgreement:
    def test_union_of_proposals(self):
        a = ann(("a b c d e", {1, 3}))
        b = ann(("a b c d e", {1, 4}))
        report = raw_agreement(a, b)
        assert (report.agreed, report.disagreed) == (1, 2)
        assert report.raw_agreement == pytest.approx(1 / 3)

    def test_nothing_proposed_counts_as_full_agreement(self):
        a = ann(("a b c", ()))
        report = raw_agreement(a, a)
        assert report.raw_agreement == 1.0

    def test_from_counts(self):
        report = agreement_from_counts(264, 23)
        assert report.raw_agreement == pytest.approx(0.9199, abs=0.0005)

    def test_negative_counts_rejected(self):
        with pytest.raises(ValidationError):
            agreement_from_counts(-1, 3)

    def test_mismatched_annotations_rejected(self):
        with pytest.raises(AlignmentError):
            raw_agreement(ann(("a b", ())), ann(("a c", ())))


class TestKappa:
    def test_hand_worked_labels(self):
        # agreed 3/4, chance 0.5: kappa (0.75 - 0.5) / 0.5 = 0.5.
        report = kappa_from_labels((1, 0, 0, 1), (1, 0, 0, 0))
        assert report.kappa == pytest.approx(0.5, abs=1e-9)
        assert (report.agreed, report.disagreed) == (3, 1)

    def test_word_mode_items_are_every_gap(self):
        a = ann(("a b c d e f", {2}))
        b = ann(("a b c d e f", {2, 4}))
        labels_a, labels_b = boundary_labels(a, b, WORD_UNITS)
        assert labels_a == (0, 1, 0, 0, 0)
        assert labels_b == (0, 1, 0, 1, 0)
        report = cohen_kappa(a, b, WORD_UNITS)
        assert report.kappa == pytest.approx(0.24 / 0.44, abs=1e-9)

    def test_clause_mode_items_are_proposals_plus_sentence_end(self):
        a = ann(("a b c d e f", {2}))
        b = ann(("a b c d e f", {2, 4}))
        labels_a, labels_b = boundary_labels(a, b, CLAUSE_UNITS)
        assert labels_a == (1, 0, 1)
        assert labels_b == (1, 1, 1)
        report = cohen_kappa(a, b, CLAUSE_UNITS)
        # Observed agreement equals chance agreement here, so zero.
        assert report.kappa == pytest.approx(0.0, abs=1e-12)
        assert report.raw_agreement == pytest.approx(2 / 3)

    def test_identical_annotations_score_one(self):
        a = ann(("a b c d", {2}), ("e f", ()))
        for mode in (WORD_UNITS, CLAUSE_UNITS):
            assert cohen_kappa(a, a, mode).kappa == 1.0

    def test_kappa_never_exceeds_observed_agreement(self):
        rng = random.Random(43)
        for _ in range(1000):
            n = rng.randint(2, 30)
            la = tuple(rng.randint(0, 1) for _ in range(n))
            lb = tuple(rng.randint(0, 1) for _ in range(n))
            report = kappa_from_labels(la, lb)
            p_o = report.agreed / n
            assert report.kappa <= p_o + 1e-12
            assert report.kappa <= 1.0 + 1e-12

    def test_unknown_unit_mode_rejected(self):
        a = ann(("a b", ()))
        with pytest.raises(ValidationError):
            boundary_labels(a, a, "sentence")

    def test_empty_labels_rejected(self):
        with pytest.raises(ValidationError):
            kappa_from_labels((), ())

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValidationError):
            kappa_from_labels((1, 0), (1,))


class TestIncompleteBeta:
    def test_against_scipy_on_a_grid(self):
        for a in (0.5, 1.0, 2.5, 7.0, 15.0):
            for b in (0.5, 1.0, 3.0, 9.5):
                for x in (0.001, 0.1, 0.3, 0.5, 0.7, 0.9, 0.999):
                    ours = regularized_incomplete_beta(a, b, x)
                    ref = float(scipy.special.betainc(a, b, x))
                    assert ours == pytest.approx(ref, abs=1e-10)

    def test_edges(self):
        assert regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0
        assert regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0
        with pytest.raises(ValidationError):
            regularized_incomplete_beta(0.0, 1.0, 0.5)

    def test_p_value_against_scipy(self):
        for t in (0.0, 0.5, 1.0, 2.0, 3.4641, 10.0):
            for df in (1, 2, 5, 9, 30):
                ours = student_t_two_tailed_p(t, df)
                ref = float(2.0 * scipy.stats.t.sf(abs(t), df))
                assert ours == pytest.approx(ref, abs=1e-10)

    def test_infinite_t(self):
        assert student_t_two_tailed_p(math.inf, 4) == 0.0


class TestPairedTTest:
    def test_known_example(self):
        # Differences 0.1, 0.2, 0.3: t = 2 * sqrt(3), p about 0.0742.
        report = paired_fold_ttest([0.8, 0.8, 0.8], [0.7, 0.6, 0.5])
        assert report.t_statistic == pytest.approx(2 * math.sqrt(3), abs=1e-9)
        assert report.degrees_of_freedom == 2
        assert report.p_value == pytest.approx(0.0742, abs=0.0005)
        assert not report.significant

    def test_against_scipy(self):
        rng = random.Random(67)
        for _ in range(100):
            n = rng.randint(2, 12)
            a = [rng.random() for _ in range(n)]
            b = [rng.random() for _ in range(n)]
            if all(x == y for x, y in zip(a, b)):
                continue
            ours = paired_fold_ttest(a, b)
            ref = scipy.stats.ttest_rel(a, b)
            assert ours.t_statistic == pytest.approx(float(ref.statistic), abs=1e-9)
            assert ours.p_value == pytest.approx(float(ref.pvalue), abs=1e-9)

    def test_identical_scores(self):
        report = paired_fold_ttest([0.5, 0.6, 0.7], [0.5, 0.6, 0.7])
        assert report.t_statistic == 0.0
        assert report.p_value == 1.0

    def test_constant_nonzero_difference(self):
        report = paired_fold_ttest([0.6, 0.7], [0.5, 0.6])
        assert math.isinf(report.t_statistic) and report.t_statistic > 0
        assert report.p_value == 0.0
        assert report.significant

    def test_sign_of_t_follows_direction(self):
        fwd = paired_fold_ttest([0.8, 0.9, 0.7], [0.5, 0.6, 0.4])
        rev = paired_fold_ttest([0.5, 0.6, 0.4], [0.8, 0.9, 0.7])
        assert fwd.t_statistic > 0 > rev.t_statistic
        assert fwd.p_value == pytest.approx(rev.p_value, abs=1e-12)

    def test_validation(self):
        with pytest.raises(ValidationError):
            paired_fold_ttest([0.1], [0.2])
        with pytest.raises(ValidationError):
            paired_fold_ttest([0.1, 0.2], [0.2])
        with pytest.raises(ValidationError):
            paired_fold_ttest([0.1, 0.2], [0.2, 0.3], alpha=1.5)

    def test_significance_threshold(self):
        report = paired_fold_ttest(
            [0.9, 0.91, 0.89, 0.9], [0.5, 0.52, 0.48, 0.5], alpha=0.05
        )
        assert report.p_value < 0.05
        assert report.significant
