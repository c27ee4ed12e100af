"""Stemmed matching, macro scores, PR curves, paired t-test."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from topickey.evaluation import (evaluate, macro_average, match,
                                 paired_t_test, pr_curve, score_document)
from topickey.text import IdentityStemmer, PorterStemmer
from topickey.topicrank import RankedKeyphrase, RankingResult

from helpers import make_doc
from oracles import t_test_reference, tally_scores


def result_of(doc_id, *texts, source="extracted"):
    return RankingResult(document_id=doc_id, keyphrases=[
        RankedKeyphrase(text=t, score=float(len(texts) - i),
                        source=source)
        for i, t in enumerate(texts)])


def doc_with_refs(doc_id, refs):
    return make_doc(doc_id, [[("pad", "N")]], refs=refs)


class TestMatch:
    def test_stem_equality(self):
        assert match("Semantic Variations", ["semantic variation"],
                     PorterStemmer()) == 0

    def test_no_partial_credit(self):
        assert match("semantics", ["semantic variation"],
                     PorterStemmer()) is None

    def test_consumption(self):
        doc = doc_with_refs("d", ["x"])
        score = score_document(result_of("d", "x", "x"), doc, 10,
                               IdentityStemmer())
        assert (score.tp, score.fp) == (1, 1)

    def test_reference_permutation_stable(self):
        refs = ["alpha beta", "gamma", "delta"]
        outputs = ["gamma", "delta", "zeta"]
        stemmer = IdentityStemmer()
        baseline = None
        for _ in range(6):
            shuffled = refs[:]
            random.shuffle(shuffled)
            doc = doc_with_refs("d", shuffled)
            tp = score_document(result_of("d", *outputs), doc, 10,
                                stemmer).tp
            baseline = tp if baseline is None else baseline
            assert tp == baseline


class TestScoreDocument:
    def test_formula_spot_check(self):
        refs = [f"ref {i}" for i in range(9)]
        outputs = refs[:5] + [f"bogus {i}" for i in range(5)]
        doc = doc_with_refs("d", refs)
        score = score_document(result_of("d", *outputs), doc, 10,
                               IdentityStemmer())
        assert (score.tp, score.fp, score.fn) == (5, 5, 4)
        assert score.precision == pytest.approx(0.5)
        assert score.recall == pytest.approx(5 / 9)
        assert score.f1 == pytest.approx(0.5263, abs=1e-4)

    def test_zero_outputs(self):
        doc = doc_with_refs("d", ["a"])
        score = score_document(result_of("d"), doc, 10,
                               IdentityStemmer())
        assert (score.precision, score.recall, score.f1) == (0.0, 0.0, 0.0)

    def test_perfect_top_ten(self):
        refs = [f"ref {i}" for i in range(10)]
        doc = doc_with_refs("d", refs)
        score = score_document(result_of("d", *refs), doc, 10,
                               IdentityStemmer())
        assert (score.precision, score.recall, score.f1) == (1.0, 1.0, 1.0)

    def test_zero_references_flagged(self):
        doc = doc_with_refs("d", [])
        score = score_document(result_of("d", "anything"), doc, 10,
                               IdentityStemmer())
        assert score.zero_references
        assert score.recall == 0.0

    def test_cutoff_truncates(self):
        refs = ["a", "b", "c"]
        doc = doc_with_refs("d", refs)
        score = score_document(result_of("d", "x", "a", "b"), doc, 2,
                               IdentityStemmer())
        assert (score.tp, score.fp, score.fn) == (1, 1, 2)

    @given(st.integers(0, 2 ** 31), st.integers(1, 12))
    @settings(max_examples=80, deadline=None)
    def test_identities_and_tally_oracle(self, seed, cutoff):
        rng = random.Random(seed)
        pool = [f"phrase {i}" for i in range(10)]
        refs = rng.sample(pool, rng.randint(0, 6))
        outputs = [rng.choice(pool) for _ in range(rng.randint(0, 8))]
        doc = doc_with_refs("d", refs)
        score = score_document(result_of("d", *outputs), doc, cutoff,
                               IdentityStemmer())
        assert score.tp + score.fp == min(cutoff, len(outputs))
        assert score.tp + score.fn == len(refs)
        tp, fp, fn, p, r, f = tally_scores(outputs, refs,
                                           IdentityStemmer(), cutoff)
        assert (score.tp, score.fp, score.fn) == (tp, fp, fn)
        assert score.precision == pytest.approx(p)
        assert score.recall == pytest.approx(r)
        assert score.f1 == pytest.approx(f)


class TestMacroAverage:
    def test_mean_of_f(self):
        docs = {"a": doc_with_refs("a", ["x", "y"]),
                "b": doc_with_refs("b", ["x"])}
        results = [result_of("a", "x", "q"), result_of("b", "x")]
        report = evaluate(results, docs, 10, IdentityStemmer())
        # doc a: P=1/2 R=1/2 F=1/2; doc b: perfect
        assert report.macro_f1 == pytest.approx((0.5 + 1.0) / 2)
        assert report.macro_precision == pytest.approx(0.75)

    def test_single_document_macro_equals_per_doc(self):
        docs = {"a": doc_with_refs("a", ["x", "y"])}
        results = [result_of("a", "x")]
        report = evaluate(results, docs, 10, IdentityStemmer())
        assert report.macro_f1 == report.documents[0].f1

    def test_f_averaged_directly(self):
        scores = [score_document(result_of("a", "x"),
                                 doc_with_refs("a", ["x", "y", "z"]), 10,
                                 IdentityStemmer()),
                  score_document(result_of("b", "q", "r"),
                                 doc_with_refs("b", ["q"]), 10,
                                 IdentityStemmer())]
        report = macro_average(scores, 10)
        direct = (scores[0].f1 + scores[1].f1) / 2
        recomputed = 2 * report.macro_precision * report.macro_recall / \
            (report.macro_precision + report.macro_recall)
        assert report.macro_f1 == pytest.approx(direct)
        assert report.macro_f1 != pytest.approx(recomputed)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            macro_average([], 10)

    def test_unknown_id_rejected(self):
        docs = {"a": doc_with_refs("a", ["x"])}
        with pytest.raises(ValueError, match="absent"):
            evaluate([result_of("ghost", "x")], docs, 10,
                     IdentityStemmer())

    def test_micro_pooling(self):
        docs = {"a": doc_with_refs("a", ["x", "y"]),
                "b": doc_with_refs("b", ["x"])}
        results = [result_of("a", "x", "q"), result_of("b", "x")]
        report = evaluate(results, docs, 10, IdentityStemmer(),
                          micro=True)
        tp, fp, fn = 2, 1, 1
        assert report.micro[0] == pytest.approx(tp / (tp + fp))
        assert report.micro[1] == pytest.approx(tp / (tp + fn))


class TestPRCurve:
    def build(self):
        docs = {"a": doc_with_refs("a", ["one", "two", "three"]),
                "b": doc_with_refs("b", ["one", "four"])}
        results = [result_of("a", "one", "zzz", "two"),
                   result_of("b", "one")]
        return docs, results

    def test_top1_all_correct(self):
        docs, results = self.build()
        curve = pr_curve(results, docs, IdentityStemmer())
        assert curve.points[0].cutoff == 1
        assert curve.points[0].precision == pytest.approx(1.0)

    def test_last_point_matches_report(self):
        docs, results = self.build()
        curve = pr_curve(results, docs, IdentityStemmer())
        report = evaluate(results, docs, curve.points[-1].cutoff,
                          IdentityStemmer())
        assert curve.points[-1].precision == \
            pytest.approx(report.macro_precision)
        assert curve.points[-1].recall == \
            pytest.approx(report.macro_recall)

    def test_point_by_point_rescoring(self):
        docs, results = self.build()
        curve = pr_curve(results, docs, IdentityStemmer())
        for point in curve.points:
            ps, rs = [], []
            for result in results:
                outputs = [k.text for k in result.keyphrases]
                refs = list(docs[result.document_id].reference_keyphrases)
                _, _, _, p, r, _ = tally_scores(outputs, refs,
                                                IdentityStemmer(),
                                                point.cutoff)
                ps.append(p)
                rs.append(r)
            assert point.precision == pytest.approx(sum(ps) / len(ps))
            assert point.recall == pytest.approx(sum(rs) / len(rs))

    @given(st.integers(0, 2 ** 31))
    @settings(max_examples=40, deadline=None)
    def test_macro_recall_non_decreasing(self, seed):
        rng = random.Random(seed)
        pool = [f"p{i}" for i in range(8)]
        docs, results = {}, []
        for d in range(rng.randint(1, 4)):
            doc_id = f"d{d}"
            docs[doc_id] = doc_with_refs(doc_id,
                                         rng.sample(pool,
                                                    rng.randint(1, 5)))
            outputs = [rng.choice(pool)
                       for _ in range(rng.randint(1, 6))]
            results.append(result_of(doc_id, *outputs))
        curve = pr_curve(results, docs, IdentityStemmer())
        recalls = [p.recall for p in curve.points]
        assert recalls == sorted(recalls)


class TestPairedTTest:
    def test_identical_lists(self):
        result = paired_t_test([0.1, 0.5, 0.4], [0.1, 0.5, 0.4])
        assert (result.t, result.p) == (0.0, 1.0)

    def test_constant_nonzero_difference(self):
        # binary-exact values so the difference variance is exactly zero
        a = [0.25, 0.5, 0.75, 1.0, 1.25]
        b = [x - 0.25 for x in a]
        result = paired_t_test(a, b)
        assert result.zero_variance
        assert result.p == 0.0
        assert math.isinf(result.t)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            paired_t_test([0.1], [0.1, 0.2])

    def test_matches_textbook_oracle(self):
        rng = random.Random(13)
        for _ in range(10):
            n = 30
            a = [rng.random() for _ in range(n)]
            b = [x + rng.gauss(0, 0.1) for x in a]
            got = paired_t_test(a, b)
            t_ref, p_ref = t_test_reference(a, b)
            assert got.t == pytest.approx(t_ref, abs=1e-9)
            assert got.p == pytest.approx(p_ref, abs=1e-9)

    def test_sign_symmetry(self):
        a = [0.5, 0.7, 0.2, 0.9]
        b = [0.4, 0.8, 0.3, 0.6]
        forward = paired_t_test(a, b)
        backward = paired_t_test(b, a)
        assert forward.t == pytest.approx(-backward.t)
        assert forward.p == pytest.approx(backward.p)
