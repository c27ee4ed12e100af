"""Evaluation harness: stemmed matching, macro P/R/F, PR curves,
paired significance tests.

Outputs and references are compared as space-joined stem sequences, case
insensitive, so inflectional variants count as hits but partial phrase
overlap does not.  Each reference can absorb at most one output.  Scores
are macro-averaged: the per-document F values are averaged directly, not
recomputed from the averaged precision and recall.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field

from scipy import stats as _scipy_stats

from .corpus import AnnotatedDocument
from .text import Stemmer
from .topicrank import RankingResult

log = logging.getLogger(__name__)


def normalize_keyphrase(text: str, stemmer: Stemmer) -> str:
    """Space-joined stem sequence of a keyphrase string."""
    return " ".join(stemmer.stem(word) for word in text.strip().split())


def match(output: str, references: list[str], stemmer: Stemmer,
          consumed: set[int] | None = None) -> int | None:
    """Index of the first unconsumed reference whose stem sequence equals
    the output's, or None.  A hit is added to ``consumed``."""
    wanted = normalize_keyphrase(output, stemmer)
    for i, reference in enumerate(references):
        if consumed is not None and i in consumed:
            continue
        if normalize_keyphrase(reference, stemmer) == wanted:
            if consumed is not None:
                consumed.add(i)
            return i
    return None


@dataclass
class DocumentScore:
    document_id: str
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f1: float
    zero_references: bool = False


def _prf(tp: int, fp: int, fn: int) -> tuple[float, float, float]:
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) \
        if precision + recall else 0.0
    return precision, recall, f1


def score_document(result: RankingResult, doc: AnnotatedDocument,
                   cutoff: int, stemmer: Stemmer) -> DocumentScore:
    """Score the top-``cutoff`` outputs of one document.

    Unmatched references count as false negatives even when their stems
    never occur in the document.  A document without references gets
    recall zero and is flagged.
    """
    if cutoff < 1:
        raise ValueError(f"cutoff must be >= 1, got {cutoff}")
    references = list(doc.reference_keyphrases)
    reference_keys = [normalize_keyphrase(r, stemmer) for r in references]
    outputs = [k.text for k in result.keyphrases[:cutoff]]
    consumed: set[int] = set()
    tp = 0
    for output in outputs:
        wanted = normalize_keyphrase(output, stemmer)
        hit = next((i for i, key in enumerate(reference_keys)
                    if i not in consumed and key == wanted), None)
        if hit is None:
            continue
        consumed.add(hit)
        tp += 1
    fp = len(outputs) - tp
    fn = len(references) - tp
    precision, recall, f1 = _prf(tp, fp, fn)
    zero_references = not references
    if zero_references:
        log.warning("document %s has no reference keyphrases; "
                    "recall reported as 0", doc.id)
    return DocumentScore(document_id=result.document_id, tp=tp, fp=fp,
                         fn=fn, precision=precision, recall=recall,
                         f1=f1, zero_references=zero_references)


@dataclass
class EvalReport:
    method: str
    cutoff: int
    documents: list[DocumentScore]
    macro_precision: float
    macro_recall: float
    macro_f1: float
    micro: tuple[float, float, float] | None = None
    flags: dict = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "method": self.method,
            "cutoff": self.cutoff,
            "macro": {"precision": round(self.macro_precision, 6),
                      "recall": round(self.macro_recall, 6),
                      "f1": round(self.macro_f1, 6)},
            "documents": [{"id": d.document_id, "tp": d.tp, "fp": d.fp,
                           "fn": d.fn,
                           "precision": round(d.precision, 6),
                           "recall": round(d.recall, 6),
                           "f1": round(d.f1, 6),
                           "zero_references": d.zero_references}
                          for d in self.documents],
        }
        if self.micro is not None:
            payload["micro"] = {"precision": round(self.micro[0], 6),
                                "recall": round(self.micro[1], 6),
                                "f1": round(self.micro[2], 6)}
        if self.flags:
            payload["flags"] = self.flags
        return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"

    def to_csv(self) -> str:
        lines = ["doc_id,tp,fp,fn,precision,recall,f1"]
        for d in self.documents:
            lines.append(f"{d.document_id},{d.tp},{d.fp},{d.fn},"
                         f"{d.precision:.6f},{d.recall:.6f},{d.f1:.6f}")
        lines.append(f"macro,,,,{self.macro_precision:.6f},"
                     f"{self.macro_recall:.6f},{self.macro_f1:.6f}")
        return "".join(line + "\n" for line in lines)


def macro_average(documents: list[DocumentScore], cutoff: int,
                  method: str = "", micro: bool = False) -> EvalReport:
    """Unweighted mean of per-document precision, recall and F."""
    if not documents:
        raise ValueError("cannot average over an empty document set")
    count = len(documents)
    report = EvalReport(
        method=method, cutoff=cutoff, documents=documents,
        macro_precision=sum(d.precision for d in documents) / count,
        macro_recall=sum(d.recall for d in documents) / count,
        macro_f1=sum(d.f1 for d in documents) / count,
    )
    zero_reference_ids = [d.document_id for d in documents
                          if d.zero_references]
    if zero_reference_ids:
        report.flags["zero_reference_documents"] = zero_reference_ids
    if micro:
        tp = sum(d.tp for d in documents)
        fp = sum(d.fp for d in documents)
        fn = sum(d.fn for d in documents)
        report.micro = _prf(tp, fp, fn)
    return report


def evaluate(results: list[RankingResult], docs: dict[str,
             AnnotatedDocument], cutoff: int, stemmer: Stemmer,
             method: str = "", micro: bool = False,
             per_document=None) -> EvalReport:
    """Score every result against its document and macro-average.

    ``per_document`` optionally maps a document to its stemmer
    (multilingual corpora); by default ``stemmer`` is used throughout.
    """
    scores = []
    for result in results:
        if result.document_id not in docs:
            raise ValueError(f"results contain id {result.document_id!r} "
                             f"absent from the dataset")
        doc = docs[result.document_id]
        doc_stemmer = per_document(doc) if per_document else stemmer
        scores.append(score_document(result, doc, cutoff, doc_stemmer))
    return macro_average(scores, cutoff, method=method, micro=micro)


@dataclass
class PRPoint:
    cutoff: int
    precision: float
    recall: float


@dataclass
class PRCurve:
    points: list[PRPoint]

    def to_csv(self) -> str:
        lines = ["cutoff,precision,recall"]
        for p in self.points:
            lines.append(f"{p.cutoff},{p.precision:.6f},{p.recall:.6f}")
        return "".join(line + "\n" for line in lines)


def pr_curve(results: list[RankingResult],
             docs: dict[str, AnnotatedDocument], stemmer: Stemmer,
             per_document=None) -> PRCurve:
    """Macro precision/recall at every cutoff from 1 to the largest
    emitted count.  Documents shorter than the cutoff contribute their
    full output."""
    if not results:
        raise ValueError("cannot build a PR curve from zero results")
    max_emitted = max(len(r.keyphrases) for r in results)
    points = []
    for cutoff in range(1, max_emitted + 1):
        report = evaluate(results, docs, cutoff, stemmer,
                          per_document=per_document)
        points.append(PRPoint(cutoff=cutoff,
                              precision=report.macro_precision,
                              recall=report.macro_recall))
    return PRCurve(points=points)


@dataclass
class TTestResult:
    t: float
    p: float
    zero_variance: bool = False


def paired_t_test(f_scores_a: list[float],
                  f_scores_b: list[float]) -> TTestResult:
    """Two-tailed paired Student's t on per-document score differences.

    Degenerate inputs keep their conventional reading: identical lists
    give t=0, p=1; a constant nonzero difference has no variance, so the
    improvement is reported as certain (p=0) with a flag.
    """
    if len(f_scores_a) != len(f_scores_b):
        raise ValueError("paired t-test needs lists of equal length")
    n = len(f_scores_a)
    if n < 2:
        raise ValueError("paired t-test needs at least two documents")
    diffs = [a - b for a, b in zip(f_scores_a, f_scores_b)]
    mean = sum(diffs) / n
    variance = sum((d - mean) ** 2 for d in diffs) / (n - 1)
    if variance == 0.0:
        if mean == 0.0:
            return TTestResult(t=0.0, p=1.0)
        log.warning("zero-variance differences with nonzero mean; "
                    "p-value degenerates to 0")
        return TTestResult(t=math.copysign(math.inf, mean), p=0.0,
                           zero_variance=True)
    t = mean / math.sqrt(variance / n)
    p = 2.0 * float(_scipy_stats.t.sf(abs(t), n - 1))
    return TTestResult(t=t, p=p)
