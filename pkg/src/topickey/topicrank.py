"""Topic graph construction, random-walk ranking and keyphrase extraction.

A complete graph over the document's topics is weighted by positional
proximity: candidates that occur close together push their topics'
relation strength up through a sum of reciprocal offset distances.  Topics
are then scored with the weighted voting recursion

    S(i) = (1 - d) + d * sum_j  w_ij * S(j) / sum_k w_jk

iterated synchronously from all-ones until the largest per-node change
drops below tolerance.  Synchronous (Jacobi) updates keep the result
independent of node order.  One keyphrase is emitted per top topic: the
member candidate occurring first in the document.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .clustering import Topic, cluster_topics
from .corpus import AnnotatedDocument
from .text import Candidate, Stemmer, select_candidates

log = logging.getLogger(__name__)

DEFAULT_DAMPING = 0.85
DEFAULT_TOL = 1e-6
DEFAULT_MAX_ITER = 1000


@dataclass
class TopicGraph:
    topics: list[Topic]
    weights: list[list[float]]  # symmetric, zero diagonal


@dataclass
class ScoreVector:
    scores: list[float]
    iterations: int
    residual: float
    converged: bool


@dataclass(frozen=True)
class RankedKeyphrase:
    text: str
    score: float
    source: str  # "extracted" or "assigned"


@dataclass
class RankingResult:
    """Scored keyphrases for one document, best first."""
    document_id: str
    keyphrases: list[RankedKeyphrase]
    params: dict = field(default_factory=dict)

    def to_record(self) -> dict:
        return {"id": self.document_id,
                "keyphrases": [{"text": k.text,
                                "score": round(k.score, 6),
                                "source": k.source}
                               for k in self.keyphrases]}


def positional_distance(a: Candidate, b: Candidate) -> float:
    """Sum of 1/|p_a - p_b| over all pairs of first-word offsets.

    Coincident offsets cannot happen for disjoint candidate runs; if a
    pair does coincide (cross-sentence configurations), it contributes
    nothing and is reported.
    """
    total = 0.0
    for pa in a.offsets:
        for pb in b.offsets:
            gap = abs(pa - pb)
            if gap == 0:
                log.warning("coincident offsets for candidates %r / %r; "
                            "pair ignored", a.surface, b.surface)
                continue
            total += 1.0 / gap
    return total


def build_topic_graph(topics: list[Topic]) -> TopicGraph:
    """Complete topic graph; w[i][j] sums positional distances over all
    cross-topic candidate pairs."""
    if not topics:
        raise ValueError("cannot build a graph from zero topics")
    n = len(topics)
    weights = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            w = sum(positional_distance(ci, cj)
                    for ci in topics[i].members
                    for cj in topics[j].members)
            weights[i][j] = w
            weights[j][i] = w
    return TopicGraph(topics=topics, weights=weights)


def rank(graph: TopicGraph, damping: float = DEFAULT_DAMPING,
         tol: float = DEFAULT_TOL,
         max_iter: int = DEFAULT_MAX_ITER) -> ScoreVector:
    """Iterate the weighted voting recursion to its fixed point.

    A node with no positive-weight edge keeps the bare teleport score
    (1 - damping).  Non-convergence within ``max_iter`` is flagged, not
    raised.
    """
    if not 0.0 <= damping < 1.0:
        raise ValueError(f"damping must be in [0, 1), got {damping}")
    n = len(graph.weights)
    neighbors: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    weight_sum = [0.0] * n
    for i in range(n):
        for j in range(n):
            w = graph.weights[i][j]
            if i != j and w > 0.0:
                neighbors[i].append((j, w))
                weight_sum[i] += w
    scores = [1.0] * n
    residual = 0.0
    for iteration in range(1, max_iter + 1):
        updated = []
        for i in range(n):
            incoming = 0.0
            for j, w in neighbors[i]:
                incoming += w * scores[j] / weight_sum[j]
            updated.append((1.0 - damping) + damping * incoming)
        residual = max(abs(u - s) for u, s in zip(updated, scores))
        scores = updated
        if residual < tol:
            return ScoreVector(scores=scores, iterations=iteration,
                               residual=residual, converged=True)
    log.warning("ranking did not converge after %d iterations "
                "(residual %.3g)", max_iter, residual)
    return ScoreVector(scores=scores, iterations=max_iter,
                       residual=residual, converged=False)


def first_occurring(topic: Topic) -> Candidate:
    """The member candidate to emit for a topic.  Offsets of distinct
    candidates never tie; if they somehow do, the lexicographically
    smaller surface wins and the tie is reported."""
    ordered = sorted(topic.members,
                     key=lambda c: (c.first_offset, c.surface))
    if len(ordered) > 1 and ordered[0].first_offset == \
            ordered[1].first_offset:
        log.info("first-offset tie in topic %d broken by surface order",
                 topic.id)
    return ordered[0]


def order_topics(topics: list[Topic], scores: list[float]) \
        -> list[tuple[Topic, float]]:
    """Topics by descending score; ties broken by earliest first offset,
    then topic id."""
    pairs = list(zip(topics, scores))
    pairs.sort(key=lambda p: (-p[1], p[0].first_offset, p[0].id))
    return pairs


@dataclass
class TopicRankParams:
    damping: float = DEFAULT_DAMPING
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER
    clustering_threshold: float = 0.25
    cross_sentence: bool = False


def extract_topicrank(doc: AnnotatedDocument, n: int, stemmer: Stemmer,
                      params: TopicRankParams | None = None) -> RankingResult:
    """Run the full extraction pipeline and emit up to ``n`` keyphrases."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    params = params or TopicRankParams()
    candidates = select_candidates(doc, stemmer,
                                   cross_sentence=params.cross_sentence)
    if not candidates:
        return RankingResult(document_id=doc.id, keyphrases=[])
    topics = cluster_topics(candidates,
                            threshold=params.clustering_threshold)
    graph = build_topic_graph(topics)
    ranking = rank(graph, damping=params.damping, tol=params.tol,
                   max_iter=params.max_iter)
    keyphrases = []
    for topic, score in order_topics(topics, ranking.scores)[:n]:
        candidate = first_occurring(topic)
        keyphrases.append(RankedKeyphrase(text=candidate.surface,
                                          score=score, source="extracted"))
    return RankingResult(document_id=doc.id, keyphrases=keyphrases)
