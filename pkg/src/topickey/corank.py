"""Unified document/domain graph and joint extraction-assignment ranking.

Two graphs are joined: the document's topics, connected by sentence
co-occurrence counts, and the controlled keyphrases of the training
collection, connected by co-assignment counts.  Unweighted membership
edges bridge the two sides wherever a controlled keyphrase's stem
sequence equals a candidate's inside a topic.  Both sides are then scored
together:

    S(t_i) = (1 - lambda_t) * R_out(t_i) + lambda_t * R_in(t_i)
    S(k_i) = (1 - lambda_k) * R_out(k_i) + lambda_k * R_in(k_i)

where the inner recommendation R_in(v) sums w_vj * S(j) over same-side
neighbours j, each normalized by j's total inner weight, and the outer
recommendation R_out(v) sums S(j) / outer_degree(j) over cross-side
neighbours.  Updates are synchronous from all-ones.  There is no teleport
term: nodes without edges legitimately decay to zero, and convergence is
flagged rather than assumed.

Keyphrases are annotated from the merged ranking: topics emit their first
occurring candidate ("extracted"), controlled keyphrases emit their
vocabulary surface ("assigned"), and a controlled keyphrase may only be
emitted when it is directly or transitively connected to a topic of the
document.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .clustering import Topic, cluster_topics
from .corpus import AnnotatedDocument, ControlledVocabulary, VocabEntry
from .text import Stemmer, select_candidates
from .topicrank import (RankedKeyphrase, RankingResult, ScoreVector,
                        first_occurring)

log = logging.getLogger(__name__)

MODES = ("full", "extr", "assign")


@dataclass
class CoRankParams:
    lambda_t: float = 0.1
    lambda_k: float = 0.5
    tol: float = 1e-6
    max_iter: int = 1000

    def __post_init__(self):
        for name in ("lambda_t", "lambda_k"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")


@dataclass
class DomainGraph:
    """Controlled keyphrases with co-assignment edge weights."""
    entries: list[VocabEntry]
    weights: list[list[float]]  # symmetric, zero diagonal
    normalized: bool = False

    def __len__(self) -> int:
        return len(self.entries)


def build_domain_graph(vocab: ControlledVocabulary,
                       normalize: bool = False) -> DomainGraph:
    """Weight entry pairs by the number of training documents in which
    both were assigned; ``normalize`` divides by the training-set size."""
    index = vocab.index()
    m = len(vocab.entries)
    weights = [[0.0] * m for _ in range(m)]
    for keys in vocab.doc_entries.values():
        ids = [index[key] for key in keys]
        for a in range(len(ids)):
            for b in range(a + 1, len(ids)):
                i, j = ids[a], ids[b]
                weights[i][j] += 1.0
                weights[j][i] += 1.0
    if normalize:
        total = len(vocab.doc_entries)
        for row in weights:
            for j in range(m):
                row[j] /= total
    return DomainGraph(entries=list(vocab.entries), weights=weights,
                       normalized=normalize)


@dataclass
class UnifiedGraph:
    """Topic nodes plus controlled-keyphrase nodes.

    Same-side edges live in the two weight matrices; cross-side membership
    edges are the unweighted ``outer_*`` adjacency lists, so the two edge
    families cannot overlap by construction.
    """
    topics: list[Topic]
    entries: list[VocabEntry]
    topic_weights: list[list[float]]       # sentence co-occurrence counts
    entry_weights: list[list[float]]       # domain co-assignment weights
    outer_entries_of_topic: list[list[int]]
    outer_topics_of_entry: list[list[int]]

    def validate(self) -> None:
        n, m = len(self.topics), len(self.entries)
        assert len(self.topic_weights) == n
        assert len(self.entry_weights) == m
        for i in range(n):
            for j in range(n):
                assert self.topic_weights[i][j] == self.topic_weights[j][i]
            assert self.topic_weights[i][i] == 0.0
        member_keys = [{c.stem_key for c in topic.members}
                       for topic in self.topics]
        for k, topic_ids in enumerate(self.outer_topics_of_entry):
            for t in topic_ids:
                assert self.entries[k].stem_key in member_keys[t]


def build_unified_graph(topics: list[Topic],
                        domain: DomainGraph) -> UnifiedGraph:
    """Join document topics with the domain graph.

    Topic pairs are weighted by the number of sentences containing
    occurrences of both.  A membership edge joins a controlled keyphrase
    to the topic holding a candidate with the same stem sequence; a
    document whose topics match nothing simply gets no cross edges.
    """
    n = len(topics)
    topic_weights = [[0.0] * n for _ in range(n)]
    sentence_sets = [topic.sentence_indices() for topic in topics]
    for i in range(n):
        for j in range(i + 1, n):
            shared = len(sentence_sets[i] & sentence_sets[j])
            topic_weights[i][j] = float(shared)
            topic_weights[j][i] = float(shared)
    topic_of_key: dict[tuple[str, ...], int] = {}
    for t, topic in enumerate(topics):
        for candidate in topic.members:
            topic_of_key[candidate.stem_key] = t
    outer_entries_of_topic: list[list[int]] = [[] for _ in range(n)]
    outer_topics_of_entry: list[list[int]] = [[] for _ in
                                              range(len(domain.entries))]
    for k, entry in enumerate(domain.entries):
        t = topic_of_key.get(entry.stem_key)
        if t is not None:
            outer_entries_of_topic[t].append(k)
            outer_topics_of_entry[k].append(t)
    graph = UnifiedGraph(topics=topics, entries=domain.entries,
                         topic_weights=topic_weights,
                         entry_weights=domain.weights,
                         outer_entries_of_topic=outer_entries_of_topic,
                         outer_topics_of_entry=outer_topics_of_entry)
    graph.validate()
    return graph


def _inner_adjacency(weights: list[list[float]]):
    size = len(weights)
    neighbors: list[list[tuple[int, float]]] = [[] for _ in range(size)]
    weight_sum = [0.0] * size
    for i in range(size):
        for j in range(size):
            w = weights[i][j]
            if i != j and w > 0.0:
                neighbors[i].append((j, w))
                weight_sum[i] += w
    return neighbors, weight_sum


def rank_corank(graph: UnifiedGraph, params: CoRankParams) -> ScoreVector:
    """Co-rank topics and controlled keyphrases.

    Returns one score vector over all nodes, topics first then entries.
    A node with neither inner nor outer edges decays to zero.
    """
    n, m = len(graph.topics), len(graph.entries)
    t_nbrs, t_wsum = _inner_adjacency(graph.topic_weights)
    k_nbrs, k_wsum = _inner_adjacency(graph.entry_weights)
    t_outdeg = [len(ks) for ks in graph.outer_entries_of_topic]
    k_outdeg = [len(ts) for ts in graph.outer_topics_of_entry]
    lam_t, lam_k = params.lambda_t, params.lambda_k

    t_scores = [1.0] * n
    k_scores = [1.0] * m
    residual = 0.0
    for iteration in range(1, params.max_iter + 1):
        new_t = []
        for i in range(n):
            r_in = 0.0
            for j, w in t_nbrs[i]:
                r_in += w * t_scores[j] / t_wsum[j]
            r_out = 0.0
            for k in graph.outer_entries_of_topic[i]:
                r_out += k_scores[k] / k_outdeg[k]
            new_t.append((1.0 - lam_t) * r_out + lam_t * r_in)
        new_k = []
        for i in range(m):
            r_in = 0.0
            for j, w in k_nbrs[i]:
                r_in += w * k_scores[j] / k_wsum[j]
            r_out = 0.0
            for t in graph.outer_topics_of_entry[i]:
                r_out += t_scores[t] / t_outdeg[t]
            new_k.append((1.0 - lam_k) * r_out + lam_k * r_in)
        residual = 0.0
        for old, new in ((t_scores, new_t), (k_scores, new_k)):
            for a, b in zip(old, new):
                residual = max(residual, abs(a - b))
        t_scores, k_scores = new_t, new_k
        if residual < params.tol:
            return ScoreVector(scores=t_scores + k_scores,
                               iterations=iteration, residual=residual,
                               converged=True)
    log.warning("co-ranking did not converge after %d iterations "
                "(residual %.3g)", params.max_iter, residual)
    return ScoreVector(scores=t_scores + k_scores,
                       iterations=params.max_iter, residual=residual,
                       converged=False)


def reachable_keyphrases(graph: UnifiedGraph) -> frozenset[int]:
    """Entry indices directly or transitively connected to any topic,
    following both edge families."""
    n = len(graph.topics)
    seen_topics = set(range(n))
    seen_entries: set[int] = set()
    frontier_entries: list[int] = []
    for t in range(n):
        for k in graph.outer_entries_of_topic[t]:
            if k not in seen_entries:
                seen_entries.add(k)
                frontier_entries.append(k)
    # topic-topic edges cannot reach new entries except through E_out of
    # some topic, and all topics are already sources; expand entry side
    while frontier_entries:
        k = frontier_entries.pop()
        for j, w in enumerate(graph.entry_weights[k]):
            if j != k and w > 0.0 and j not in seen_entries:
                seen_entries.add(j)
                frontier_entries.append(j)
    return frozenset(seen_entries)


@dataclass(frozen=True)
class _Emission:
    score: float
    source: str  # "assigned" or "extracted"
    stem_key: tuple[str, ...]
    surface: str

    @property
    def sort_key(self):
        return (-self.score, 0 if self.source == "assigned" else 1,
                self.stem_key)


@dataclass
class DocumentRanking:
    """One converged co-ranking of a document, reusable across selections."""
    document_id: str
    graph: UnifiedGraph
    scores: ScoreVector
    reachable: frozenset[int]

    def emissions(self) -> list[_Emission]:
        """Merged candidate emissions, best first.  Ties rank assigned
        before extracted, then by stem sequence."""
        n = len(self.graph.topics)
        merged = []
        for t, topic in enumerate(self.graph.topics):
            candidate = first_occurring(topic)
            merged.append(_Emission(score=self.scores.scores[t],
                                    source="extracted",
                                    stem_key=candidate.stem_key,
                                    surface=candidate.surface))
        for k in sorted(self.reachable):
            entry = self.graph.entries[k]
            merged.append(_Emission(score=self.scores.scores[n + k],
                                    source="assigned",
                                    stem_key=entry.stem_key,
                                    surface=entry.surface))
        merged.sort(key=lambda e: e.sort_key)
        return merged


def co_rank_document(doc: AnnotatedDocument, domain: DomainGraph,
                     params: CoRankParams | None = None,
                     stemmer: Stemmer | None = None,
                     clustering_threshold: float = 0.25,
                     cross_sentence: bool = False,
                     topics: list[Topic] | None = None) -> DocumentRanking:
    """Build the unified graph for one document and co-rank it."""
    params = params or CoRankParams()
    if topics is None:
        if stemmer is None:
            raise ValueError("either topics or a stemmer must be given")
        candidates = select_candidates(doc, stemmer,
                                       cross_sentence=cross_sentence)
        topics = cluster_topics(candidates, threshold=clustering_threshold)
    graph = build_unified_graph(topics, domain)
    scores = rank_corank(graph, params)
    return DocumentRanking(document_id=doc.id, graph=graph, scores=scores,
                           reachable=reachable_keyphrases(graph))


def _select(emissions: list[_Emission], n: int,
            keep: tuple[str, ...]) -> list[_Emission]:
    chosen: list[_Emission] = []
    seen: set[tuple[str, ...]] = set()
    for emission in emissions:
        if emission.source not in keep:
            continue
        if emission.stem_key in seen:
            continue
        seen.add(emission.stem_key)
        chosen.append(emission)
        if len(chosen) == n:
            break
    return chosen


def select(ranking: DocumentRanking, n: int,
           mode: str = "full") -> RankingResult:
    """Top-n annotation from a ranked document.

    ``extr`` keeps topic emissions only, ``assign`` reachable controlled
    keyphrases only, ``full`` both.  Duplicate stem sequences collapse
    onto their best-ranked emission; at exact score ties the controlled
    surface wins because assigned sorts first.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    keep = {"full": ("assigned", "extracted"), "extr": ("extracted",),
            "assign": ("assigned",)}[mode]
    chosen = _select(ranking.emissions(), n, keep)
    return RankingResult(document_id=ranking.document_id,
                         keyphrases=[RankedKeyphrase(text=e.surface,
                                                     score=e.score,
                                                     source=e.source)
                                     for e in chosen])


def select_forced_ratio(ranking: DocumentRanking, n: int,
                        ratio: float) -> RankingResult:
    """Annotation with a forced assignment quota.

    Emits round(ratio * n) top reachable controlled keyphrases and the
    rest from topics; a shortfall on either side is filled from the other
    list.  The output keeps merged score order, deduplicated as usual.
    """
    if not 0.0 <= ratio <= 1.0:
        raise ValueError(f"ratio must be in [0, 1], got {ratio}")
    quota_assigned = int(ratio * n + 0.5)  # round half up
    quota_extracted = n - quota_assigned
    emissions = ranking.emissions()
    remaining = {"assigned": quota_assigned, "extracted": quota_extracted}
    chosen: list[_Emission] = []
    seen: set[tuple[str, ...]] = set()
    leftovers: list[_Emission] = []
    for emission in emissions:
        if emission.stem_key in seen:
            continue
        if remaining[emission.source] > 0:
            remaining[emission.source] -= 1
            seen.add(emission.stem_key)
            chosen.append(emission)
        else:
            leftovers.append(emission)
    for emission in leftovers:
        if len(chosen) >= n:
            break
        if emission.stem_key in seen:
            continue
        seen.add(emission.stem_key)
        chosen.append(emission)
    chosen.sort(key=lambda e: e.sort_key)
    return RankingResult(document_id=ranking.document_id,
                         keyphrases=[RankedKeyphrase(text=e.surface,
                                                     score=e.score,
                                                     source=e.source)
                                     for e in chosen])


def annotate(doc: AnnotatedDocument, domain: DomainGraph, n: int = 10,
             params: CoRankParams | None = None, mode: str = "full",
             stemmer: Stemmer | None = None,
             clustering_threshold: float = 0.25,
             cross_sentence: bool = False) -> RankingResult:
    """Full per-document pipeline: topics, unified graph, co-ranking and
    top-n selection in the requested mode."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    ranking = co_rank_document(doc, domain, params=params, stemmer=stemmer,
                               clustering_threshold=clustering_threshold,
                               cross_sentence=cross_sentence)
    return select(ranking, n, mode=mode)


def annotate_forced_ratio(doc: AnnotatedDocument, domain: DomainGraph,
                          n: int, params: CoRankParams | None = None,
                          ratio: float = 0.5,
                          stemmer: Stemmer | None = None,
                          clustering_threshold: float = 0.25,
                          cross_sentence: bool = False) -> RankingResult:
    """Like :func:`annotate` but with a forced assignment quota."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    ranking = co_rank_document(doc, domain, params=params, stemmer=stemmer,
                               clustering_threshold=clustering_threshold,
                               cross_sentence=cross_sentence)
    return select_forced_ratio(ranking, n, ratio)


def assignment_ratio(results: list[RankingResult]) -> float:
    """Macro-average fraction of emitted keyphrases that were assigned.

    A document with no emitted keyphrases contributes zero and still
    counts in the average.
    """
    if not results:
        raise ValueError("assignment_ratio needs at least one result")
    total = 0.0
    for result in results:
        if result.keyphrases:
            assigned = sum(1 for k in result.keyphrases
                           if k.source == "assigned")
            total += assigned / len(result.keyphrases)
    return total / len(results)
