"""Topical clustering of candidates.

Hierarchical agglomerative clustering under average linkage: the pair of
clusters with the highest mean pairwise stem-overlap similarity is merged
while that maximum stays at or above the threshold (default 1/4).  Pair
similarities are recomputed from the candidate matrix at every round; the
inputs are small enough that the Lance-Williams shortcut would buy
nothing.

Stem overlaps are small rationals, so the linkage arithmetic runs on
exact fractions.  Equal averages are therefore exactly equal, which makes
the content-based tie-break meaningful: among pairs of equal average
similarity, the pair whose earliest member offset is smallest wins, then
the lexicographically smallest pair of cluster keys (a cluster key being
its sorted member stem sequences).  The partition is thus independent of
input order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .text import Candidate


@dataclass(frozen=True)
class Topic:
    """A cluster of stem-similar candidates, one node of the topic graph."""
    id: int
    members: tuple[Candidate, ...]
    first_offset: int

    def occurrences(self):
        for member in self.members:
            yield from member.occurrences

    def sentence_indices(self) -> frozenset[int]:
        return frozenset(s for member in self.members
                         for s, _ in member.occurrences)


def _overlap(a: Candidate, b: Candidate) -> Fraction:
    sa, sb = a.stem_set, b.stem_set
    union = len(sa | sb)
    if union == 0:
        return Fraction(0)
    return Fraction(len(sa & sb), union)


def stem_overlap(a: Candidate, b: Candidate) -> float:
    """Jaccard similarity of the two candidates' stem sets."""
    return float(_overlap(a, b))


def _cluster_key(cluster: list[Candidate]) -> tuple:
    return tuple(sorted(c.stem_key for c in cluster))


def cluster_topics(candidates: list[Candidate],
                   threshold: float = 0.25) -> list[Topic]:
    """Partition candidates into topics by average-linkage agglomeration.

    Merging continues while the best average pairwise similarity is >=
    ``threshold``.  Topics come back sorted by first occurrence offset,
    ids assigned in that order.
    """
    if not 0.0 < threshold <= 1.0:
        raise ValueError(f"threshold must be in (0, 1], got {threshold}")
    cutoff = Fraction(threshold)
    sims = {(a.stem_key, b.stem_key): _overlap(a, b)
            for a, b in combinations(candidates, 2)}

    def linkage(a: list[Candidate], b: list[Candidate]) -> Fraction:
        total = Fraction(0)
        for ca in a:
            for cb in b:
                pair = (ca.stem_key, cb.stem_key)
                total += sims[pair] if pair in sims \
                    else sims[(cb.stem_key, ca.stem_key)]
        return total / (len(a) * len(b))

    clusters: list[list[Candidate]] = [[c] for c in candidates]
    while len(clusters) > 1:
        best = None
        for i, j in combinations(range(len(clusters)), 2):
            sim = linkage(clusters[i], clusters[j])
            earliest = min(c.first_offset
                           for c in clusters[i] + clusters[j])
            key = (-sim, earliest,
                   tuple(sorted((_cluster_key(clusters[i]),
                                 _cluster_key(clusters[j])))))
            if best is None or key < best[0]:
                best = (key, i, j)
        (neg_sim, _, _), i, j = best
        if -neg_sim < cutoff:
            break
        merged = clusters[i] + clusters[j]
        clusters = [c for k, c in enumerate(clusters) if k not in (i, j)]
        clusters.append(merged)
    topics = []
    for members in clusters:
        ordered = tuple(sorted(members, key=lambda c: c.first_offset))
        topics.append((min(c.first_offset for c in members), ordered))
    topics.sort(key=lambda item: item[0])
    return [Topic(id=i, members=members, first_offset=offset)
            for i, (offset, members) in enumerate(topics)]
