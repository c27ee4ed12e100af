"""Builders shared across the test modules."""

from __future__ import annotations

import random

from topickey.clustering import Topic
from topickey.corank import UnifiedGraph
from topickey.corpus import AnnotatedDocument, Sentence, Token, VocabEntry
from topickey.text import Candidate

POS = {"N": "NOUN", "A": "ADJ", "O": "OTHER"}


def make_doc(doc_id, sentences, refs=(), lang="en"):
    """sentences: list of lists of (word, N|A|O) pairs."""
    built = []
    for index, sentence in enumerate(sentences):
        tokens = tuple(Token(surface=word, pos=POS[tag])
                       for word, tag in sentence)
        built.append(Sentence(tokens=tokens, index=index))
    return AnnotatedDocument(id=doc_id, language=lang,
                             sentences=tuple(built),
                             reference_keyphrases=tuple(refs))


def doc_from_tag_strings(tag_strings, doc_id="doc", lang="en"):
    """One sentence per tag string such as "NAON"; words are unique
    per position so every run is distinct."""
    sentences, offset = [], 0
    for tags in tag_strings:
        sentence = []
        for tag in tags:
            sentence.append((f"w{offset}", tag))
            offset += 1
        sentences.append(sentence)
    return make_doc(doc_id, sentences, lang=lang)


def candidate(stems, offsets, surface=None, sentence=0):
    """Candidate with the given stem sequence and first-word offsets."""
    occurrences = tuple(sorted((sentence, o) for o in offsets))
    occurrences = tuple((s, o) for s, o in occurrences)
    return Candidate(surface=surface or " ".join(stems),
                     stem_key=tuple(stems), occurrences=occurrences)


def random_candidates(rng: random.Random, count: int,
                      vocabulary_size: int = 8,
                      max_len: int = 3) -> list[Candidate]:
    """Candidates over a tiny stem alphabet so overlaps are common;
    stem keys are forced distinct, offsets distinct."""
    seen, out = set(), []
    offsets = rng.sample(range(1000), count)
    while len(out) < count:
        length = rng.randint(1, max_len)
        key = tuple(f"s{rng.randint(0, vocabulary_size - 1)}"
                    for _ in range(length))
        if key in seen:
            continue
        seen.add(key)
        out.append(candidate(key, [offsets[len(out)]]))
    return out


def random_weights(rng: random.Random, size: int,
                   density: float = 0.6) -> list[list[float]]:
    """Random symmetric non-negative weight matrix with zero diagonal."""
    weights = [[0.0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            if rng.random() < density:
                w = rng.uniform(0.1, 5.0)
                weights[i][j] = w
                weights[j][i] = w
    return weights


def synthetic_unified(rng: random.Random, n_topics: int, n_entries: int,
                      inner_density: float = 0.6,
                      outer_rate: float = 0.6) -> UnifiedGraph:
    """A structurally valid unified graph over synthetic topics/entries.

    Every topic holds a primary candidate (the one it emits) and a
    secondary one.  An attached entry mirrors one of those stem keys, so
    the membership invariant holds; mirroring the primary makes the entry
    collide with the topic's emission, which keeps the dedup path
    exercised without starving selection.
    """
    topics = []
    for t in range(n_topics):
        primary = candidate([f"t{t}p"], [t * 10 + 1])
        secondary = candidate([f"t{t}s"], [t * 10 + 5])
        topics.append(Topic(id=t, members=(primary, secondary),
                            first_offset=primary.first_offset))
    secondary_slots = [(t, "s") for t in range(n_topics)]
    primary_slots = [(t, "p") for t in range(n_topics)]
    rng.shuffle(secondary_slots)
    rng.shuffle(primary_slots)
    slots = secondary_slots + primary_slots
    entries = []
    outer_topics_of_entry: list[list[int]] = []
    outer_entries_of_topic: list[list[int]] = [[] for _ in range(n_topics)]
    for k in range(n_entries):
        attach = bool(slots) and rng.random() < outer_rate
        if attach:
            t, which = slots.pop(0)
            entries.append(VocabEntry(stem_key=(f"t{t}{which}",),
                                      surface=f"entry {k}"))
            outer_topics_of_entry.append([t])
            outer_entries_of_topic[t].append(k)
        else:
            entries.append(VocabEntry(stem_key=(f"k{k}u",),
                                      surface=f"entry {k}"))
            outer_topics_of_entry.append([])
    return UnifiedGraph(
        topics=topics, entries=entries,
        topic_weights=random_weights(rng, n_topics, inner_density),
        entry_weights=random_weights(rng, n_entries, inner_density),
        outer_entries_of_topic=outer_entries_of_topic,
        outer_topics_of_entry=outer_topics_of_entry)
