"""Stemming and keyphrase-candidate selection.

Candidates are the maximal runs of adjacent NOUN/ADJ tokens (the /(N|A)+/
pattern) within a sentence.  Runs whose stem sequences coincide are merged
into a single candidate that remembers every occurrence position, since
downstream graph weights are built from first-word offsets.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass

from .corpus import ADJ, NOUN, AnnotatedDocument
from .porter import porter_stem

log = logging.getLogger(__name__)


class Stemmer:
    """Base stemming contract: deterministic, lowercases before stemming."""

    language = "none"

    def stem(self, word: str) -> str:
        raise NotImplementedError


class IdentityStemmer(Stemmer):
    """Lowercase only.  The workhorse of the test suite, where expected
    values must be checkable by hand."""

    language = "none"

    def stem(self, word: str) -> str:
        return word.lower()


class PorterStemmer(Stemmer):
    language = "en"

    def stem(self, word: str) -> str:
        return porter_stem(word.lower())


# Simplified French suffix stripping in the spirit of the Snowball rules:
# inflection first (plural -s/-x, -aux), then one derivational suffix from
# the table below (longest match first), then a final mute -e.  Minimum
# stem lengths stand in for the region conditions of the full algorithm.
_FRENCH_SUFFIX_RULES = (
    # (suffix, replacement, minimum stem length before the suffix)
    ("atrice", "", 3),
    ("ation", "", 3),
    ("ateur", "", 3),
    ("ement", "", 3),
    ("logie", "log", 0),
    ("ique", "", 3),
    ("isme", "", 3),
    ("able", "", 3),
    ("iste", "", 3),
    ("euse", "", 3),
    ("ance", "", 3),
    ("ence", "", 3),
    ("elle", "el", 2),
    ("enne", "en", 2),
    ("ive", "", 3),
    ("ité", "", 3),
    ("if", "", 4),
)


class FrenchStemmer(Stemmer):
    language = "fr"

    @staticmethod
    def _pass(word: str) -> str:
        if len(word) <= 3:
            return word
        # plural inflection
        if word.endswith("eaux"):
            word = word[:-1]
        elif word.endswith("aux") and len(word) >= 5:
            word = word[:-3] + "al"
        elif word[-1] in "sx" and len(word) >= 4 and word[-2] not in "sx":
            word = word[:-1]
        # one derivational suffix, longest match first
        for suffix, replacement, min_stem in _FRENCH_SUFFIX_RULES:
            if word.endswith(suffix) and len(word) - len(suffix) >= min_stem:
                word = word[: len(word) - len(suffix)] + replacement
                break
        # mute final e
        if word.endswith("e") and len(word) >= 4:
            word = word[:-1]
        return word

    def stem(self, word: str) -> str:
        # every rule strictly shortens the word, so repeating the pass
        # reaches a fixed point; that makes the stemmer idempotent even
        # when stripping exposes another suffix
        word = word.lower()
        while True:
            shorter = self._pass(word)
            if shorter == word:
                return word
            word = shorter


_STEMMERS = {
    "identity": IdentityStemmer,
    "porter": PorterStemmer,
    "french": FrenchStemmer,
}

_LANGUAGE_DEFAULTS = {"en": "porter", "english": "porter",
                      "fr": "french", "french": "french"}


def get_stemmer(name: str) -> Stemmer:
    """Look up a stemmer by name: identity, porter or french."""
    try:
        return _STEMMERS[name]()
    except KeyError:
        raise ValueError(f"unknown stemmer {name!r}; expected one of "
                         f"{sorted(_STEMMERS)}") from None


def stemmer_for_document(doc: AnnotatedDocument, choice: str) -> Stemmer:
    """Resolve the per-document stemmer.  ``auto`` picks by the document's
    language field and falls back to the identity stemmer."""
    if choice != "auto":
        return get_stemmer(choice)
    name = _LANGUAGE_DEFAULTS.get(doc.language.lower())
    if name is None:
        log.debug("no default stemmer for language %r (doc %s); "
                  "using identity", doc.language, doc.id)
        return IdentityStemmer()
    return get_stemmer(name)


@dataclass(frozen=True)
class Candidate:
    """A merged candidate phrase.

    ``occurrences`` holds (sentence index, global offset of the first
    word), sorted by offset; ``surface`` is the most frequent variant of
    the merged runs (ties: earliest occurrence).
    """
    surface: str
    stem_key: tuple[str, ...]
    occurrences: tuple[tuple[int, int], ...]

    @property
    def offsets(self) -> tuple[int, ...]:
        return tuple(offset for _, offset in self.occurrences)

    @property
    def first_offset(self) -> int:
        return self.occurrences[0][1]

    @property
    def stem_set(self) -> frozenset[str]:
        return frozenset(self.stem_key)


def _runs(doc: AnnotatedDocument, cross_sentence: bool):
    """Yield maximal (sentence index, offset, tokens) runs of N/A tokens."""
    offsets = doc.sentence_offsets()
    flat = [(s.index, offsets[s.index] + i, token)
            for s in doc.sentences for i, token in enumerate(s.tokens)]
    run: list = []
    for s_index, offset, token in flat:
        keyword = token.pos in (NOUN, ADJ)
        contiguous = bool(run) and run[-1][1] + 1 == offset \
            and (cross_sentence or run[-1][0] == s_index)
        if keyword and contiguous:
            run.append((s_index, offset, token))
        else:
            if run:
                yield run[0][0], run[0][1], [t for _, _, t in run]
            run = [(s_index, offset, token)] if keyword else []
    if run:
        yield run[0][0], run[0][1], [t for _, _, t in run]


def select_candidates(doc: AnnotatedDocument, stemmer: Stemmer,
                      cross_sentence: bool = False) -> list[Candidate]:
    """Extract candidates from every maximal NOUN/ADJ run of the document.

    Runs never cross a sentence boundary unless ``cross_sentence`` is set.
    Runs with identical stem sequences merge into one candidate; the result
    is sorted by first occurrence offset.
    """
    occurrences: dict[tuple[str, ...], list[tuple[int, int]]] = {}
    surfaces: dict[tuple[str, ...], Counter] = {}
    for s_index, offset, tokens in _runs(doc, cross_sentence):
        key = tuple(t.stem if t.stem else stemmer.stem(t.surface)
                    for t in tokens)
        surface = " ".join(t.surface for t in tokens)
        occurrences.setdefault(key, []).append((s_index, offset))
        surfaces.setdefault(key, Counter())[surface] += 1
    candidates = []
    for key, occ in occurrences.items():
        counter = surfaces[key]
        best_count = max(counter.values())
        # ties broken by earliest occurrence: the counter preserves
        # first-seen order, so the first maximal entry wins
        surface = next(s for s, c in counter.items() if c == best_count)
        candidates.append(Candidate(surface=surface, stem_key=key,
                                    occurrences=tuple(sorted(occ, key=lambda
                                                             o: o[1]))))
    candidates.sort(key=lambda c: c.first_offset)
    return candidates
