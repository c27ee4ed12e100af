"""Data model and ingestion for POS-tagged, sentence-segmented corpora.

Documents arrive already tokenized and tagged (one JSONL record per
document); this module never runs a tagger.  Raw tags are mapped onto the
coarse tagset {NOUN, ADJ, OTHER} through a user-supplied tag map, because
candidate selection only distinguishes nouns and adjectives.

Loaded splits are immutable and safe to share across parallel jobs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

NOUN = "NOUN"
ADJ = "ADJ"
OTHER = "OTHER"
COARSE_TAGS = (NOUN, ADJ, OTHER)


class DatasetFormatError(ValueError):
    """Raised for malformed input files; carries the offending line number."""

    def __init__(self, message: str, path: str | Path | None = None,
                 line: int | None = None):
        self.path = str(path) if path is not None else None
        self.line = line
        prefix = ""
        if self.path is not None:
            prefix = self.path
            if line is not None:
                prefix += f":{line}"
            prefix += ": "
        super().__init__(prefix + message)


@dataclass(frozen=True)
class Token:
    surface: str
    pos: str  # one of COARSE_TAGS
    stem: str | None = None  # optional cache, filled lazily by the text layer

    def __post_init__(self):
        if not self.surface or any(c.isspace() for c in self.surface):
            raise ValueError(f"token surface must be non-empty and free of "
                             f"whitespace: {self.surface!r}")
        if self.pos not in COARSE_TAGS:
            raise ValueError(f"unknown coarse POS tag {self.pos!r}")


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]
    index: int


@dataclass(frozen=True)
class AnnotatedDocument:
    id: str
    language: str
    sentences: tuple[Sentence, ...]
    reference_keyphrases: tuple[str, ...] = ()

    def sentence_offsets(self) -> list[int]:
        """Global token offset of the first token of each sentence."""
        offsets, total = [], 0
        for sentence in self.sentences:
            offsets.append(total)
            total += len(sentence.tokens)
        return offsets

    def token_count(self) -> int:
        return sum(len(s.tokens) for s in self.sentences)


@dataclass
class DatasetSplit:
    name: str  # train, dev or test
    documents: list[AnnotatedDocument] = field(default_factory=list)

    def by_id(self) -> dict[str, AnnotatedDocument]:
        return {doc.id: doc for doc in self.documents}


def load_tag_map(path: str | Path) -> dict[str, str]:
    """Read a ``RAW_TAG<TAB>COARSE_TAG`` mapping file (UTF-8).

    Blank lines and lines starting with ``#`` are ignored.
    """
    mapping: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise DatasetFormatError(
                    f"expected RAW_TAG<TAB>COARSE_TAG, got {line!r}",
                    path=path, line=lineno)
            raw_tag, coarse = parts[0].strip(), parts[1].strip()
            if coarse not in COARSE_TAGS:
                raise DatasetFormatError(
                    f"coarse tag must be one of {COARSE_TAGS}, got {coarse!r}",
                    path=path, line=lineno)
            if raw_tag in mapping and mapping[raw_tag] != coarse:
                raise DatasetFormatError(
                    f"conflicting mapping for raw tag {raw_tag!r}",
                    path=path, line=lineno)
            mapping[raw_tag] = coarse
    return mapping


def _parse_document(record: dict, tag_map: dict[str, str],
                    path: str | Path, lineno: int) -> AnnotatedDocument:
    for key in ("id", "lang", "sentences"):
        if key not in record:
            raise DatasetFormatError(f"record missing {key!r} field",
                                     path=path, line=lineno)
    if not isinstance(record["sentences"], list):
        raise DatasetFormatError("'sentences' must be a list of sentences",
                                 path=path, line=lineno)
    sentences = []
    for s_index, raw_sentence in enumerate(record["sentences"]):
        if not isinstance(raw_sentence, list):
            raise DatasetFormatError(
                f"sentence {s_index} must be a list of tokens",
                path=path, line=lineno)
        tokens = []
        for raw_token in raw_sentence:
            if not isinstance(raw_token, dict) or "t" not in raw_token \
                    or "p" not in raw_token:
                raise DatasetFormatError(
                    f"sentence {s_index}: tokens must be objects with "
                    f"'t' and 'p' fields", path=path, line=lineno)
            raw_tag = raw_token["p"]
            if raw_tag not in tag_map:
                raise DatasetFormatError(
                    f"unmapped POS tag {raw_tag!r} (add it to the tag map)",
                    path=path, line=lineno)
            try:
                tokens.append(Token(surface=raw_token["t"],
                                    pos=tag_map[raw_tag]))
            except ValueError as exc:
                raise DatasetFormatError(str(exc), path=path,
                                         line=lineno) from exc
        sentences.append(Sentence(tokens=tuple(tokens), index=s_index))
    keyphrases = record.get("keyphrases", [])
    if not isinstance(keyphrases, list) \
            or any(not isinstance(k, str) for k in keyphrases):
        raise DatasetFormatError("'keyphrases' must be a list of strings",
                                 path=path, line=lineno)
    cleaned = tuple(k.strip() for k in keyphrases)
    if any(not k for k in cleaned):
        raise DatasetFormatError("reference keyphrases must be non-empty "
                                 "after trimming", path=path, line=lineno)
    return AnnotatedDocument(id=record["id"], language=record["lang"],
                             sentences=tuple(sentences),
                             reference_keyphrases=cleaned)


def load_dataset(path: str | Path, tag_map: dict[str, str],
                 name: str | None = None) -> DatasetSplit:
    """Load a JSONL split; one `{"id", "lang", "sentences", "keyphrases"}`
    record per line.

    Every raw tag in the file must be covered by ``tag_map``; an unmapped
    tag is an error, never silently OTHER.  Errors name the offending line.
    """
    path = Path(path)
    if name is None:
        name = path.stem if path.stem in ("train", "dev", "test") else "test"
    documents: list[AnnotatedDocument] = []
    seen_ids: set[str] = set()
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetFormatError(f"malformed JSON ({exc.msg})",
                                         path=path, line=lineno) from exc
            if not isinstance(record, dict):
                raise DatasetFormatError("each line must be a JSON object",
                                         path=path, line=lineno)
            doc = _parse_document(record, tag_map, path, lineno)
            if doc.id in seen_ids:
                raise DatasetFormatError(f"duplicate document id {doc.id!r}",
                                         path=path, line=lineno)
            seen_ids.add(doc.id)
            documents.append(doc)
    return DatasetSplit(name=name, documents=documents)


def document_to_record(doc: AnnotatedDocument) -> dict:
    """Inverse of ingestion; loses nothing but the raw (pre-map) POS tags."""
    return {
        "id": doc.id,
        "lang": doc.language,
        "sentences": [[{"t": t.surface, "p": t.pos} for t in s.tokens]
                      for s in doc.sentences],
        "keyphrases": list(doc.reference_keyphrases),
    }


def dump_dataset(split: DatasetSplit) -> str:
    """Serialize a split back to JSONL, one document per line."""
    lines = [json.dumps(document_to_record(doc), ensure_ascii=False)
             for doc in split.documents]
    return "".join(line + "\n" for line in lines)


@dataclass(frozen=True)
class VocabEntry:
    """A controlled keyphrase: the dedup key plus a display surface."""
    stem_key: tuple[str, ...]
    surface: str


@dataclass
class ControlledVocabulary:
    """Reference keyphrases of the training split, deduplicated by stem.

    ``entries`` keeps first-appearance order; ``doc_entries`` maps each
    training document to the stem keys assigned to it (deduplicated within
    the document, order preserved), which is what co-assignment counting
    consumes.
    """
    entries: list[VocabEntry]
    doc_entries: dict[str, tuple[tuple[str, ...], ...]]

    def __len__(self) -> int:
        return len(self.entries)

    def index(self) -> dict[tuple[str, ...], int]:
        return {entry.stem_key: i for i, entry in enumerate(self.entries)}


def keyphrase_stem_key(keyphrase: str, stemmer) -> tuple[str, ...]:
    """Stem-sequence key of a keyphrase string: trim, split on whitespace,
    stem each word (stemming lowercases)."""
    return tuple(stemmer.stem(word) for word in keyphrase.strip().split())


def build_controlled_vocabulary(train: DatasetSplit, stemmer,
                                per_document=None) -> ControlledVocabulary:
    """Collect the training reference keyphrases into a vocabulary.

    Entries are deduplicated by stem-sequence key.  The surface kept for an
    entry is its most frequent raw variant (ties: lexicographically
    smallest).  Construction is deterministic: same input bytes give the
    same entries in the same order.

    ``per_document`` optionally maps a document to the stemmer to use for
    it (multilingual corpora); by default every document uses ``stemmer``.
    """
    if not train.documents:
        raise ValueError("cannot build a controlled vocabulary from an "
                         "empty train split")
    order: list[tuple[str, ...]] = []
    variant_counts: dict[tuple[str, ...], dict[str, int]] = {}
    doc_entries: dict[str, tuple[tuple[str, ...], ...]] = {}
    for doc in train.documents:
        doc_stemmer = per_document(doc) if per_document else stemmer
        doc_keys: list[tuple[str, ...]] = []
        for keyphrase in doc.reference_keyphrases:
            surface = keyphrase.strip()
            key = keyphrase_stem_key(surface, doc_stemmer)
            if not key:
                continue
            if key not in variant_counts:
                variant_counts[key] = {}
                order.append(key)
            counts = variant_counts[key]
            counts[surface] = counts.get(surface, 0) + 1
            if key not in doc_keys:
                doc_keys.append(key)
        doc_entries[doc.id] = tuple(doc_keys)
    entries = []
    for key in order:
        counts = variant_counts[key]
        best = min(counts.items(), key=lambda item: (-item[1], item[0]))
        entries.append(VocabEntry(stem_key=key, surface=best[0]))
    return ControlledVocabulary(entries=entries, doc_entries=doc_entries)
