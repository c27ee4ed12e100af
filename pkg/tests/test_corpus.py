"""Ingestion, serialization and controlled-vocabulary construction."""

import json

import pytest

from topickey.corpus import (DatasetFormatError, DatasetSplit,
                             build_controlled_vocabulary, dump_dataset,
                             keyphrase_stem_key, load_dataset,
                             load_tag_map)
from topickey.text import IdentityStemmer, PorterStemmer

from helpers import make_doc

TAG_MAP = {"NN": "NOUN", "NPP": "NOUN", "JJ": "ADJ", "VB": "OTHER"}


def write_jsonl(path, records):
    path.write_text("".join(json.dumps(r) + "\n" for r in records),
                    encoding="utf-8")
    return path


def record(doc_id="d1", **overrides):
    base = {"id": doc_id, "lang": "en",
            "sentences": [[{"t": "graph", "p": "NN"},
                           {"t": "ranking", "p": "NN"}]],
            "keyphrases": ["graph ranking"]}
    base.update(overrides)
    return base


class TestLoadDataset:
    def test_two_records_load_in_order(self, tmp_path):
        path = write_jsonl(tmp_path / "test.jsonl",
                           [record("a"), record("b")])
        split = load_dataset(path, TAG_MAP)
        assert [d.id for d in split.documents] == ["a", "b"]
        assert split.name == "test"

    def test_raw_tag_mapping(self, tmp_path):
        rec = record()
        rec["sentences"] = [[{"t": "Paris", "p": "NPP"}]]
        path = write_jsonl(tmp_path / "train.jsonl", [rec])
        split = load_dataset(path, TAG_MAP)
        assert split.documents[0].sentences[0].tokens[0].pos == "NOUN"
        assert split.name == "train"

    def test_missing_sentences_names_line(self, tmp_path):
        rec = record("bad")
        del rec["sentences"]
        path = write_jsonl(tmp_path / "x.jsonl", [record("ok"), rec])
        with pytest.raises(DatasetFormatError, match=r":2:"):
            load_dataset(path, TAG_MAP)

    def test_malformed_json_names_line(self, tmp_path):
        path = tmp_path / "x.jsonl"
        path.write_text(json.dumps(record()) + "\n{oops\n",
                        encoding="utf-8")
        with pytest.raises(DatasetFormatError, match=r":2:.*malformed"):
            load_dataset(path, TAG_MAP)

    def test_duplicate_id_rejected(self, tmp_path):
        path = write_jsonl(tmp_path / "x.jsonl",
                           [record("same"), record("same")])
        with pytest.raises(DatasetFormatError, match="duplicate"):
            load_dataset(path, TAG_MAP)

    def test_unmapped_tag_is_an_error(self, tmp_path):
        rec = record()
        rec["sentences"] = [[{"t": "word", "p": "XYZ"}]]
        path = write_jsonl(tmp_path / "x.jsonl", [rec])
        with pytest.raises(DatasetFormatError, match="unmapped POS tag"):
            load_dataset(path, TAG_MAP)

    def test_whitespace_surface_rejected(self, tmp_path):
        rec = record()
        rec["sentences"] = [[{"t": "two words", "p": "NN"}]]
        path = write_jsonl(tmp_path / "x.jsonl", [rec])
        with pytest.raises(DatasetFormatError, match="whitespace"):
            load_dataset(path, TAG_MAP)

    def test_empty_keyphrase_rejected(self, tmp_path):
        path = write_jsonl(tmp_path / "x.jsonl",
                           [record(keyphrases=["ok", "  "])])
        with pytest.raises(DatasetFormatError, match="non-empty"):
            load_dataset(path, TAG_MAP)

    def test_roundtrip_is_lossless(self, tmp_path):
        records = [record("a"), record("b", lang="fr")]
        path = write_jsonl(tmp_path / "x.jsonl", records)
        split = load_dataset(path, TAG_MAP)
        dumped = dump_dataset(split)
        reloaded = load_dataset(
            write_jsonl(tmp_path / "y.jsonl",
                        [json.loads(line) for line in
                         dumped.splitlines()]),
            {"NOUN": "NOUN", "ADJ": "ADJ", "OTHER": "OTHER"})
        for original, copied in zip(split.documents, reloaded.documents):
            assert [t.surface for s in original.sentences
                    for t in s.tokens] == \
                [t.surface for s in copied.sentences for t in s.tokens]
            assert original.reference_keyphrases == \
                copied.reference_keyphrases


class TestTagMapFile:
    def test_load(self, tmp_path):
        path = tmp_path / "map.tsv"
        path.write_text("# comment\nNN\tNOUN\nJJ\tADJ\n", encoding="utf-8")
        assert load_tag_map(path) == {"NN": "NOUN", "JJ": "ADJ"}

    def test_bad_coarse_tag(self, tmp_path):
        path = tmp_path / "map.tsv"
        path.write_text("NN\tVERB\n", encoding="utf-8")
        with pytest.raises(DatasetFormatError, match="coarse tag"):
            load_tag_map(path)


class TestControlledVocabulary:
    def test_stem_dedup_across_documents(self):
        split = DatasetSplit("train", [
            make_doc("A", [[("x", "N")]], refs=["verb", "syntax"]),
            make_doc("B", [[("x", "N")]], refs=["verbs"]),
        ])
        vocab = build_controlled_vocabulary(split, PorterStemmer())
        assert sorted(e.stem_key for e in vocab.entries) == \
            [("syntax",), ("verb",)]

    def test_duplicates_within_document_collapse(self):
        split = DatasetSplit("train",
                             [make_doc("A", [[("x", "N")]],
                                       refs=["x", "x"])])
        vocab = build_controlled_vocabulary(split, IdentityStemmer())
        assert len(vocab) == 1
        assert vocab.doc_entries["A"] == (("x",),)

    def test_surface_is_most_frequent_variant(self):
        split = DatasetSplit("train", [
            make_doc("A", [[("x", "N")]], refs=["Verb"]),
            make_doc("B", [[("x", "N")]], refs=["verbs"]),
            make_doc("C", [[("x", "N")]], refs=["verbs"]),
        ])
        vocab = build_controlled_vocabulary(split, PorterStemmer())
        assert vocab.entries[0].surface == "verbs"

    def test_surface_tie_breaks_lexicographically(self):
        split = DatasetSplit("train", [
            make_doc("A", [[("x", "N")]], refs=["verbs"]),
            make_doc("B", [[("x", "N")]], refs=["Verb"]),
        ])
        vocab = build_controlled_vocabulary(split, PorterStemmer())
        assert vocab.entries[0].surface == "Verb"

    def test_empty_split_rejected(self):
        with pytest.raises(ValueError, match="empty train split"):
            build_controlled_vocabulary(DatasetSplit("train", []),
                                        IdentityStemmer())

    def test_matches_brute_force_set_union(self):
        # independent oracle: set of stem keys over all references
        import random
        rng = random.Random(7)
        pool = ["verb", "verbs", "syntax", "parse tree", "parse trees",
                "grammar", "lexical semantics", "Lexical Semantics",
                "corpus study", "corpora"]
        docs = []
        for i in range(40):
            refs = rng.sample(pool, rng.randint(1, 5))
            docs.append(make_doc(f"d{i}", [[("x", "N")]], refs=refs))
        split = DatasetSplit("train", docs)
        stemmer = PorterStemmer()
        vocab = build_controlled_vocabulary(split, stemmer)
        expected = {keyphrase_stem_key(r, stemmer)
                    for d in docs for r in d.reference_keyphrases}
        assert {e.stem_key for e in vocab.entries} == expected
        assert len(vocab.entries) == len(expected)

    def test_deterministic_construction(self):
        split = DatasetSplit("train", [
            make_doc("A", [[("x", "N")]], refs=["b", "a", "c"]),
            make_doc("B", [[("x", "N")]], refs=["c", "d"]),
        ])
        first = build_controlled_vocabulary(split, IdentityStemmer())
        second = build_controlled_vocabulary(split, IdentityStemmer())
        assert [e.stem_key for e in first.entries] == \
            [e.stem_key for e in second.entries]
        assert first.doc_entries == second.doc_entries
