"""Keyphrase annotation toolkit.

Annotates documents with keyphrases two ways and measures the result:

* ``topicrank`` — extraction only: noun/adjective candidates are clustered
  into topics, topics are ranked on a positional-proximity graph, and the
  first occurrence of each top topic is emitted.
* ``corank`` — joint extraction and assignment: document topics and a
  controlled vocabulary (the keyphrases of a training collection) are
  co-ranked on a unified graph, so vocabulary entries that never occur in
  the document can still be assigned.
* ``evaluation`` — stemmed-match precision/recall/F1, PR curves and paired
  significance tests.

The ``topickey`` console script ties the pieces into annotate / evaluate /
sweep / pr-curve commands over JSONL corpora.
"""

__version__ = "0.1.0"
