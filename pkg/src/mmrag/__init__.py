"""Multimodal retrieval-augmented generation over biomedical literature.

Subpackages:
  ingest      article search/fetch, parsing, cleaning, chunking
  embed       text/image embedding providers, captioning, fine-tune descriptors
  fusion      cross-modal attention fusion and ablation baselines
  store       flat/HNSW vector index and id-addressed object store
  pipeline    index building and end-to-end query answering
  evaluation  IR/QA metrics, grading, proportion statistics, ablation runs
  service     HTTP API and config wiring
"""

__version__ = "0.1.0"
