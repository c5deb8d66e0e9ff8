"""Trigram HMM tagging with lossless tagset reduction."""
from .corpus import (Corpus, CorpusError, CorpusSplit, TaggedToken, parse_corpus,
                     read_corpus, serialize_corpus, split_corpus)
from .lexicon import Lexicon, build_lexicon
from .ngram import NgramCounts, TrigramModel, count_ngrams, estimate_lambdas, project_model
from .tagger import tag_and_restore, viterbi_tag
from .tagset import (Cluster, ClusterTagset, Tagset, cluster_admissible, identity_clustering,
                     merge, restore_original)
from .clustering import ClusteringConfig, ClusterTrace, greedy_cluster
from .evaluation import EvalReport, accuracy, run_experiment, run_split
from .estimators import ClusteredTrigramTagger, TrigramTagger

__version__ = "0.1.0"

__all__ = [
    "Cluster", "ClusterTagset", "ClusterTrace", "ClusteredTrigramTagger", "ClusteringConfig",
    "Corpus", "CorpusError", "CorpusSplit", "EvalReport", "Lexicon", "NgramCounts",
    "TaggedToken", "Tagset", "TrigramModel", "TrigramTagger", "accuracy", "build_lexicon",
    "cluster_admissible", "count_ngrams", "estimate_lambdas", "greedy_cluster",
    "identity_clustering", "merge", "parse_corpus", "project_model", "read_corpus",
    "restore_original", "run_experiment", "run_split", "serialize_corpus", "split_corpus",
    "tag_and_restore", "viterbi_tag",
]
