"""scikit-learn style wrappers around the tagging pipeline.

``X`` is a list of sentences (lists of words) and ``y`` the matching
lists of tags, so the taggers drop into ``GridSearchCV`` or
``cross_val_score`` like any other estimator.
"""
from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import check_sentences, check_tagged
from .clustering import ClusteringConfig, greedy_cluster
from .corpus import Corpus
from .evaluation import accuracy
from .lexicon import build_lexicon
from .ngram import TrigramModel, count_ngrams, project_model
from .tagger import tag_and_restore
from .tagset import ClusterTagset, check_admissible, identity_clustering


class TrigramTagger(BaseEstimator):
    """Trigram HMM tagger over the original tagset.

    Parameters
    ----------
    lowercase : bool
        Case-fold words for the lexicon and emission counts.
    beam_width : int or None
        Keep only this many decoder states per token; None decodes exactly.
    """

    def __init__(self, lowercase=False, beam_width=None):
        self.lowercase = lowercase
        self.beam_width = beam_width

    def _fit_model(self, train: Corpus, extra: Corpus | None, clusters: ClusterTagset | None):
        lex_corpus = Corpus.concat(train, extra) if extra is not None else train
        self.lexicon_ = build_lexicon(lex_corpus, lowercase=self.lowercase)
        self.tags_ = tuple(self.lexicon_.tagset)
        self.counts_ = count_ngrams(train, tagset=self.tags_, lowercase=self.lowercase)
        if clusters is None:
            clusters = identity_clustering(self.tags_)
        self.clusters_ = clusters
        self.model_ = TrigramModel(project_model(self.counts_, clusters))
        return self

    def fit(self, X, y):
        X, y = check_tagged(X, y)
        return self._fit_model(Corpus.from_sentences(zip(w, t) for w, t in zip(X, y)), None, None)

    def predict(self, X):
        check_is_fitted(self, "model_")
        X = check_sentences(X)
        return [list(tag_and_restore(words, self.model_, self.clusters_, self.lexicon_,
                                     self.beam_width).tags) for words in X]

    def score(self, X, y):
        """Known-word accuracy on ``(X, y)``."""
        X, y = check_tagged(X, y)
        gold = Corpus.from_sentences(zip(w, t) for w, t in zip(X, y))
        return accuracy(gold, self.predict(X), self.lexicon_).known_accuracy

    @property
    def n_tags_(self) -> int:
        return len(self.clusters_)


class ClusteredTrigramTagger(TrigramTagger):
    """Trigram tagger that decodes with a reduced tagset and outputs original tags.

    The reduced tagset is learned in ``fit`` from a held-out clustering
    part (``X_cluster``, ``y_cluster``) by greedy accuracy-driven merging.
    Without a clustering part, ``clusters`` is used if given, else the
    identity clustering.

    Attributes
    ----------
    clusters_ : ClusterTagset
    trace_ : ClusterTrace or None
    """

    def __init__(self, lowercase=False, beam_width=None, strict_improvement=False,
                 max_merges=None, n_jobs=1, clusters=None):
        super().__init__(lowercase=lowercase, beam_width=beam_width)
        self.strict_improvement = strict_improvement
        self.max_merges = max_merges
        self.n_jobs = n_jobs
        self.clusters = clusters

    def fit(self, X, y, X_cluster=None, y_cluster=None):
        X, y = check_tagged(X, y)
        train = Corpus.from_sentences(zip(w, t) for w, t in zip(X, y))
        self.trace_ = None
        if X_cluster is None:
            self._fit_model(train, None, None)
            if self.clusters is not None:
                clusters = ClusterTagset(self.clusters.clusters)
                check_admissible(clusters, self.lexicon_)
                self.clusters_ = clusters
                self.model_ = TrigramModel(project_model(self.counts_, clusters))
            return self
        Xc, yc = check_tagged(X_cluster, y_cluster)
        part = Corpus.from_sentences(zip(w, t) for w, t in zip(Xc, yc))
        self._fit_model(train, part, None)
        config = ClusteringConfig(self.strict_improvement, self.max_merges, self.n_jobs,
                                  self.beam_width)
        self.trace_ = greedy_cluster(self.counts_, part, self.lexicon_, config)
        self.clusters_ = self.trace_.clustering
        self.model_ = TrigramModel(project_model(self.counts_, self.clusters_))
        return self

    def reduce_tags(self, y):
        """Replace original tags by their cluster names."""
        check_is_fitted(self, "clusters_")
        return [[self.clusters_.cluster_of(t).name for t in tags] for tags in y]

    def decode_clusters(self, X):
        """Cluster-level predictions before restoration."""
        check_is_fitted(self, "model_")
        X = check_sentences(X)
        return [list(tag_and_restore(words, self.model_, self.clusters_, self.lexicon_,
                                     self.beam_width).clusters) for words in X]
