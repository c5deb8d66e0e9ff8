import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from tagreduce.estimators import ClusteredTrigramTagger, TrigramTagger
from tagreduce.synthetic import generate_planted_corpus
from tagreduce.tagset import Cluster, ClusterTagset, ConstraintViolation


@pytest.fixture(scope="module")
def data():
    sc = generate_planted_corpus(n_tags=8, n_planted=2, vocab_size=150, n_sentences=300,
                                 seed=9, ambiguity=0.1)
    X, y = sc.corpus.words(), sc.corpus.tags()
    return X[:200], y[:200], X[200:250], y[200:250], X[250:], y[250:]


def test_params_and_clone():
    est = ClusteredTrigramTagger(max_merges=3, n_jobs=2)
    params = est.get_params()
    assert params["max_merges"] == 3 and params["n_jobs"] == 2
    twin = clone(est)
    assert twin.get_params() == params
    assert TrigramTagger(lowercase=True).set_params(beam_width=4).beam_width == 4


def test_unfitted_predict():
    with pytest.raises(NotFittedError):
        TrigramTagger().predict([["a"]])


def test_fit_predict_score(data):
    X, y, _, _, Xt, yt = data
    est = TrigramTagger().fit(X, y)
    pred = est.predict(Xt)
    assert [len(p) for p in pred] == [len(s) for s in Xt]
    assert 0.8 < est.score(Xt, yt) <= 1.0
    assert est.n_tags_ == 8


def test_clustered_fit(data):
    X, y, Xc, yc, Xt, yt = data
    est = ClusteredTrigramTagger().fit(X, y, Xc, yc)
    assert est.trace_ is not None
    assert est.n_tags_ == 8 - len(est.trace_.steps)
    assert est.score(Xt, yt) > 0.8
    reduced = est.reduce_tags(yt[:1])[0]
    assert all(r in est.clusters_.names for r in reduced)
    clusters = est.decode_clusters(Xt[:3])
    restored = est.predict(Xt[:3])
    for cs, ts in zip(clusters, restored):
        assert [est.clusters_.cluster_of(t).name for t in ts] == cs


def test_given_clusters_checked(data):
    X, y, *_ = data
    est = TrigramTagger().fit(X, y)
    pair = next((a, b) for a in est.tags_ for b in est.tags_
                if a < b and est.lexicon_.words_of(a) & est.lexicon_.words_of(b))
    bad = ClusterTagset([Cluster(pair)] + [Cluster((t,)) for t in est.tags_ if t not in pair])
    with pytest.raises(ConstraintViolation):
        ClusteredTrigramTagger(clusters=bad).fit(X, y)


def test_without_clustering_part_is_plain_tagger(data):
    X, y, _, _, Xt, _ = data
    plain = TrigramTagger().fit(X, y).predict(Xt)
    assert ClusteredTrigramTagger().fit(X, y).predict(Xt) == plain


@pytest.mark.parametrize("X, y", [
    ("abc", [["A"]]),
    ([["a"]], [["A"], ["B"]]),
    ([["a", "b"]], [["A"]]),
    ([[]], [[]]),
    ([["a"]], [["<EOS>"]]),
    ([["a"]], [["A B"]]),
])
def test_input_validation(X, y):
    with pytest.raises((TypeError, ValueError)):
        TrigramTagger().fit(X, y)
