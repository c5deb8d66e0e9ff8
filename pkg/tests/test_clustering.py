import itertools

import pytest

from tagreduce.clustering import (ClusteringConfig, ClusteringError, MergeStep, candidate_pairs,
                                  evaluate_candidate, greedy_cluster, is_admissible_clustering,
                                  replay_trace)
from tagreduce.corpus import Corpus, parse_corpus, split_corpus
from tagreduce.lexicon import build_lexicon
from tagreduce.ngram import count_ngrams
from tagreduce.synthetic import generate_planted_corpus
from tagreduce.tagset import identity_clustering, merge

from conftest import random_lexicon


def brute_pairs(clustering, lexicon):
    out = []
    for i, j in itertools.combinations(range(len(clustering)), 2):
        union = clustering[i].members + clustering[j].members
        if not any(len(lexicon.tags_of(w) & set(union)) > 1 for w in lexicon.words):
            out.append((i, j))
    return out


def test_candidate_pairs_match_brute_force(rng):
    for _ in range(20):
        lex = random_lexicon(rng, n_tags=10, n_words=30, ambiguity=0.3)
        clustering = identity_clustering(lex.tagset)
        for _ in range(3):
            pairs = candidate_pairs(clustering, lex)
            assert pairs == brute_pairs(clustering, lex)
            if not pairs:
                break
            clustering = merge(clustering, *rng.choice(pairs), lex)


def test_candidate_pairs_sorted_by_name(rng):
    lex = random_lexicon(rng, n_tags=12, n_words=20)
    clustering = identity_clustering(lex.tagset)
    named = [(clustering[i].name, clustering[j].name)
             for i, j in candidate_pairs(clustering, lex)]
    assert named == sorted(named)


@pytest.fixture(scope="module")
def small_split():
    sc = generate_planted_corpus(n_tags=8, n_planted=2, vocab_size=150, n_sentences=260,
                                 seed=5, ambiguity=0.1)
    split = split_corpus(sc.corpus, (0.7, 0.3, 0.0))
    lexicon = build_lexicon(Corpus.concat(split.training, split.clustering))
    counts = count_ngrams(split.training, tagset=list(lexicon.tagset))
    return counts, split.clustering, lexicon, sc.planted


def test_greedy_is_monotone_and_admissible(small_split):
    counts, part, lexicon, _ = small_split
    trace = greedy_cluster(counts, part, lexicon)
    assert trace.steps
    for step in trace.steps:
        assert step.accuracy_after >= step.accuracy_before
    assert is_admissible_clustering(trace.clustering, lexicon)
    assert len(trace.clustering) == trace.original_size - len(trace.steps)
    assert trace.steps[-1].tagset_size_after == len(trace.clustering)


def test_greedy_is_deterministic_across_workers(small_split):
    counts, part, lexicon, _ = small_split
    one = greedy_cluster(counts, part, lexicon, ClusteringConfig(threads=1))
    two = greedy_cluster(counts, part, lexicon, ClusteringConfig(threads=2))
    assert one.to_json() == two.to_json()
    assert one.clustering == two.clustering


def test_recorded_accuracy_is_reproducible(small_split):
    counts, part, lexicon, _ = small_split
    trace = greedy_cluster(counts, part, lexicon, ClusteringConfig(max_merges=2))
    assert len(trace.steps) <= 2
    replayed = replay_trace(counts.labels, trace.steps, lexicon)
    assert replayed == trace.clustering
    assert evaluate_candidate(counts, replayed, part, lexicon) == trace.final_accuracy
    ident = identity_clustering(counts.labels)
    assert evaluate_candidate(counts, ident, part, lexicon) == trace.initial_accuracy


def test_strict_improvement_never_accepts_ties(small_split):
    counts, part, lexicon, _ = small_split
    trace = greedy_cluster(counts, part, lexicon, ClusteringConfig(strict_improvement=True))
    for step in trace.steps:
        assert step.accuracy_after > step.accuracy_before


def test_max_merges_zero_keeps_identity(small_split):
    counts, part, lexicon, _ = small_split
    trace = greedy_cluster(counts, part, lexicon, ClusteringConfig(max_merges=0))
    assert trace.steps == [] and trace.clustering.is_identity()
    assert trace.final_accuracy == trace.initial_accuracy


def test_fully_constrained_lexicon_gives_identity():
    # every pair of tags shares a word, so no merge is admissible
    text = "x\tA\ny\tB\nz\tC\n\nx\tB\ny\tC\nz\tA\n\nx\tC\n"
    corpus = parse_corpus(text)
    lex = build_lexicon(corpus)
    trace = greedy_cluster(count_ngrams(corpus), corpus, lex)
    assert trace.steps == [] and len(trace.clustering) == 3


def test_empty_part_rejected():
    corpus = parse_corpus("x\tA\n")
    with pytest.raises(ClusteringError):
        greedy_cluster(count_ngrams(corpus), Corpus((), corpus.tagset), build_lexicon(corpus))


def test_merge_step_serialization():
    step = MergeStep(("A", "B"), "{A,B}", 0.5, 0.6, 3)
    assert step.to_dict()["merged"] == ["A", "B"]
    assert replay_trace(["A", "B", "C"], [step.to_dict()],
                        build_lexicon(parse_corpus("a\tA\nb\tB\nc\tC\n"))).names == ("C", "{A,B}")
