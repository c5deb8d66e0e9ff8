import random

import pytest
from hypothesis import given, settings, strategies as st

from tagreduce.corpus import (Corpus, CorpusError, SplitError, parse_corpus, parse_plain,
                              parse_split_spec, serialize_corpus, split_corpus, split_parts)

from conftest import random_corpus


def test_single_token_sentence():
    c = parse_corpus("easier\tJJR\n")
    assert len(c) == 1
    assert c.sentences[0] == (("easier", "JJR"),)
    assert list(c.tagset) == ["JJR"]


def test_blank_lines_and_comments():
    text = "# header\nthe\tAT\ncliff\tNN\n\n\n# between\na\tAT\n\n"
    c = parse_corpus(text)
    assert [len(s) for s in c] == [2, 1]
    assert c.n_tokens == 3


@pytest.mark.parametrize("text, lineno, fragment", [
    ("the\tAT\nbad line\n", 2, "missing tab"),
    ("a\tB\tC\n", 1, "more than one tab"),
    ("\tAT\n", 1, "empty word"),
    ("w\t\n", 1, "empty tag"),
    ("w\tA B\n", 1, "whitespace"),
    ("x\tY\n\nw\t<BOS>\n", 3, "reserved"),
])
def test_malformed_lines_report_line_number(text, lineno, fragment):
    with pytest.raises(CorpusError) as info:
        parse_corpus(text)
    assert info.value.lineno == lineno
    assert fragment in str(info.value)
    assert f"line {lineno}" in str(info.value)


def test_empty_input_rejected():
    with pytest.raises(CorpusError, match="no sentences"):
        parse_corpus("# only a comment\n\n")


def test_crlf_and_final_sentence_without_blank_line():
    c = parse_corpus("a\tX\r\nb\tY")
    assert c.sentences == ((("a", "X"), ("b", "Y")),)


def test_from_sentences_rejects_empty_sentence():
    with pytest.raises(CorpusError):
        Corpus.from_sentences([[("a", "X")], []])


def test_parse_plain_ignores_tag_column():
    assert parse_plain("a\nb\tX\n\nc\n") == [["a", "b"], ["c"]]


words = st.text(st.characters(blacklist_categories=("Cs", "Cc", "Zl", "Zp")), min_size=1,
                max_size=6).filter(lambda w: not w.startswith("#") and w.strip())
tags = st.text("ABCDEFGHJKNPRSTZ$,.", min_size=1, max_size=4)
sentences = st.lists(st.lists(st.tuples(words, tags), min_size=1, max_size=6),
                     min_size=1, max_size=6)


@given(sentences)
@settings(max_examples=80, deadline=None)
def test_serialize_parse_round_trip(sents):
    c = Corpus.from_sentences(sents)
    back = parse_corpus(serialize_corpus(c))
    assert back.sentences == c.sentences
    assert list(back.tagset) == list(c.tagset)


@given(st.integers(0, 60), st.lists(st.floats(0, 1), min_size=1, max_size=4),
       st.sampled_from(["contiguous", "shuffled"]), st.integers(0, 5))
@settings(max_examples=80, deadline=None)
def test_split_parts_are_disjoint_and_ordered(n, raw, mode, seed):
    total = sum(raw)
    fractions = [x / total for x in raw] if total > 1 else raw
    corpus = Corpus.from_sentences([[(f"w{i}", "T")] for i in range(max(n, 1))])
    parts = split_parts(corpus, fractions, mode, seed)
    assert len(parts) == len(fractions)
    ids = [s[0].word for p in parts for s in p]
    assert len(ids) == len(set(ids))
    if mode == "contiguous":
        assert ids == sorted(ids, key=lambda w: int(w[1:]))
    if abs(sum(fractions) - 1) < 1e-12:
        assert len(ids) == len(corpus)


def test_split_sizes_follow_fractions():
    corpus = Corpus.from_sentences([[(f"w{i}", "T")] for i in range(100)])
    split = split_corpus(corpus, (0.8, 0.1, 0.1))
    assert [len(split.training), len(split.clustering), len(split.testing)] == [80, 10, 10]
    assert split.training.sentences[0][0].word == "w0"


def test_shuffled_split_is_seeded():
    corpus = random_corpus(random.Random(0), n_sentences=50)
    a = split_corpus(corpus, mode="shuffled", seed=3)
    b = split_corpus(corpus, mode="shuffled", seed=3)
    c = split_corpus(corpus, mode="shuffled", seed=4)
    assert a == b
    assert a.testing.sentences != c.testing.sentences


def test_split_ranges():
    corpus = Corpus.from_sentences([[(f"w{i}", "T")] for i in range(10)])
    parts = split_parts(corpus, ranges=[(0, 6), (6, 8), (8, 10)])
    assert [len(p) for p in parts] == [6, 2, 2]
    with pytest.raises(SplitError, match="overlap"):
        split_parts(corpus, ranges=[(0, 6), (5, 8)])
    with pytest.raises(SplitError):
        split_parts(corpus, ranges=[(0, 11)])


@pytest.mark.parametrize("spec", ["0.8,0.3,0.1", "-0.1,0.5,0.5", "a,b", ""])
def test_bad_split_specs(spec):
    with pytest.raises(SplitError):
        parse_split_spec(spec)


def test_split_corpus_needs_three_parts():
    corpus = Corpus.from_sentences([[("a", "T")]])
    with pytest.raises(SplitError):
        split_corpus(corpus, (0.5, 0.5))
    with pytest.raises(SplitError):
        split_parts(corpus, (0.5, 0.5), mode="striped")
