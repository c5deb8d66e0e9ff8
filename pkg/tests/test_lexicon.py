from tagreduce.corpus import parse_corpus
from tagreduce.lexicon import build_lexicon, format_lexicon, merge_lexicons, parse_lexicon

CORPUS = parse_corpus("a\tAT\nsheer\tJJ\ncliff\tNN\n\nthe\tAT\ncliff\tNP\n\nEasier\tJJR\n")


def test_tags_of():
    lex = build_lexicon(CORPUS)
    assert lex.tags_of("cliff") == {"NN", "NP"}
    assert lex.tags_of("Easier") == {"JJR"}
    assert lex.tags_of("zebra") == frozenset()
    assert not lex.is_known("zebra")
    assert lex.count("cliff", "NP") == 1
    assert lex.total_count("AT") == 2
    assert lex.words_of("AT") == {"a", "the"}


def test_lowercase_lookup():
    lex = build_lexicon(CORPUS, lowercase=True)
    assert lex.tags_of("EASIER") == {"JJR"}
    assert build_lexicon(CORPUS).tags_of("easier") == frozenset()


def test_tagset_follows_corpus():
    assert list(build_lexicon(CORPUS).tagset) == list(CORPUS.tagset)


def test_dump_round_trip():
    lex = build_lexicon(CORPUS)
    text = format_lexicon(lex)
    assert text.splitlines()[0] == "Easier\tJJR\t1"
    assert parse_lexicon(text) == lex


def test_merge_lexicons_adds_counts():
    lex = build_lexicon(CORPUS)
    both = merge_lexicons([lex, lex])
    assert both.count("cliff", "NN") == 2
    assert both.tags_of("cliff") == lex.tags_of("cliff")
