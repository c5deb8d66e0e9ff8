import random

import pytest

from tagreduce.corpus import Corpus
from tagreduce.lexicon import Lexicon


def random_corpus(rng: random.Random, n_tags=4, vocab=8, n_sentences=30, max_len=7,
                  ambiguity=0.3) -> Corpus:
    """Small random tagged corpus; each word has one or two admissible tags."""
    tags = [f"T{i}" for i in range(n_tags)]
    words = []
    for i in range(vocab):
        k = 2 if rng.random() < ambiguity and n_tags > 1 else 1
        words.append((f"w{i}", rng.sample(tags, k)))
    sentences = []
    for _ in range(n_sentences):
        sent = []
        for _ in range(rng.randint(1, max_len)):
            w, ts = rng.choice(words)
            sent.append((w, rng.choice(ts)))
        sentences.append(sent)
    return Corpus.from_sentences(sentences)


def random_lexicon(rng: random.Random, n_tags=8, n_words=40, ambiguity=0.2) -> Lexicon:
    tags = [f"T{i:02d}" for i in range(n_tags)]
    entries = {}
    for i in range(n_words):
        k = 1 + (rng.random() < ambiguity) + (rng.random() < ambiguity / 4)
        entries[f"w{i}"] = {t: rng.randint(1, 9) for t in rng.sample(tags, min(k, n_tags))}
    for t in tags:  # every tag occurs at least once
        entries[f"only_{t}"] = {t: 1}
    return Lexicon(entries)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line for the acceptance summary."""
    lines = request.config.__dict__.setdefault("_acceptance_lines", [])

    def record(name: str, ok: bool, detail: str = "") -> bool:
        line = f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else "")
        lines.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.__dict__.get("_acceptance_lines")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
