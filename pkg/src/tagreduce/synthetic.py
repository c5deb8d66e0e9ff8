"""Synthetic corpora with planted redundant tag pairs.

Sentences are generated from a first-order Markov chain over *roles*.
Most roles map to one tag; a planted role is realized as one of two tags
chosen by a fair coin, so both tags share the role's contextual behaviour
exactly.  The two tags of a planted pair never share a word, which makes
merging them admissible.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import Corpus, TaggedToken, serialize_corpus


@dataclass
class SyntheticCorpus:
    corpus: Corpus
    planted: list[tuple[str, str]]

    def to_text(self) -> str:
        header = "".join(f"# planted\t{a}\t{b}\n" for a, b in self.planted)
        return header + serialize_corpus(self.corpus)


def read_planted(text: str) -> list[tuple[str, str]]:
    pairs = []
    for line in text.splitlines():
        if line.startswith("# planted\t"):
            _, a, b = line.split("\t")
            pairs.append((a, b))
    return pairs


def generate_planted_corpus(
    n_tags: int = 20,
    n_planted: int = 3,
    vocab_size: int = 3000,
    n_sentences: int = 3600,
    seed: int = 0,
    ambiguity: float = 0.12,
    mean_length: float = 12.0,
) -> SyntheticCorpus:
    """Generate a tagged corpus with ``n_planted`` contextually identical tag pairs.

    ``ambiguity`` is the fraction of words that also receive a second tag;
    second tags are drawn from a few fixed confusable partners per tag and
    are never the word's planted twin.
    """
    if n_planted < 0 or n_tags < 2 * n_planted + 1:
        raise ValueError("need at least 2 * n_planted + 1 tags")
    rng = np.random.default_rng(seed)
    n_roles = n_tags - n_planted

    names = [f"T{i:02d}" for i in range(n_tags)]
    perm = rng.permutation(n_tags)
    tags = [names[i] for i in perm]
    # the first n_planted roles are split into two tags each
    role_tags: list[list[str]] = []
    k = 0
    for r in range(n_roles):
        width = 2 if r < n_planted else 1
        role_tags.append(tags[k:k + width])
        k += width
    planted = [tuple(sorted(rt)) for rt in role_tags if len(rt) == 2]
    twin = {}
    for a, b in planted:
        twin[a], twin[b] = b, a

    start = rng.dirichlet(np.full(n_roles, 0.5))
    trans = rng.dirichlet(np.full(n_roles, 0.3), size=n_roles)
    stop = 1.0 / mean_length

    # vocabulary: every word has a primary tag; some get a confusable second tag
    all_tags = [t for rt in role_tags for t in rt]
    partners = {}
    for t in all_tags:
        options = [u for u in all_tags if u != t and u != twin.get(t)]
        partners[t] = list(rng.choice(options, size=min(2, len(options)), replace=False))
    vocab: dict[str, list[str]] = {t: [] for t in all_tags}
    for i in range(vocab_size):
        word = f"w{i:05d}"
        primary = all_tags[i % len(all_tags)]
        vocab[primary].append(word)
        if rng.random() < ambiguity:
            vocab[str(rng.choice(partners[primary]))].append(word)
    weights = {}
    for t, words in vocab.items():
        ranks = np.arange(1, len(words) + 1)
        w = 1.0 / ranks
        weights[t] = w / w.sum()
        # shuffle so ambiguous words are not always the rarest
        order = rng.permutation(len(words))
        vocab[t] = [words[j] for j in order]

    sentences = []
    for _ in range(n_sentences):
        role = rng.choice(n_roles, p=start)
        sent = []
        while True:
            options = role_tags[role]
            tag = options[rng.integers(len(options))]
            word = vocab[tag][rng.choice(len(vocab[tag]), p=weights[tag])]
            sent.append(TaggedToken(word, tag))
            if len(sent) >= 3 and rng.random() < stop:
                break
            role = rng.choice(n_roles, p=trans[role])
        sentences.append(tuple(sent))
    return SyntheticCorpus(Corpus.from_sentences(sentences), [tuple(p) for p in planted])
