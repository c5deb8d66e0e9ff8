"""Tag n-gram counts and the interpolated trigram model.

States are dense integer ids into ``labels``; the two pseudo-tags
``BOS`` and ``EOS`` use the negative ids below.  Every sentence is padded
as ``BOS BOS t1 ... tn EOS``.
"""
from __future__ import annotations

import io
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from .tagset import ClusterTagset

BOS = -1
EOS = -2
BOUNDARY = {BOS: "<BOS>", EOS: "<EOS>"}
NEG_INF = float("-inf")


class ModelError(ValueError):
    pass


@dataclass
class NgramCounts:
    labels: tuple[str, ...]
    unigram: Counter = field(default_factory=Counter)
    bigram: Counter = field(default_factory=Counter)
    trigram: Counter = field(default_factory=Counter)
    emission: Counter = field(default_factory=Counter)
    token_total: int = 0
    lowercase: bool = False

    def label_id(self, name: str) -> int:
        if name == "<BOS>":
            return BOS
        if name == "<EOS>":
            return EOS
        index = self.__dict__.get("_index")
        if index is None or len(index) != len(self.labels):
            index = self.__dict__["_index"] = {n: i for i, n in enumerate(self.labels)}
        return index[name]

    def label(self, i: int) -> str:
        return BOUNDARY[i] if i < 0 else self.labels[i]

    def __add__(self, other: "NgramCounts") -> "NgramCounts":
        if self.labels != other.labels or self.lowercase != other.lowercase:
            raise ModelError("cannot add counts over different label sets")
        return NgramCounts(
            self.labels,
            self.unigram + other.unigram,
            self.bigram + other.bigram,
            self.trigram + other.trigram,
            self.emission + other.emission,
            self.token_total + other.token_total,
            self.lowercase,
        )

    def __eq__(self, other) -> bool:
        return (isinstance(other, NgramCounts)
                and self.labels == other.labels
                and self.unigram == other.unigram
                and self.bigram == other.bigram
                and self.trigram == other.trigram
                and self.emission == other.emission
                and self.token_total == other.token_total)


def count_ngrams(corpus, mapping: ClusterTagset | None = None, tagset=None,
                 lowercase: bool = False) -> NgramCounts:
    """Count padded uni/bi/trigrams and (tag, word) emissions.

    With ``mapping`` every tag is replaced by its cluster first.  ``tagset``
    fixes the label inventory when it should include tags the corpus lacks.
    """
    if mapping is not None:
        labels = mapping.names
        tag_id = dict(mapping.tag_to_cluster)
    else:
        names = tagset if tagset is not None else corpus.tagset
        labels = tuple(names)
        tag_id = {t: i for i, t in enumerate(labels)}
    counts = NgramCounts(labels, lowercase=lowercase)
    uni, bi, tri, emit = counts.unigram, counts.bigram, counts.trigram, counts.emission
    for sentence in corpus:
        seq = [BOS, BOS]
        for word, tag in sentence:
            t = tag_id[tag]
            seq.append(t)
            emit[t, word.lower() if lowercase else word] += 1
        seq.append(EOS)
        counts.token_total += len(sentence)
        for i in range(2, len(seq)):
            uni[seq[i]] += 1
            tri[seq[i - 2], seq[i - 1], seq[i]] += 1
        for i in range(1, len(seq)):
            bi[seq[i - 1], seq[i]] += 1
    return counts


def project_model(counts: NgramCounts, mapping: ClusterTagset) -> NgramCounts:
    """Sum counts over original tags into counts over ``mapping``'s clusters."""
    try:
        image = [mapping.tag_to_cluster[name] for name in counts.labels]
    except KeyError as exc:
        raise ModelError(f"mapping does not cover tag {exc.args[0]!r}") from None

    def img(t: int) -> int:
        return t if t < 0 else image[t]

    out = NgramCounts(mapping.names, token_total=counts.token_total, lowercase=counts.lowercase)
    for t, c in counts.unigram.items():
        out.unigram[img(t)] += c
    for (a, b), c in counts.bigram.items():
        out.bigram[img(a), img(b)] += c
    for (a, b, d), c in counts.trigram.items():
        out.trigram[img(a), img(b), img(d)] += c
    for (t, w), c in counts.emission.items():
        out.emission[img(t), w] += c
    return out


def extend_labels(counts: NgramCounts, tags) -> NgramCounts:
    """Append zero-count labels for ``tags`` the counts do not know yet."""
    known = set(counts.labels)
    missing = tuple(dict.fromkeys(t for t in tags if t not in known))
    if not missing:
        return counts
    return NgramCounts(counts.labels + missing, counts.unigram, counts.bigram,
                       counts.trigram, counts.emission, counts.token_total, counts.lowercase)


def _history_totals(counts: NgramCounts):
    bi_hist: dict[int, int] = defaultdict(int)
    for (a, b), c in counts.bigram.items():
        if b != BOS:
            bi_hist[a] += c
    tri_ctx: dict[tuple[int, int], int] = defaultdict(int)
    for (a, b, _), c in counts.trigram.items():
        tri_ctx[a, b] += c
    return dict(bi_hist), dict(tri_ctx)


def _exact_unit_sum(weights: list[float], fix: int) -> tuple[float, float, float]:
    # Nudge weights[fix] until the left-to-right float sum is exactly 1.0.
    for _ in range(64):
        total = weights[0] + weights[1] + weights[2]
        if total == 1.0:
            break
        direction = -math.inf if total > 1.0 else math.inf
        weights[fix] = max(0.0, math.nextafter(weights[fix], direction))
    return tuple(weights)


def estimate_lambdas(counts: NgramCounts) -> tuple[float, float, float]:
    """Deleted-interpolation weights (unigram, bigram, trigram).

    Each trigram type credits its count to the order whose leave-one-out
    relative frequency is largest; ties go to the lower order.
    """
    n = sum(counts.unigram.values())
    if n == 0 or not counts.trigram:
        raise ModelError("cannot estimate interpolation weights from empty counts")
    bi_hist, tri_ctx = _history_totals(counts)
    credit = [0, 0, 0]
    for (t1, t2, t3), f in counts.trigram.items():
        ctx = tri_ctx[t1, t2]
        c3 = (f - 1) / (ctx - 1) if ctx > 1 else 0.0
        hist = bi_hist.get(t2, 0)
        c2 = (counts.bigram[t2, t3] - 1) / (hist - 1) if hist > 1 else 0.0
        c1 = (counts.unigram[t3] - 1) / (n - 1) if n > 1 else 0.0
        best = max(c1, c2, c3)
        if c1 == best:
            credit[0] += f
        elif c2 == best:
            credit[1] += f
        else:
            credit[2] += f
    total = sum(credit)
    weights = [c / total for c in credit]
    return _exact_unit_sum(weights, max(range(3), key=lambda i: credit[i]))


class TrigramModel:
    """Linear interpolation of ML unigram, bigram and trigram estimates.

    Emission probabilities are unsmoothed relative frequencies.  Log
    probabilities are memoized, so a model should not be mutated after
    construction.
    """

    def __init__(self, counts: NgramCounts, lambdas: Sequence[float] | None = None):
        self.counts = counts
        self.lambdas = tuple(lambdas) if lambdas is not None else estimate_lambdas(counts)
        if len(self.lambdas) != 3 or min(self.lambdas) < 0 or abs(sum(self.lambdas) - 1) > 1e-12:
            raise ModelError(f"bad interpolation weights {self.lambdas}")
        self.labels = counts.labels
        self.n_labels = len(counts.labels)
        self._n = sum(counts.unigram.values())
        self._bi_hist, self._tri_ctx = _history_totals(counts)
        by_word: dict[str, dict[int, int]] = defaultdict(dict)
        for (t, w), c in counts.emission.items():
            by_word[w][t] = c
        self._by_word = dict(by_word)
        self._log_ctx: dict[tuple[int, int, int], float] = {}
        order = sorted(range(self.n_labels), key=lambda i: counts.labels[i])
        self.rank = [0] * self.n_labels
        for r, i in enumerate(order):
            self.rank[i] = r
        self.by_rank = order
        self.observed = [t for t in range(self.n_labels) if counts.unigram.get(t, 0) > 0]

    # ids <-> names
    def label_id(self, name) -> int:
        return name if isinstance(name, int) else self.counts.label_id(name)

    def label(self, i: int) -> str:
        return self.counts.label(i)

    def _word(self, word: str) -> str:
        return word.lower() if self.counts.lowercase else word

    def contextual_prob(self, t1, t2, t3) -> float:
        return self._prob(self.label_id(t1), self.label_id(t2), self.label_id(t3))

    def _prob(self, t1: int, t2: int, t3: int) -> float:
        if t3 == BOS:
            return 0.0
        l1, l2, l3 = self.lambdas
        c = self.counts
        p = l1 * c.unigram.get(t3, 0) / self._n if self._n else 0.0
        hist = self._bi_hist.get(t2, 0)
        if hist:
            p += l2 * c.bigram.get((t2, t3), 0) / hist
        ctx = self._tri_ctx.get((t1, t2), 0)
        if ctx:
            p += l3 * c.trigram.get((t1, t2, t3), 0) / ctx
        return min(p, 1.0)

    def log_contextual(self, t1: int, t2: int, t3: int) -> float:
        key = (t1, t2, t3)
        v = self._log_ctx.get(key)
        if v is None:
            p = self._prob(t1, t2, t3)
            v = math.log(p) if p > 0 else NEG_INF
            self._log_ctx[key] = v
        return v

    def lexical_prob(self, word: str, t) -> float:
        t = self.label_id(t)
        total = self.counts.unigram.get(t, 0)
        if not total:
            return 0.0
        return self._by_word.get(self._word(word), {}).get(t, 0) / total

    def log_lexical(self, word: str, t: int) -> float:
        p = self.lexical_prob(word, t)
        return math.log(p) if p > 0 else NEG_INF

    def tags_of(self, word: str) -> list[int]:
        """Label ids this word was emitted by in training, in id order."""
        return sorted(self._by_word.get(self._word(word), ()))

    def is_known(self, word: str) -> bool:
        return self._word(word) in self._by_word

    def most_frequent(self, word: str | None = None) -> int:
        """Most frequent label for ``word`` (or overall); ties to the smaller name."""
        if word is not None and self.is_known(word):
            pool = self._by_word[self._word(word)]
        else:
            pool = {t: self.counts.unigram.get(t, 0) for t in range(self.n_labels)}
        return min(pool, key=lambda t: (-pool[t], self.rank[t]))


def contextual_prob(model: TrigramModel, t1, t2, t3) -> float:
    return model.contextual_prob(t1, t2, t3)


def lexical_prob(model: TrigramModel, word: str, t) -> float:
    return model.lexical_prob(word, t)


# -- model dump --------------------------------------------------------------

def format_model(counts: NgramCounts, lambdas: Sequence[float]) -> str:
    # TAG lines keep label order; count records are sorted for stable diffs
    head = [f"LAMBDA\t{lambdas[0]!r} {lambdas[1]!r} {lambdas[2]!r}"]
    head += [f"TAG\t{name}" for name in counts.labels]
    body = [f"TRI\t{counts.label(a)} {counts.label(b)} {counts.label(d)}\t{c}"
            for (a, b, d), c in counts.trigram.items()]
    body += [f"EMIT\t{counts.label(t)} {w}\t{c}" for (t, w), c in counts.emission.items()]
    lines = head + sorted(body)
    return "\n".join(lines) + "\n"


def parse_model(stream, lowercase: bool = False) -> tuple[NgramCounts, tuple[float, float, float]]:
    """Rebuild counts from a model dump.

    Unigram and bigram counts are recovered from the trigrams, since every
    padded bigram and unigram is the tail of exactly one trigram (plus the
    leading ``BOS BOS`` bigram).
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    labels: list[str] = []
    tri_named: list[tuple[tuple[str, str, str], int]] = []
    emit_named: list[tuple[str, str, int]] = []
    lambdas = None
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n")
        if not line or line.startswith("#"):
            continue
        kind, _, rest = line.partition("\t")
        try:
            if kind == "LAMBDA":
                lambdas = tuple(float(x) for x in rest.split())
            elif kind == "TAG":
                labels.append(rest)
            elif kind == "TRI":
                key, count = rest.split("\t")
                names = tuple(key.split(" "))
                if len(names) != 3:
                    raise ValueError(f"bad trigram {key!r}")
                tri_named.append((names, int(count)))
            elif kind == "EMIT":
                key, count = rest.rsplit("\t", 1)
                tag, word = key.split(" ", 1)
                emit_named.append((tag, word, int(count)))
            else:
                raise ValueError(f"unknown record {kind!r}")
        except ValueError as exc:
            raise ModelError(f"line {lineno}: {exc}") from None
    if lambdas is None or len(lambdas) != 3:
        raise ModelError("model file has no LAMBDA record")
    counts = NgramCounts(tuple(labels), lowercase=lowercase)
    try:
        for (a, b, d), c in tri_named:
            ia, ib, id_ = counts.label_id(a), counts.label_id(b), counts.label_id(d)
            counts.trigram[ia, ib, id_] += c
            counts.bigram[ib, id_] += c
            counts.unigram[id_] += c
            if ia == BOS and ib == BOS:
                counts.bigram[BOS, BOS] += c
        for tag, word, c in emit_named:
            counts.emission[counts.label_id(tag), word] += c
            counts.token_total += c
    except KeyError as exc:
        raise ModelError(f"tag {exc.args[0]!r} has no TAG record") from None
    return counts, lambdas


def read_model(path, lowercase: bool = False):
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh, lowercase)


def write_model(counts: NgramCounts, lambdas, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_model(counts, lambdas))
