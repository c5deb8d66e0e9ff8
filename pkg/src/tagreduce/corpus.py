"""Reading, writing and splitting tagged corpora.

The on-disk format is one token per line, ``word<TAB>tag``, with a blank
line after every sentence.  Lines starting with ``#`` are comments.
"""
from __future__ import annotations

import io
import math
import random
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence, TextIO

from .tagset import Tagset

BOUNDARY_NAMES = frozenset({"<BOS>", "<EOS>"})


class CorpusError(ValueError):
    """Raised for malformed corpus input; ``lineno`` is 1-based when known."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class SplitError(ValueError):
    pass


class TaggedToken(NamedTuple):
    word: str
    tag: str


Sentence = tuple  # tuple[TaggedToken, ...], never empty


@dataclass(frozen=True)
class Corpus:
    sentences: tuple
    tagset: Tagset

    @classmethod
    def from_sentences(cls, sentences: Iterable[Sequence], tagset: Tagset | None = None) -> "Corpus":
        sents = tuple(tuple(TaggedToken(w, t) for w, t in s) for s in sentences)
        for s in sents:
            if not s:
                raise CorpusError("empty sentence")
        seen = Tagset(t for s in sents for _, t in s)
        if tagset is None:
            tagset = seen
        else:
            missing = [t for t in seen if t not in tagset]
            if missing:
                raise CorpusError(f"tags not in tagset: {missing}")
        return cls(sents, tagset)

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    @property
    def n_tokens(self) -> int:
        return sum(len(s) for s in self.sentences)

    def words(self) -> list[list[str]]:
        return [[tok.word for tok in s] for s in self.sentences]

    def tags(self) -> list[list[str]]:
        return [[tok.tag for tok in s] for s in self.sentences]

    @staticmethod
    def concat(*parts: "Corpus") -> "Corpus":
        sents = tuple(s for p in parts for s in p.sentences)
        tagset = Tagset(t for p in parts for t in p.tagset)
        return Corpus(sents, tagset)


def parse_corpus(stream: TextIO | str) -> Corpus:
    """Parse tab-separated tagged text.

    A final sentence without a terminating blank line is accepted.  Every
    malformed line raises :class:`CorpusError` with its line number.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    sentences = []
    current: list[TaggedToken] = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if line.startswith("#"):
            continue
        if not line.strip():
            if current:
                sentences.append(tuple(current))
                current = []
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            what = "missing tab" if len(parts) == 1 else "more than one tab"
            raise CorpusError(f"{what}: {line!r}", lineno)
        word, tag = parts
        if not word:
            raise CorpusError("empty word", lineno)
        tag = tag.rstrip()
        if not tag:
            raise CorpusError("empty tag", lineno)
        if any(c.isspace() for c in tag):
            raise CorpusError(f"whitespace in tag {tag!r}", lineno)
        if tag in BOUNDARY_NAMES:
            raise CorpusError(f"reserved tag name {tag!r}", lineno)
        current.append(TaggedToken(word, tag))
    if current:
        sentences.append(tuple(current))
    if not sentences:
        raise CorpusError("no sentences")
    return Corpus(tuple(sentences), Tagset(t for s in sentences for _, t in s))


def read_corpus(path) -> Corpus:
    with open(path, encoding="utf-8") as fh:
        return parse_corpus(fh)


def serialize_corpus(corpus: Corpus | Iterable[Sequence]) -> str:
    sentences = corpus.sentences if isinstance(corpus, Corpus) else corpus
    out = []
    for s in sentences:
        for word, tag in s:
            out.append(f"{word}\t{tag}\n")
        out.append("\n")
    return "".join(out)


def write_corpus(corpus: Corpus, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_corpus(corpus))


def parse_plain(stream: TextIO | str) -> list[list[str]]:
    """Read untagged input: one word per line, blank line between sentences.

    A second column, if present, is ignored so tagged files can be re-tagged.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    sentences, current = [], []
    for raw in stream:
        line = raw.rstrip("\n").rstrip("\r")
        if line.startswith("#"):
            continue
        if not line.strip():
            if current:
                sentences.append(current)
                current = []
            continue
        current.append(line.split("\t")[0])
    if current:
        sentences.append(current)
    return sentences


@dataclass(frozen=True)
class CorpusSplit:
    training: Corpus
    clustering: Corpus
    testing: Corpus


def _check_fractions(fractions: Sequence[float]) -> None:
    if any(f < 0 for f in fractions):
        raise SplitError(f"negative split fraction in {list(fractions)}")
    if math.fsum(fractions) > 1.0 + 1e-9:
        raise SplitError(f"split fractions sum to more than 1: {list(fractions)}")


def split_parts(
    corpus: Corpus,
    fractions: Sequence[float] | None = None,
    mode: str = "contiguous",
    seed: int = 0,
    ranges: Sequence[tuple[int, int]] | None = None,
) -> list[Corpus]:
    """Cut ``corpus`` into sentence-granular parts.

    Either ``fractions`` (of the sentence count) or explicit half-open
    sentence-index ``ranges`` must be given.  In shuffled mode the sentence
    order is permuted with ``random.Random(seed)`` before cutting.
    Sentences not covered by any part are discarded.
    """
    n = len(corpus.sentences)
    order = list(range(n))
    if mode == "shuffled":
        random.Random(seed).shuffle(order)
    elif mode != "contiguous":
        raise SplitError(f"unknown split mode {mode!r}")

    if ranges is not None:
        bounds = []
        for lo, hi in ranges:
            if not 0 <= lo <= hi <= n:
                raise SplitError(f"range {lo}:{hi} outside 0:{n}")
            bounds.append((lo, hi))
        spans = sorted(bounds)
        for (_, hi), (lo, _) in zip(spans, spans[1:]):
            if lo < hi:
                raise SplitError("sentence ranges overlap")
    elif fractions is not None:
        _check_fractions(fractions)
        bounds, start = [], 0
        for i, f in enumerate(fractions):
            cum = math.fsum(fractions[: i + 1])
            end = min(n, round(cum * n))
            end = max(end, start)
            bounds.append((start, end))
            start = end
    else:
        raise SplitError("need split fractions or ranges")

    parts = []
    for lo, hi in bounds:
        sents = tuple(corpus.sentences[i] for i in order[lo:hi])
        parts.append(Corpus(sents, Tagset(t for s in sents for _, t in s)))
    return parts


def split_corpus(
    corpus: Corpus,
    fractions: Sequence[float] | None = (0.8, 0.1, 0.1),
    mode: str = "contiguous",
    seed: int = 0,
    ranges: Sequence[tuple[int, int]] | None = None,
) -> CorpusSplit:
    """Training / clustering / testing split; see :func:`split_parts`."""
    spec = ranges if ranges is not None else fractions
    if spec is None or len(spec) != 3:
        raise SplitError("a corpus split needs exactly three parts")
    training, clustering, testing = split_parts(corpus, fractions, mode, seed, ranges)
    return CorpusSplit(training, clustering, testing)


def parse_split_spec(text: str) -> list[float]:
    try:
        fractions = [float(x) for x in text.split(",")]
    except ValueError as exc:
        raise SplitError(f"bad split spec {text!r}") from exc
    _check_fractions(fractions)
    return fractions
