"""Second-order Viterbi decoding and restoration of original tags."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .ngram import BOS, EOS, NEG_INF, TrigramModel
from .tagset import (ClusterTagset, InconsistentClusterError, restore_original)


class DecodeError(ValueError):
    pass


@dataclass(frozen=True)
class TagSequence:
    tags: tuple[str, ...]
    ids: tuple[int, ...]
    guessed: tuple[bool, ...]
    log_prob: float
    degenerate: bool = False

    def __len__(self) -> int:
        return len(self.tags)

    def __iter__(self):
        return iter(self.tags)


@dataclass(frozen=True)
class RestoredSequence:
    tags: tuple[str, ...]
    clusters: tuple[str, ...]
    guessed: tuple[bool, ...]
    degenerate: bool = False

    def __len__(self) -> int:
        return len(self.tags)

    def __iter__(self):
        return iter(self.tags)


def _compare(a: float, b: float) -> int:
    # 1 if a is better than b, 0 if tied, -1 if worse.
    if a == b:
        return 0
    if b == NEG_INF:
        return 1
    if a == NEG_INF:
        return -1
    if abs(a - b) <= 1e-12 * max(1.0, abs(a), abs(b)):
        return 0
    return 1 if a > b else -1


def build_lattice(words: Sequence[str], model: TrigramModel, lexicon=None):
    """Candidate (label id, log emission) lists per token plus a guessed mask.

    Known words may only take the labels they were seen with.  Words the
    model never emitted get a uniform emission over every label, or over
    the ``lexicon`` tags when an external lexicon knows the word.
    """
    uniform = -math.log(model.n_labels) if model.n_labels else NEG_INF
    lattice, guessed = [], []
    for w in words:
        if model.is_known(w) and lexicon is None:
            cands = [(t, model.log_lexical(w, t)) for t in model.tags_of(w)]
            guessed.append(False)
        elif lexicon is not None and lexicon.is_known(w):
            ids = sorted(model.label_id(t) for t in lexicon.tags_of(w))
            if any(model.lexical_prob(w, t) > 0 for t in ids):
                cands = [(t, model.log_lexical(w, t)) for t in ids]
                guessed.append(False)
            else:
                cands = [(t, uniform) for t in ids]
                guessed.append(True)
        else:
            # labels never seen in training have zero contextual probability
            cands = [(t, uniform) for t in model.observed]
            guessed.append(True)
        lattice.append(cands)
    return lattice, guessed


def decode_lattice(lattice, model: TrigramModel, beam_width: int | None = None):
    """Best path through ``lattice``; returns (ids, log_prob).

    Among paths whose scores tie, the one whose label names are
    lexicographically smallest wins.  Zero-probability prefixes are dropped
    as soon as any positive-probability prefix exists.
    """
    rank = model.rank
    memo = model._log_ctx
    log_ctx = model.log_contextual
    # (prev, cur) -> (score, path as label ranks)
    states = {(BOS, BOS): (0.0, ())}
    for cands in lattice:
        nxt: dict = {}
        for (u, v), (score, path) in states.items():
            for t, emit in cands:
                lc = memo.get((u, v, t))
                if lc is None:
                    lc = log_ctx(u, v, t)
                s = score + lc + emit
                key = (v, t)
                old = nxt.get(key)
                if old is not None:
                    best = old[0]
                    if s < best - 1e-12 * max(1.0, abs(best)):
                        continue
                    c = _compare(s, best)
                    if c < 0 or (c == 0 and path >= old[1][:-1]):
                        continue
                nxt[key] = (s, path + (rank[t],))
        if any(v[0] != NEG_INF for v in nxt.values()):
            nxt = {k: v for k, v in nxt.items() if v[0] != NEG_INF}
        if beam_width is not None and len(nxt) > beam_width:
            best = sorted(nxt.items(), key=lambda kv: (-kv[1][0], kv[1][1]))
            nxt = dict(best[:beam_width])
        states = nxt

    best = None
    for (u, v), (score, path) in states.items():
        s = score + log_ctx(u, v, EOS)
        if best is not None:
            c = _compare(s, best[0])
            if c < 0 or (c == 0 and path >= best[1]):
                continue
        best = (s, path)
    by_rank = model.by_rank
    return tuple(by_rank[r] for r in best[1]), best[0]


def viterbi_tag(words: Sequence[str], model: TrigramModel, lexicon=None,
                beam_width: int | None = None) -> TagSequence:
    """Most probable label sequence for ``words`` under ``model``.

    If every complete path has probability zero, each token instead gets its
    locally most frequent candidate and the result is marked degenerate.
    """
    words = list(words)
    if not words:
        raise DecodeError("cannot tag an empty sentence")
    lattice, guessed = build_lattice(words, model, lexicon)
    ids, log_prob = decode_lattice(lattice, model, beam_width)
    degenerate = log_prob == NEG_INF
    if degenerate:
        ids = []
        for w, cands in zip(words, lattice):
            pool = {t for t, _ in cands}
            if model.is_known(w):
                freq = {t: model.counts.emission.get((t, model._word(w)), 0) for t in pool}
            else:
                freq = {t: model.counts.unigram.get(t, 0) for t in pool}
            ids.append(min(pool, key=lambda t: (-freq[t], model.rank[t])))
        ids = tuple(ids)
    return TagSequence(
        tags=tuple(model.label(t) for t in ids),
        ids=tuple(ids),
        guessed=tuple(guessed),
        log_prob=log_prob,
        degenerate=degenerate,
    )


def path_log_prob(words: Sequence[str], tags: Sequence, model: TrigramModel,
                  lexicon=None) -> float:
    """Log joint probability of one tag path, using the decoder's emissions."""
    lattice, _ = build_lattice(words, model, lexicon)
    u, v, total = BOS, BOS, 0.0
    for cands, t in zip(lattice, tags):
        t = model.label_id(t)
        emit = dict(cands).get(t, NEG_INF)
        total = total + model.log_contextual(u, v, t) + emit
        u, v = v, t
    return total + model.log_contextual(u, v, EOS)


def _fallback_tag(word: str, cluster, lexicon) -> str:
    tags = lexicon.tags_of(word) if lexicon.is_known(word) else frozenset()
    hits = [t for t in cluster.members if t in tags]
    if len(hits) == 1:
        return hits[0]
    pool = hits or list(cluster.members)
    return min(pool, key=lambda t: (-lexicon.total_count(t), t))


def tag_and_restore(words: Sequence[str], model: TrigramModel, clustering: ClusterTagset,
                    lexicon, beam_width: int | None = None) -> RestoredSequence:
    """Decode with the cluster-level ``model`` and map clusters back to original tags.

    Tokens the model has seen are restored through the lexicon and any
    inconsistency is an error.  Guessed tokens fall back to the most frequent
    original tag of the decoded cluster.
    """
    if tuple(model.labels) != clustering.names:
        raise DecodeError("model labels do not match the clustering")
    seq = viterbi_tag(words, model, beam_width=beam_width)
    out = []
    for w, t, guess in zip(words, seq.ids, seq.guessed):
        cluster = clustering[t]
        if guess:
            out.append(_fallback_tag(w, cluster, lexicon))
        elif seq.degenerate:
            try:
                out.append(restore_original(w, cluster, lexicon))
            except InconsistentClusterError:
                out.append(_fallback_tag(w, cluster, lexicon))
        else:
            out.append(restore_original(w, cluster, lexicon))
    return RestoredSequence(tuple(out), seq.tags, seq.guessed, seq.degenerate)
