"""Greedy best-first reduction of the tagset, scored by tagging accuracy.

Each round proposes every admissible pair of current clusters, rebuilds
the model for the merged tagset by projecting the original counts, tags
the held-out clustering part and commits the pair that tags it best.  The
loop stops once every candidate would lower the accuracy.
"""
from __future__ import annotations

import json
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .ngram import NgramCounts, TrigramModel, extend_labels, project_model
from .tagger import tag_and_restore
from .tagset import (Cluster, ClusterTagset, cluster_admissible, identity_clustering,
                     merge)


@dataclass(frozen=True)
class MergeStep:
    merged: tuple[str, str]
    result: str
    accuracy_before: float
    accuracy_after: float
    tagset_size_after: int

    def to_dict(self) -> dict:
        return {
            "merged": list(self.merged),
            "result": self.result,
            "accuracy_before": self.accuracy_before,
            "accuracy_after": self.accuracy_after,
            "tagset_size_after": self.tagset_size_after,
        }


@dataclass
class ClusterTrace:
    initial_accuracy: float
    steps: list[MergeStep]
    clustering: ClusterTagset
    original_size: int
    known_tokens: int = 0

    @property
    def final_accuracy(self) -> float:
        return self.steps[-1].accuracy_after if self.steps else self.initial_accuracy

    def to_dict(self) -> dict:
        return {
            "initial_accuracy": self.initial_accuracy,
            "final_accuracy": self.final_accuracy,
            "known_tokens": self.known_tokens,
            "original_tagset_size": self.original_size,
            "final_tagset_size": len(self.clustering),
            "steps": [s.to_dict() for s in self.steps],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


@dataclass
class ClusteringConfig:
    strict_improvement: bool = False
    max_merges: int | None = None
    threads: int = 1
    beam_width: int | None = None


class ClusteringError(ValueError):
    pass


def candidate_pairs(clustering: ClusterTagset, lexicon) -> list[tuple[int, int]]:
    """Index pairs of current clusters whose union is admissible.

    Clusters are held in display-name order, so the pairs come out sorted
    by (name of first, name of second).
    """
    words = []
    ok = []
    for c in clustering:
        ws: set[str] = set()
        clean = True
        for t in c.members:
            tw = lexicon.words_of(t)
            if clean and not ws.isdisjoint(tw):
                clean = False
            ws |= tw
        words.append(ws)
        ok.append(clean)
    pairs = []
    n = len(clustering)
    for i in range(n):
        if not ok[i]:
            continue
        for j in range(i + 1, n):
            if ok[j] and words[i].isdisjoint(words[j]):
                pairs.append((i, j))
    return pairs


class _Scorer:
    """Counts correct restored tags on a fixed clustering part."""

    def __init__(self, train_counts: NgramCounts, part, lexicon, beam_width=None):
        self.train_counts = train_counts
        self.lexicon = lexicon
        self.beam_width = beam_width
        base = TrigramModel(train_counts)
        self.known = 0
        self.fixed_correct = 0
        self.pending = []
        for sentence in part:
            words = [w for w, _ in sentence]
            gold = [t for _, t in sentence]
            mask = [lexicon.is_known(w) for w in words]
            self.known += sum(mask)
            # A sentence whose every word has a single training tag decodes
            # the same way under any clustering.
            if all(base.is_known(w) and len(base.tags_of(w)) == 1 for w in words):
                pred = [base.label(base.tags_of(w)[0]) for w in words]
                self.fixed_correct += sum(k and p == g for k, p, g in zip(mask, pred, gold))
            else:
                self.pending.append((words, gold, mask))

    def correct(self, clustering: ClusterTagset) -> int:
        model = TrigramModel(project_model(self.train_counts, clustering))
        total = self.fixed_correct
        for words, gold, mask in self.pending:
            pred = tag_and_restore(words, model, clustering, self.lexicon, self.beam_width).tags
            total += sum(k and p == g for k, p, g in zip(mask, pred, gold))
        return total


_WORKER: _Scorer | None = None


def _init_worker(scorer: _Scorer) -> None:
    global _WORKER
    _WORKER = scorer


def _score_in_worker(clustering: ClusterTagset) -> int:
    return _WORKER.correct(clustering)


def evaluate_candidate(train_counts: NgramCounts, clustering: ClusterTagset, clustering_part,
                       lexicon, beam_width: int | None = None) -> float:
    """Known-word accuracy on ``clustering_part`` when tagging with ``clustering``."""
    train_counts = extend_labels(train_counts, clustering.tags())
    scorer = _Scorer(train_counts, clustering_part, lexicon, beam_width)
    if scorer.known == 0:
        raise ClusteringError("clustering part has no known tokens")
    return scorer.correct(clustering) / scorer.known


def greedy_cluster(train_counts: NgramCounts, clustering_part, lexicon,
                   config: ClusteringConfig | None = None) -> ClusterTrace:
    config = config or ClusteringConfig()
    if not len(clustering_part.sentences):
        raise ClusteringError("clustering part is empty")
    tags = list(dict.fromkeys(list(train_counts.labels) + list(lexicon.tagset)))
    train_counts = extend_labels(train_counts, tags)
    scorer = _Scorer(train_counts, clustering_part, lexicon, config.beam_width)
    if scorer.known == 0:
        raise ClusteringError("clustering part has no known tokens")
    known = scorer.known

    current = identity_clustering(tags)
    current_correct = scorer.correct(current)
    initial = current_correct / known
    steps: list[MergeStep] = []

    pool = None
    if config.threads and config.threads > 1:
        ctx = multiprocessing.get_context("fork")
        pool = ProcessPoolExecutor(config.threads, mp_context=ctx,
                                   initializer=_init_worker, initargs=(scorer,))
    try:
        while config.max_merges is None or len(steps) < config.max_merges:
            pairs = candidate_pairs(current, lexicon)
            if not pairs:
                break
            merged = [merge(current, i, j, lexicon) for i, j in pairs]
            if pool is not None:
                scores = list(pool.map(_score_in_worker, merged, chunksize=max(1, len(merged) // (4 * config.threads))))
            else:
                scores = [scorer.correct(m) for m in merged]
            # first maximum in pair order is the smallest pair by display name
            best = max(range(len(pairs)), key=lambda k: (scores[k], -k))
            if scores[best] < current_correct:
                break
            if config.strict_improvement and scores[best] == current_correct:
                break
            i, j = pairs[best]
            new = merged[best]
            union = Cluster(current[i].members + current[j].members)
            steps.append(MergeStep(
                merged=(current[i].name, current[j].name),
                result=union.name,
                accuracy_before=current_correct / known,
                accuracy_after=scores[best] / known,
                tagset_size_after=len(new),
            ))
            current, current_correct = new, scores[best]
    finally:
        if pool is not None:
            pool.shutdown()
    return ClusterTrace(initial, steps, current, len(tags), known)


def replay_trace(tags, steps, lexicon) -> ClusterTagset:
    """Re-apply recorded merges to the identity clustering of ``tags``."""
    clustering = identity_clustering(tags)
    for step in steps:
        names = clustering.names
        a, b = step.merged if isinstance(step, MergeStep) else step["merged"]
        clustering = merge(clustering, names.index(a), names.index(b), lexicon)
    return clustering


def is_admissible_clustering(clustering: ClusterTagset, lexicon) -> bool:
    return all(cluster_admissible(c.members, lexicon) for c in clustering)
