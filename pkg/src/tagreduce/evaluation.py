"""Known-word accuracy and the train / cluster / test experiment harness."""
from __future__ import annotations

import configparser
import json
import os
import time
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from scipy.stats import binomtest

from .clustering import ClusterTrace, ClusteringConfig, greedy_cluster
from .corpus import Corpus, CorpusSplit, parse_split_spec, read_corpus, split_parts
from .lexicon import build_lexicon
from .ngram import TrigramModel, count_ngrams, project_model
from .tagger import tag_and_restore
from .tagset import ClusterTagset, identity_clustering


class EvaluationError(ValueError):
    pass


@dataclass
class EvalReport:
    total_tokens: int
    known_tokens: int
    unknown_tokens: int
    known_correct: int
    known_accuracy: float
    unknown_rate: float
    all_correct: int
    all_tokens_accuracy: float
    fallback_sentences: int = 0
    confusion: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "total_tokens": self.total_tokens,
            "known_tokens": self.known_tokens,
            "unknown_tokens": self.unknown_tokens,
            "known_correct": self.known_correct,
            "known_accuracy": self.known_accuracy,
            "unknown_rate": self.unknown_rate,
            "all_tokens_accuracy_noncomparable": self.all_tokens_accuracy,
            "all_correct": self.all_correct,
            "fallback_sentences": self.fallback_sentences,
            "confusion": self.confusion,
        }


def accuracy(gold: Corpus, predicted: Sequence[Sequence[str]], lexicon,
             degenerate: Sequence[bool] | None = None) -> EvalReport:
    """Score predictions on original tags; only lexicon-known tokens count."""
    if len(predicted) != len(gold.sentences):
        raise EvaluationError(
            f"{len(predicted)} predicted sentences for {len(gold.sentences)} gold sentences")
    total = known = known_correct = all_correct = 0
    confusion: dict[str, Counter] = defaultdict(Counter)
    for k, (sentence, pred) in enumerate(zip(gold.sentences, predicted)):
        pred = list(pred)
        if len(pred) != len(sentence):
            raise EvaluationError(f"sentence {k}: {len(pred)} tags for {len(sentence)} tokens")
        for (word, tag), p in zip(sentence, pred):
            total += 1
            hit = p == tag
            all_correct += hit
            if lexicon.is_known(word):
                known += 1
                known_correct += hit
                confusion[tag][p] += 1
    if known == 0:
        raise EvaluationError("no known tokens")
    return EvalReport(
        total_tokens=total,
        known_tokens=known,
        unknown_tokens=total - known,
        known_correct=known_correct,
        known_accuracy=known_correct / known,
        unknown_rate=(total - known) / total,
        all_correct=all_correct,
        all_tokens_accuracy=all_correct / total,
        fallback_sentences=sum(degenerate) if degenerate is not None else 0,
        confusion={g: dict(sorted(row.items())) for g, row in sorted(confusion.items())},
    )


def mcnemar(gold: Corpus, pred_a, pred_b, lexicon) -> dict:
    """Exact McNemar test on known-token correctness of two taggers."""
    only_a = only_b = 0
    for sentence, pa, pb in zip(gold.sentences, pred_a, pred_b):
        for (word, tag), a, b in zip(sentence, pa, pb):
            if not lexicon.is_known(word):
                continue
            if a == tag and b != tag:
                only_a += 1
            elif b == tag and a != tag:
                only_b += 1
    n = only_a + only_b
    p = binomtest(min(only_a, only_b), n, 0.5).pvalue if n else 1.0
    return {"only_a_correct": only_a, "only_b_correct": only_b, "p_value": float(p)}


@dataclass
class ExperimentResult:
    name: str
    mode: str
    report: EvalReport
    trace: ClusterTrace | None
    clustering: ClusterTagset
    original_tagset_size: int
    predictions: list
    seconds: float = 0.0

    @property
    def reduced_tagset_size(self) -> int:
        return len(self.clustering)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "mode": self.mode,
            "original_tagset_size": self.original_tagset_size,
            "reduced_tagset_size": self.reduced_tagset_size,
            "tagset_reduction": self.original_tagset_size - self.reduced_tagset_size,
            "report": self.report.to_dict(),
            "trace": self.trace.to_dict() if self.trace is not None else None,
        }


def run_split(split: CorpusSplit, mode: str = "clustered",
              clustering: ClusteringConfig | None = None, lowercase: bool = False,
              name: str = "") -> ExperimentResult:
    """Train, optionally cluster, then tag and score the testing part.

    In baseline mode the clustering part is simply added to the training
    data.  In clustered mode the model is trained on the training part only
    and the clustering part is used to choose merges.  Both modes share the
    same lexicon (training plus clustering part), so their known-word sets
    are identical.
    """
    if mode not in ("baseline", "clustered"):
        raise EvaluationError(f"unknown mode {mode!r}")
    start = time.perf_counter()
    lexicon_part = Corpus.concat(split.training, split.clustering)
    lexicon = build_lexicon(lexicon_part, lowercase=lowercase)
    tags = list(lexicon.tagset)
    trace = None
    if mode == "baseline":
        counts = count_ngrams(lexicon_part, tagset=tags, lowercase=lowercase)
        reduced = identity_clustering(tags)
    else:
        if not split.clustering.sentences:
            raise EvaluationError("clustered mode needs a non-empty clustering part")
        counts = count_ngrams(split.training, tagset=tags, lowercase=lowercase)
        trace = greedy_cluster(counts, split.clustering, lexicon, clustering)
        reduced = trace.clustering
    model = TrigramModel(project_model(counts, reduced))
    beam = clustering.beam_width if clustering else None
    predictions, degenerate = [], []
    for sentence in split.testing:
        out = tag_and_restore([w for w, _ in sentence], model, reduced, lexicon, beam)
        predictions.append(out.tags)
        degenerate.append(out.degenerate)
    report = accuracy(split.testing, predictions, lexicon, degenerate)
    return ExperimentResult(name, mode, report, trace, reduced, len(tags), predictions,
                            time.perf_counter() - start)


@dataclass
class ExperimentConfig:
    corpus: str
    split: tuple[float, ...]
    train: tuple[str, ...]
    test: str
    cluster: str | None = None
    mode: str | None = None
    name: str = ""
    split_mode: str = "contiguous"
    seed: int = 0
    lowercase: bool = False
    clustering: ClusteringConfig = field(default_factory=ClusteringConfig)

    @property
    def effective_mode(self) -> str:
        if self.mode:
            return self.mode
        return "clustered" if self.cluster else "baseline"


PART_NAMES = "ABCDEFGHIJ"


def make_split(parts: Sequence[Corpus], config: ExperimentConfig) -> CorpusSplit:
    named = dict(zip(PART_NAMES, parts))
    try:
        training = Corpus.concat(*(named[p] for p in config.train))
        clustering = named[config.cluster] if config.cluster else Corpus((), training.tagset)
        testing = named[config.test]
    except KeyError as exc:
        raise EvaluationError(f"unknown corpus part {exc.args[0]!r}") from None
    used = list(config.train) + [config.test] + ([config.cluster] if config.cluster else [])
    if len(set(used)) != len(used):
        raise EvaluationError(f"experiment {config.name!r} uses a part twice")
    return CorpusSplit(training, clustering, testing)


def run_experiment(config: ExperimentConfig, corpus: Corpus | None = None) -> ExperimentResult:
    if corpus is None:
        corpus = read_corpus(config.corpus)
    parts = split_parts(corpus, config.split, config.split_mode, config.seed)
    split = make_split(parts, config)
    return run_split(split, config.effective_mode, config.clustering, config.lowercase,
                     name=config.name)


def _parts(value: str) -> tuple[str, ...]:
    return tuple(p.strip() for p in value.replace("+", ",").split(",") if p.strip())


def load_experiment_config(path) -> list[ExperimentConfig]:
    """Read an INI file: a ``[corpus]`` section plus one ``[experiment NAME]`` per run.

    Relative corpus paths are resolved against the config file's directory.
    """
    cp = configparser.ConfigParser()
    if not cp.read(path, encoding="utf-8"):
        raise EvaluationError(f"cannot read config {path}")
    if "corpus" not in cp:
        raise EvaluationError("config needs a [corpus] section")
    sec = cp["corpus"]
    corpus_path = sec.get("path")
    if not corpus_path:
        raise EvaluationError("[corpus] needs a path")
    if not os.path.isabs(corpus_path):
        corpus_path = os.path.join(os.path.dirname(os.path.abspath(path)), corpus_path)
    split = tuple(parse_split_spec(sec.get("split", "0.8,0.1,0.1")))
    if len(split) > len(PART_NAMES):
        raise EvaluationError("too many split parts")
    common = dict(
        corpus=corpus_path,
        split=split,
        split_mode=sec.get("split_mode", "contiguous"),
        seed=sec.getint("seed", 0),
        lowercase=sec.getboolean("lowercase", False),
    )
    cl = cp["clustering"] if "clustering" in cp else {}
    max_merges = cl.get("max_merges") if cl else None
    clustering = ClusteringConfig(
        strict_improvement=cp.getboolean("clustering", "strict_improvement", fallback=False),
        max_merges=int(max_merges) if max_merges not in (None, "", "none") else None,
        threads=cp.getint("clustering", "threads", fallback=1),
    )
    configs = []
    for section in cp.sections():
        if not section.startswith("experiment"):
            continue
        s = cp[section]
        name = section[len("experiment"):].strip() or str(len(configs) + 1)
        configs.append(ExperimentConfig(
            name=name,
            train=_parts(s.get("train", "")),
            test=s.get("test", "").strip(),
            cluster=s.get("cluster", "").strip() or None,
            mode=s.get("mode", "").strip() or None,
            clustering=clustering,
            **common,
        ))
    if not configs:
        raise EvaluationError("config defines no [experiment ...] sections")
    for c in configs:
        if not c.train or not c.test:
            raise EvaluationError(f"experiment {c.name!r} needs train and test parts")
    return configs


def results_to_json(results: Sequence[ExperimentResult]) -> str:
    return json.dumps([r.to_dict() for r in results], indent=2)
