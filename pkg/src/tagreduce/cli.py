"""Command-line interface: ``tagreduce <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .clustering import ClusteringConfig, greedy_cluster
from .corpus import (Corpus, CorpusError, SplitError, parse_corpus, parse_plain, parse_split_spec,
                     read_corpus, split_parts, write_corpus)
from .evaluation import (EvaluationError, accuracy, load_experiment_config, results_to_json,
                         run_experiment)
from .lexicon import Lexicon, build_lexicon, format_lexicon, merge_lexicons, parse_lexicon
from .ngram import (ModelError, TrigramModel, count_ngrams, estimate_lambdas, extend_labels,
                    format_model, project_model, read_model)
from .synthetic import generate_planted_corpus
from .tagger import tag_and_restore
from .tagset import (ClusterMapError, ConstraintViolation, InconsistentClusterError,
                     UnknownWordError, format_cluster_map, identity_clustering, read_cluster_map)

log = logging.getLogger("tagreduce")


class CliError(Exception):
    pass


def _existing(path: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise CliError(f"no such file: {path}")
    return p


def _writable(path: str | None) -> Path | None:
    if path is None:
        return None
    p = Path(path)
    if p.parent and not p.parent.exists():
        raise CliError(f"output directory does not exist: {p.parent}")
    return p


def _write(path: Path | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with path.open("w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _load_lexicon(path: Path, lowercase: bool) -> Lexicon:
    text = path.read_text(encoding="utf-8")
    first = next((ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")), "")
    if first.count("\t") == 2:
        return parse_lexicon(text, lowercase=lowercase)
    return build_lexicon(parse_corpus(text), lowercase=lowercase)


def _lexicon_from_counts(counts) -> Lexicon:
    entries: dict[str, dict[str, int]] = {}
    for (t, w), c in counts.emission.items():
        entries.setdefault(w, {})[counts.labels[t]] = c
    return Lexicon(entries, lowercase=counts.lowercase)


def _tagging_setup(args):
    """Load model, lexicon and cluster map; returns (model, clustering, lexicon)."""
    counts, _ = read_model(_existing(args.model), lowercase=args.lowercase)
    # restoration knows every training word plus whatever --lexicon adds
    lexicon = _lexicon_from_counts(counts)
    if args.lexicon:
        extra = [_load_lexicon(_existing(p), args.lowercase) for p in args.lexicon]
        lexicon = merge_lexicons([lexicon] + extra)
    tags = list(dict.fromkeys(list(counts.labels) + list(lexicon.tagset)))
    counts = extend_labels(counts, tags)
    if args.clusters:
        clustering = read_cluster_map(_existing(args.clusters), tags, lexicon)
    else:
        clustering = identity_clustering(tags)
    model = TrigramModel(project_model(counts, clustering))
    return model, clustering, lexicon


def cmd_train(args) -> int:
    corpus = read_corpus(_existing(args.corpus))
    out = _writable(args.output)
    counts = count_ngrams(corpus, lowercase=args.lowercase)
    lambdas = estimate_lambdas(counts)
    log.info("trained on %d tokens, %d tags, lambdas %s", counts.token_total,
             len(counts.labels), lambdas)
    _write(out, format_model(counts, lambdas))
    if args.lexicon_out:
        _write(_writable(args.lexicon_out), format_lexicon(build_lexicon(corpus, args.lowercase)))
    return 0


def cmd_cluster(args) -> int:
    train = read_corpus(_existing(args.train))
    part = read_corpus(_existing(args.clustering_part))
    map_out = _writable(args.map_out)
    trace_out = _writable(args.trace_out)
    lexicon = build_lexicon(Corpus.concat(train, part), lowercase=args.lowercase)
    counts = count_ngrams(train, tagset=list(lexicon.tagset), lowercase=args.lowercase)
    config = ClusteringConfig(args.strict_improvement, args.max_merges, args.threads,
                              args.beam_width)
    trace = greedy_cluster(counts, part, lexicon, config)
    log.info("merged %d times: %d -> %d tags, accuracy %.4f -> %.4f", len(trace.steps),
             trace.original_size, len(trace.clustering), trace.initial_accuracy,
             trace.final_accuracy)
    _write(map_out, format_cluster_map(trace.clustering))
    if trace_out is not None:
        _write(trace_out, trace.to_json() + "\n")
    return 0


def cmd_tag(args) -> int:
    out = _writable(args.output)
    model, clustering, lexicon = _tagging_setup(args)
    if args.input == "-":
        sentences = parse_plain(sys.stdin)
    else:
        sentences = parse_plain(_existing(args.input).read_text(encoding="utf-8"))
    lines = []
    for words in sentences:
        res = tag_and_restore(words, model, clustering, lexicon, args.beam_width)
        for w, t, c, g in zip(words, res.tags, res.clusters, res.guessed):
            cols = [w, t]
            if args.show_clusters:
                cols.append(c)
            if g and args.verbose:
                cols.append("#guess")
            lines.append("\t".join(cols) + "\n")
        lines.append("\n")
    _write(out, "".join(lines))
    return 0


def cmd_eval(args) -> int:
    out = _writable(args.output)
    model, clustering, lexicon = _tagging_setup(args)
    gold = read_corpus(_existing(args.gold))
    preds, degenerate = [], []
    for sentence in gold:
        res = tag_and_restore([w for w, _ in sentence], model, clustering, lexicon,
                              args.beam_width)
        preds.append(res.tags)
        degenerate.append(res.degenerate)
    report = accuracy(gold, preds, lexicon, degenerate)
    body = report.to_dict()
    body["tagset_size"] = len(clustering)
    _write(out, json.dumps(body, indent=2) + "\n")
    return 0


def cmd_experiment(args) -> int:
    configs = load_experiment_config(_existing(args.config))
    out = _writable(args.output)
    corpus = read_corpus(_existing(configs[0].corpus))
    results = []
    for cfg in configs:
        if args.split:
            cfg.split = tuple(parse_split_spec(args.split))
        if args.split_mode:
            cfg.split_mode = args.split_mode
        if args.seed is not None:
            cfg.seed = args.seed
        if args.lowercase:
            cfg.lowercase = True
        if args.threads > 1:
            cfg.clustering.threads = args.threads
        res = run_experiment(cfg, corpus)
        log.info("experiment %s (%s): known accuracy %.4f, %d -> %d tags, %.1fs", cfg.name,
                 res.mode, res.report.known_accuracy, res.original_tagset_size,
                 res.reduced_tagset_size, res.seconds)
        results.append(res)
    _write(out, results_to_json(results) + "\n")
    return 0


def cmd_split(args) -> int:
    corpus = read_corpus(_existing(args.corpus))
    fractions = parse_split_spec(args.split)
    parts = split_parts(corpus, fractions, args.split_mode, args.seed or 0)
    prefix = args.prefix
    for name, part in zip("ABCDEFGHIJ", parts):
        path = _writable(f"{prefix}{name}.tsv")
        write_corpus(part, path)
        log.info("part %s: %d sentences -> %s", name, len(part), path)
    return 0


def cmd_gen_synthetic(args) -> int:
    out = _writable(args.output)
    sc = generate_planted_corpus(
        n_tags=args.tags, n_planted=args.planted, vocab_size=args.vocab,
        n_sentences=args.sentences, seed=args.seed or 0)
    _write(out, sc.to_text())
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lowercase", action="store_true", help="case-fold words")
    common.add_argument("--seed", type=int, default=None, help="seed for all randomness")
    common.add_argument("--threads", type=int, default=1, help="worker processes")
    common.add_argument("-v", "--verbose", action="store_true")
    common.add_argument("--beam-width", type=int, default=None,
                        help="prune decoder states (default: exact)")

    p = argparse.ArgumentParser(prog="tagreduce", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("train", parents=[common], help="count n-grams and write a model dump")
    s.add_argument("corpus")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--lexicon-out")
    s.set_defaults(func=cmd_train)

    s = sub.add_parser("cluster", parents=[common], help="greedy tagset reduction")
    s.add_argument("train")
    s.add_argument("clustering_part")
    s.add_argument("--map-out", required=True)
    s.add_argument("--trace-out")
    s.add_argument("--strict-improvement", action="store_true")
    s.add_argument("--max-merges", type=int, default=None)
    s.set_defaults(func=cmd_cluster)

    for name, func, helptext in (("tag", cmd_tag, "tag sentences"),
                                 ("eval", cmd_eval, "tag a gold corpus and score it")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--model", required=True)
        s.add_argument("--clusters", help="cluster map (default: original tagset)")
        s.add_argument("--lexicon", action="append",
                       help="extra corpus or lexicon dump for restoration (repeatable)")
        s.add_argument("-o", "--output")
        if name == "tag":
            s.add_argument("input", help="one word per line, '-' for stdin")
            s.add_argument("--show-clusters", action="store_true")
        else:
            s.add_argument("gold")
        s.set_defaults(func=func)

    s = sub.add_parser("experiment", parents=[common], help="run configured experiments")
    s.add_argument("config")
    s.add_argument("-o", "--output")
    s.add_argument("--split")
    s.add_argument("--split-mode", choices=["contiguous", "shuffled"])
    s.set_defaults(func=cmd_experiment)

    s = sub.add_parser("split", parents=[common], help="cut a corpus into parts A, B, C, ...")
    s.add_argument("corpus")
    s.add_argument("--split", default="0.8,0.1,0.1")
    s.add_argument("--split-mode", choices=["contiguous", "shuffled"], default="contiguous")
    s.add_argument("--prefix", required=True, help="output path prefix")
    s.set_defaults(func=cmd_split)

    s = sub.add_parser("gen-synthetic", parents=[common],
                       help="write a corpus with planted redundant tag pairs")
    s.add_argument("-o", "--output")
    s.add_argument("--tags", type=int, default=20)
    s.add_argument("--planted", type=int, default=3)
    s.add_argument("--vocab", type=int, default=3000)
    s.add_argument("--sentences", type=int, default=3600)
    s.set_defaults(func=cmd_gen_synthetic)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (CliError, CorpusError, SplitError, ModelError, ClusterMapError, ConstraintViolation,
            InconsistentClusterError, UnknownWordError, EvaluationError, OSError,
            ValueError) as exc:
        print(f"tagreduce: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
