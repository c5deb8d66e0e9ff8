"""Original tagsets, tag clusters and the lossless restore function.

A clustering is *admissible* when no lexicon word carries two distinct
tags of the same cluster.  Under that condition a (word, cluster) pair
identifies exactly one original tag, so tagging with clusters loses no
information.
"""
from __future__ import annotations

import io
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

if TYPE_CHECKING:
    from .lexicon import Lexicon


class ConstraintViolation(ValueError):
    """A cluster holds two tags that some lexicon word can both carry."""

    def __init__(self, message: str, word: str | None = None):
        self.word = word
        super().__init__(message)


class InconsistentClusterError(ValueError):
    """The decoded cluster contains none of the word's lexicon tags."""


class UnknownWordError(KeyError):
    pass


class ClusterMapError(ValueError):
    pass


class Tagset:
    """Interned tag names; ids are dense integers in first-seen order."""

    def __init__(self, names: Iterable[str] = ()):
        self._names: list[str] = []
        self._index: dict[str, int] = {}
        for name in names:
            self.intern(name)

    def intern(self, name: str) -> int:
        idx = self._index.get(name)
        if idx is None:
            idx = len(self._names)
            self._names.append(name)
            self._index[name] = idx
        return idx

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self._names)

    def id(self, name: str) -> int:
        return self._index[name]

    def name(self, tag_id: int) -> str:
        return self._names[tag_id]

    def __len__(self) -> int:
        return len(self._names)

    def __iter__(self):
        return iter(self._names)

    def __contains__(self, name) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, Tagset) and self._names == other._names

    def __hash__(self):
        return hash(tuple(self._names))

    def __repr__(self) -> str:
        return f"Tagset({self._names!r})"


@dataclass(frozen=True, order=True)
class Cluster:
    members: tuple[str, ...]

    def __post_init__(self):
        if not self.members:
            raise ValueError("empty cluster")
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))

    @property
    def name(self) -> str:
        if len(self.members) == 1:
            return self.members[0]
        return "{" + ",".join(self.members) + "}"

    def __contains__(self, tag) -> bool:
        return tag in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        return self.name


class ClusterTagset:
    """A partition of an original tagset into clusters.

    Clusters are kept sorted by display name so that equal partitions
    always compare (and serialize) identically.
    """

    def __init__(self, clusters: Iterable[Cluster], tagset: Tagset | None = None):
        clusters = sorted(clusters, key=lambda c: c.name)
        tag_to_cluster: dict[str, int] = {}
        for i, c in enumerate(clusters):
            for t in c.members:
                if t in tag_to_cluster:
                    raise ClusterMapError(f"tag {t!r} appears in more than one cluster")
                tag_to_cluster[t] = i
        if tagset is not None:
            missing = [t for t in tagset if t not in tag_to_cluster]
            extra = [t for t in tag_to_cluster if t not in tagset]
            if missing or extra:
                raise ClusterMapError(
                    f"clusters do not partition the tagset (missing {missing}, unknown {extra})"
                )
        self.clusters: tuple[Cluster, ...] = tuple(clusters)
        self.tag_to_cluster = tag_to_cluster

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.clusters)

    def cluster_of(self, tag: str) -> Cluster:
        return self.clusters[self.tag_to_cluster[tag]]

    def index_of(self, tag: str) -> int:
        return self.tag_to_cluster[tag]

    def tags(self) -> list[str]:
        return [t for c in self.clusters for t in c.members]

    def __len__(self) -> int:
        return len(self.clusters)

    def __iter__(self):
        return iter(self.clusters)

    def __getitem__(self, i) -> Cluster:
        return self.clusters[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, ClusterTagset) and self.clusters == other.clusters

    def __hash__(self):
        return hash(self.clusters)

    def __repr__(self) -> str:
        return f"ClusterTagset({list(self.names)!r})"

    def is_identity(self) -> bool:
        return all(len(c) == 1 for c in self.clusters)


def identity_clustering(tagset: Iterable[str]) -> ClusterTagset:
    return ClusterTagset(Cluster((t,)) for t in tagset)


def inadmissible_witness(candidate: Iterable[str], lexicon: "Lexicon") -> str | None:
    """Return a word carrying two tags of ``candidate``, or None."""
    seen: set[str] = set()
    for tag in sorted(set(candidate)):
        words = lexicon.words_of(tag)
        clash = seen & words
        if clash:
            return min(clash)
        seen |= words
    return None


def cluster_admissible(candidate: Iterable[str], lexicon: "Lexicon") -> bool:
    return inadmissible_witness(candidate, lexicon) is None


def merge(clustering: ClusterTagset, a: int, b: int, lexicon: "Lexicon") -> ClusterTagset:
    """Return a new clustering in which clusters ``a`` and ``b`` are joined."""
    if a == b:
        raise ValueError(f"cannot merge cluster {a} with itself")
    ca, cb = clustering[a], clustering[b]
    union = ca.members + cb.members
    witness = inadmissible_witness(union, lexicon)
    if witness is not None:
        tags = sorted(lexicon.tags_of(witness) & set(union))
        raise ConstraintViolation(
            f"merging {ca.name} and {cb.name} is not admissible: "
            f"{witness!r} can be {' and '.join(tags)}",
            witness,
        )
    rest = [c for i, c in enumerate(clustering.clusters) if i not in (a, b)]
    return ClusterTagset(rest + [Cluster(union)])


def restore_original(word: str, cluster: Cluster, lexicon: "Lexicon") -> str:
    """Map a word and its decoded cluster back to the unique original tag."""
    tags = lexicon.tags_of(word)
    if not tags:
        raise UnknownWordError(word)
    hits = [t for t in cluster.members if t in tags]
    if not hits:
        raise InconsistentClusterError(
            f"{word!r} cannot carry any tag of cluster {cluster.name}"
        )
    if len(hits) > 1:
        raise ConstraintViolation(
            f"{word!r} can carry {', '.join(hits)} which share cluster {cluster.name}",
            word,
        )
    return hits[0]


def check_admissible(clustering: ClusterTagset, lexicon: "Lexicon") -> None:
    for c in clustering:
        witness = inadmissible_witness(c.members, lexicon)
        if witness is not None:
            raise ConstraintViolation(
                f"cluster {c.name} is not admissible: {witness!r} carries several of its tags",
                witness,
            )


# -- cluster-map files -------------------------------------------------------

def _segment(line: str, names: Sequence[str]) -> list[str] | None:
    # Split on commas, but allow tag names that themselves contain commas.
    known = set(names)
    pieces = line.split(",")
    n = len(pieces)
    best: list[list[str] | None] = [None] * (n + 1)
    best[n] = []
    for i in range(n - 1, -1, -1):
        for j in range(i + 1, n + 1):
            cand = ",".join(pieces[i:j])
            if cand in known and best[j] is not None:
                best[i] = [cand] + best[j]
                break
    return best[0]


def format_cluster_map(clustering: ClusterTagset) -> str:
    return "".join(",".join(c.members) + "\n" for c in clustering)


def parse_cluster_map(
    stream, tagset: Iterable[str] | None = None, lexicon: "Lexicon | None" = None
) -> ClusterTagset:
    """Read a cluster map; validate the partition and, given a lexicon, admissibility."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    names = list(tagset) if tagset is not None else None
    clusters = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if names is not None:
            members = _segment(line, names)
            if members is None:
                raise ClusterMapError(f"line {lineno}: unknown tag in {line!r}")
        else:
            members = line.split(",")
        if len(set(members)) != len(members) or not all(members):
            raise ClusterMapError(f"line {lineno}: malformed cluster {line!r}")
        clusters.append(Cluster(tuple(members)))
    result = ClusterTagset(clusters, Tagset(names) if names is not None else None)
    if lexicon is not None:
        check_admissible(result, lexicon)
    return result


def read_cluster_map(path, tagset=None, lexicon=None) -> ClusterTagset:
    with open(path, encoding="utf-8") as fh:
        return parse_cluster_map(fh, tagset, lexicon)


def write_cluster_map(clustering: ClusterTagset, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_cluster_map(clustering))
