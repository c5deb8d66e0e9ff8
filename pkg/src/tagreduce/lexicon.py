"""Word/tag membership counts."""
from __future__ import annotations

import io
from collections import defaultdict
from typing import Iterable, Mapping

from .tagset import Tagset


_EMPTY: frozenset = frozenset()


class Lexicon:
    """Maps each word to the tags it was seen with and how often.

    With ``lowercase=True`` words are case-folded both when counting and
    when looked up.
    """

    def __init__(self, entries: Mapping[str, Mapping[str, int]] | None = None,
                 tagset: Tagset | None = None, lowercase: bool = False):
        self.lowercase = lowercase
        self._entries: dict[str, dict[str, int]] = {}
        self._words_of: dict[str, set[str]] = defaultdict(set)
        self._tag_totals: dict[str, int] = defaultdict(int)
        for word, tags in (entries or {}).items():
            for tag, count in tags.items():
                self._add(word, tag, count)
        if tagset is None:
            tagset = Tagset(sorted(self._words_of))
        self.tagset = tagset

    def _key(self, word: str) -> str:
        return word.lower() if self.lowercase else word

    def _add(self, word: str, tag: str, count: int = 1) -> None:
        if count < 1:
            raise ValueError(f"non-positive count for ({word!r}, {tag!r})")
        word = self._key(word)
        inner = self._entries.setdefault(word, {})
        inner[tag] = inner.get(tag, 0) + count
        self._words_of[tag].add(word)
        self._tag_totals[tag] += count

    def tags_of(self, word: str) -> frozenset[str]:
        return frozenset(self._entries.get(self._key(word), ()))

    def is_known(self, word: str) -> bool:
        return self._key(word) in self._entries

    def count(self, word: str, tag: str) -> int:
        return self._entries.get(self._key(word), {}).get(tag, 0)

    def counts(self, word: str) -> dict[str, int]:
        return dict(self._entries.get(self._key(word), {}))

    def words_of(self, tag: str) -> set[str]:
        # the live set; callers must not mutate it
        return self._words_of.get(tag, _EMPTY)

    def total_count(self, tag: str) -> int:
        return self._tag_totals.get(tag, 0)

    @property
    def words(self) -> list[str]:
        return list(self._entries)

    def items(self):
        """Yield ``(word, tag, count)`` sorted by word then tag."""
        for word in sorted(self._entries):
            for tag in sorted(self._entries[word]):
                yield word, tag, self._entries[word][tag]

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, word) -> bool:
        return self.is_known(word)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Lexicon) and self.lowercase == other.lowercase
                and self._entries == other._entries)


def build_lexicon(corpus, lowercase: bool = False) -> Lexicon:
    """Count word/tag pairs over every token of ``corpus`` (a Corpus or sentences)."""
    tagset = getattr(corpus, "tagset", None)
    lex = Lexicon(tagset=Tagset(tagset) if tagset is not None else Tagset(), lowercase=lowercase)
    for sentence in corpus:
        for word, tag in sentence:
            lex._add(word, tag)
            lex.tagset.intern(tag)
    return lex


def tags_of(lexicon: Lexicon, word: str) -> frozenset[str]:
    return lexicon.tags_of(word)


def is_known(lexicon: Lexicon, word: str) -> bool:
    return lexicon.is_known(word)


def format_lexicon(lexicon: Lexicon) -> str:
    return "".join(f"{w}\t{t}\t{c}\n" for w, t, c in lexicon.items())


def parse_lexicon(stream, lowercase: bool = False) -> Lexicon:
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    entries: dict[str, dict[str, int]] = defaultdict(dict)
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n")
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected word<TAB>tag<TAB>count")
        word, tag, count = parts
        entries[word][tag] = entries[word].get(tag, 0) + int(count)
    return Lexicon(entries, lowercase=lowercase)


def merge_lexicons(lexicons: Iterable[Lexicon]) -> Lexicon:
    lexicons = list(lexicons)
    out = Lexicon(lowercase=any(lx.lowercase for lx in lexicons))
    for lx in lexicons:
        for w, t, c in lx.items():
            out._add(w, t, c)
            out.tagset.intern(t)
    return out
