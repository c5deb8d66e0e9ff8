"""Input checks shared by the estimator wrappers."""
from __future__ import annotations

from .corpus import BOUNDARY_NAMES


def check_sentences(X, name: str = "X") -> list[list[str]]:
    """Return ``X`` as a list of non-empty lists of word strings."""
    if isinstance(X, str):
        raise TypeError(f"{name} must be a sequence of sentences, not a string")
    out = []
    for i, sent in enumerate(X):
        if isinstance(sent, str):
            raise TypeError(f"{name}[{i}] must be a sequence of words, not a string")
        words = list(sent)
        if not words:
            raise ValueError(f"{name}[{i}] is an empty sentence")
        for w in words:
            if not isinstance(w, str) or not w or "\t" in w or "\n" in w:
                raise ValueError(f"{name}[{i}] has an invalid word {w!r}")
        out.append(words)
    return out


def check_tagged(X, y) -> tuple[list[list[str]], list[list[str]]]:
    X = check_sentences(X)
    if isinstance(y, str):
        raise TypeError("y must be a sequence of tag sequences")
    y = [list(tags) for tags in y]
    if len(X) != len(y):
        raise ValueError(f"X has {len(X)} sentences but y has {len(y)}")
    for i, (words, tags) in enumerate(zip(X, y)):
        if len(words) != len(tags):
            raise ValueError(f"sentence {i}: {len(words)} words but {len(tags)} tags")
        for t in tags:
            if not isinstance(t, str) or not t or any(c.isspace() for c in t) or t in BOUNDARY_NAMES:
                raise ValueError(f"sentence {i}: invalid tag {t!r}")
    return X, y
