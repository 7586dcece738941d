"""Binary multi-indices and complete prefix codes.

Words are plain Python strings over the alphabet {"1", "2"}; the empty
word is "" and prints as "e".  A word labels a vertex of the infinite
binary tree, and a complete prefix code (an antichain with Kraft sum 1)
is the leaf set of a finite binary tree, i.e. a dyadic partition of the
unit interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from .dyadic import Dyadic

ALPHABET = ("1", "2")


class Ordering(Enum):
    BEFORE = -1
    PREFIX_RELATED = 0
    AFTER = 1


def check_word(w: str) -> str:
    for ch in w:
        if ch not in ("1", "2"):
            raise ValueError(f"invalid letter {ch!r} in word {w!r}")
    return w


def word_to_str(w: str) -> str:
    return w if w else "e"


def word_from_str(s: str) -> str:
    if s == "e":
        return ""
    return check_word(s)


def is_prefix(u: str, v: str) -> bool:
    """True iff u is an initial segment of v (the empty word prefixes all)."""
    return v.startswith(u)


def lex_compare(u: str, v: str) -> Ordering:
    """Lexicographic comparison; prefix-comparable pairs are flagged.

    On any antichain this is a strict total order.  A PREFIX_RELATED
    result (one word an initial segment of the other, equality included)
    never occurs between members of a valid code, so callers use it to
    detect malformed input.
    """
    if u.startswith(v) or v.startswith(u):
        return Ordering.PREFIX_RELATED
    return Ordering.BEFORE if u < v else Ordering.AFTER


def is_antichain(words: Iterable[str]) -> bool:
    ws = sorted(words)
    for a, b in zip(ws, ws[1:]):
        if b.startswith(a):
            return False
    return len(set(ws)) == len(ws)


def kraft_sum(words: Iterable[str]) -> Dyadic:
    """Sum of 2^-|w| over the given words, exactly."""
    total = Dyadic(0)
    for w in words:
        total = total + Dyadic(1, len(w))
    return total


@dataclass(frozen=True)
class CompleteCode:
    """A complete prefix code: lex-sorted antichain with Kraft sum 1."""

    words: tuple[str, ...]

    def __init__(self, words: Iterable[str]) -> None:
        ws = tuple(sorted(check_word(w) for w in words))
        if not is_antichain(ws):
            raise ValueError(f"not an antichain: {ws}")
        if kraft_sum(ws) != 1:
            raise ValueError(f"Kraft sum of {ws} is {kraft_sum(ws)}, not 1")
        object.__setattr__(self, "words", ws)

    def __iter__(self) -> Iterator[str]:
        return iter(self.words)

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, w: str) -> bool:
        return w in set(self.words)

    def refines(self, other: "CompleteCode") -> bool:
        """True iff every word here extends some word of `other`."""
        others = other.words
        return all(any(w.startswith(o) for o in others) for w in self.words)

    def __str__(self) -> str:
        return "{" + ", ".join(word_to_str(w) for w in self.words) + "}"


def uniform_code(k: int) -> CompleteCode:
    """All 2^k words of length k."""
    if k < 0:
        raise ValueError("length must be >= 0")
    words = [""]
    for _ in range(k):
        words = [w + ch for w in words for ch in ALPHABET]
    return CompleteCode(words)


def common_refinement(a: CompleteCode, b: CompleteCode) -> CompleteCode:
    """Coarsest code refining both inputs.

    For each word of `a`, either some word of `b` is a prefix of it (keep
    it) or the words of `b` extending it tile its cylinder (keep those).
    """
    b_words = b.words
    out: list[str] = []
    for w in a:
        if any(w.startswith(x) for x in b_words):
            out.append(w)
        else:
            out.extend(x for x in b_words if x.startswith(w) and x != w)
    return CompleteCode(out)
