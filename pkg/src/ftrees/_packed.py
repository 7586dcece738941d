"""Bitmask engine for the orbit walk.

A diagonal projection whose support sits at level L is a subset of the
2^L level-L atoms, stored as an int with bit j = the j-th atom in lex
order.  Generator actions become a handful of shift/mask/stretch
operations on these ints, which is what makes large orbit sweeps cheap.
The canonical form keeps the level minimal (no fully doubled pattern).
"""

from __future__ import annotations

from typing import Iterable

# 0b0101... masks per bit width, grown on demand
_EVEN_BITS: dict[int, int] = {}

# hex digits of a zero-interleaved int back to base-4 digits
_UNSPREAD_HEX = str.maketrans("0145", "0123")


def _even_bits(nbits: int) -> int:
    m = _EVEN_BITS.get(nbits)
    if m is None:
        m = int("55" * ((nbits + 7) // 8), 16) & ((1 << nbits) - 1)
        _EVEN_BITS[nbits] = m
    return m


def stretch(mask: int, times: int = 1) -> int:
    """Double every bit, `times` times (level L -> L + times).

    Reading the binary digits in base 4 interleaves a zero after each
    bit; or-ing the result with its shift doubles the bit instead.
    """
    for _ in range(times):
        if mask == 0:
            break
        spread = int(bin(mask)[2:], 4)
        mask = spread * 3
    return mask


def _shrink_once(mask: int) -> int:
    # inverse of stretch, assuming a fully doubled pattern
    spread = mask & _even_bits(mask.bit_length() + 1)
    return int(format(spread, "x").translate(_UNSPREAD_HEX), 4)


def normalize(level: int, mask: int) -> tuple[int, int]:
    """Shrink while the pattern is fully doubled; minimal-level form."""
    while level > 0:
        if (mask ^ (mask >> 1)) & _even_bits(1 << level):
            break
        mask = _shrink_once(mask)
        level -= 1
    return level, mask


def atom_index(word: str) -> int:
    """Lex rank of a word among same-length words ('1' left, '2' right)."""
    idx = 0
    for ch in word:
        idx = (idx << 1) | (1 if ch == "2" else 0)
    return idx


def pack(support: Iterable[str]) -> tuple[int, int]:
    """Canonical (level, mask) for an antichain of words."""
    ws = list(support)
    level = max((len(w) for w in ws), default=0)
    mask = 0
    for w in ws:
        span = 1 << (level - len(w))
        mask |= ((1 << span) - 1) << (atom_index(w) * span)
    return normalize(level, mask)


def unpack(level: int, mask: int) -> tuple[str, ...]:
    """Maximal-cylinder antichain of a packed projection, lex sorted."""
    out: list[str] = []

    def walk(prefix: str, m: int, bits: int) -> None:
        if m == 0:
            return
        if m == (1 << bits) - 1:
            out.append(prefix)
            return
        half = bits >> 1
        walk(prefix + "1", m & ((1 << half) - 1), half)
        walk(prefix + "2", m >> half, half)

    walk("", mask, 1 << level)
    return tuple(out)


class PackedElement:
    """A group element compiled for mask-level action evaluation."""

    __slots__ = ("terms", "min_level", "height")

    def __init__(self, terms: Iterable[tuple[str, str]]) -> None:
        self.terms = [
            (atom_index(a), len(a), atom_index(b), len(b), (len(a) - len(b)) % 2 == 0)
            for a, b in terms
        ]
        self.min_level = max(t[3] for t in self.terms)
        self.height = max(abs(t[1] - t[3]) for t in self.terms)

    def act(self, level: int, mask: int) -> tuple[int, int]:
        """Canonical packed form of (this element) . (the projection)."""
        if level < self.min_level:
            mask = stretch(mask, self.min_level - level)
            level = self.min_level
        out_level = level + self.height
        comp = ((1 << (1 << level)) - 1) ^ mask
        out = 0
        for a_idx, a_len, b_idx, b_len, even in self.terms:
            src = mask if even else comp
            span_b = 1 << (level - b_len)
            block = (src >> (b_idx * span_b)) & ((1 << span_b) - 1)
            if block:
                # target resolution minus source resolution
                t = (out_level - a_len) - (level - b_len)
                if t:
                    block = stretch(block, t)
                out |= block << (a_idx * (1 << (out_level - a_len)))
        return normalize(out_level, out)
