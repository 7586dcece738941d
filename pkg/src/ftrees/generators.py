"""The generator family x_k, normal forms, and the word problem for F.

x_0 = S_11 S_1* + S_12 S_21* + S_2 S_22* and
x_k = 1 - S_2^k S_2*^k + S_2^k x_0 S_2*^k for k >= 1.

Every element of F has a unique normal form
x_{j1} ... x_{jk} x_{il}^-1 ... x_{i1}^-1 with both index lists
non-decreasing, jk != il, and: if m occurs in both lists then m+1 occurs
in at least one of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .elements import (
    GroupElement,
    NotInF,
    Term,
    inverse,
    is_order_preserving,
    multiply,
    validate_unitary,
)
from .words import CompleteCode


def gen_x(k: int) -> GroupElement:
    """The canonical generator x_k."""
    if k < 0:
        raise ValueError("generator index must be >= 0")
    prefix = "2" * k
    terms = [Term("2" * j + "1", "2" * j + "1") for j in range(k)]
    terms += [
        Term(prefix + "11", prefix + "1"),
        Term(prefix + "12", prefix + "21"),
        Term(prefix + "2", prefix + "22"),
    ]
    return validate_unitary(terms)


def equals(f: GroupElement, g: GroupElement) -> bool:
    """Word problem: canonical forms are identical."""
    return f.terms == g.terms


@dataclass(frozen=True)
class NormalFormWord:
    """Exponent word x_{j1}..x_{jk} x_{il}^-1..x_{i1}^-1, both lists stored
    in non-decreasing order."""

    positive: tuple[int, ...]
    negative: tuple[int, ...]

    def __post_init__(self) -> None:
        for name, seq in (("positive", self.positive), ("negative", self.negative)):
            if any(i < 0 for i in seq):
                raise ValueError(f"{name} indices must be >= 0")
            if any(a > b for a, b in zip(seq, seq[1:])):
                raise ValueError(f"{name} indices must be non-decreasing")
        if self.positive and self.negative and self.positive[-1] == self.negative[-1]:
            raise ValueError("j_k = i_l: the word is freely reducible")
        both = set(self.positive) & set(self.negative)
        for m in both:
            if m + 1 not in self.positive and m + 1 not in self.negative:
                raise ValueError(
                    f"x_{m} occurs with both signs but x_{m + 1} with neither"
                )

    def letters(self) -> list[tuple[int, int]]:
        """(index, sign) letters in reading order."""
        return [(j, 1) for j in self.positive] + [
            (i, -1) for i in reversed(self.negative)
        ]

    def __str__(self) -> str:
        parts = [f"x{j}" for j in self.positive]
        parts += [f"x{i}^-1" for i in reversed(self.negative)]
        return " ".join(parts) if parts else "e"


def parse_generator_word(text: str) -> list[tuple[int, int]]:
    """Parse ``x0 x2 x1^-1`` into (index, sign) letters, any order allowed
    (empty word: ``e`` or blank)."""
    text = text.strip()
    letters: list[tuple[int, int]] = []
    if text and text != "e":
        for tok in text.split():
            body, sign = (tok[:-3], -1) if tok.endswith("^-1") else (tok, 1)
            if not body.startswith("x") or not body[1:].isdigit():
                raise ValueError(f"bad generator token {tok!r}")
            letters.append((int(body[1:]), sign))
    return letters


def parse_normal_form(text: str) -> NormalFormWord:
    """Parse the token syntax as a normal-form word, validating the
    ordering and side conditions."""
    positive: list[int] = []
    negative: list[int] = []
    for idx, sign in parse_generator_word(text):
        if sign > 0:
            positive.append(idx)
        else:
            negative.append(idx)
    negative.reverse()
    return NormalFormWord(tuple(positive), tuple(negative))


def element_of_word(letters: Iterable[tuple[int, int]]) -> GroupElement:
    """Multiply out an arbitrary generator word."""
    acc = GroupElement.identity()
    for idx, sign in letters:
        g = gen_x(idx)
        acc = multiply(acc, g if sign > 0 else inverse(g))
    return acc


def from_normal_form(nf: NormalFormWord) -> GroupElement:
    """Multiply the generator word out to a canonical element."""
    return element_of_word(nf.letters())


def _positive_word(code: CompleteCode) -> list[int]:
    """Indices k1, k2, ... with x_{k1} x_{k2} ... the unique order-preserving
    element from the right comb onto `code`.

    Grow the code from the root by always splitting its lex-first leaf
    that is a proper prefix of a target word.  Splitting leaf i of an
    n-leaf code multiplies by x_i on the right, except that splitting the
    last leaf is free (the domain comb absorbs it).
    """
    target = set(code.words)
    current = [""]
    word: list[int] = []
    while len(current) < len(target):
        n = len(current)
        for i, leaf in enumerate(current):
            if leaf not in target:
                current[i : i + 1] = [leaf + "1", leaf + "2"]
                if i < n - 1:
                    word.append(i)
                break
    return word


def _insert_letter(pos: list[int], neg: list[int], idx: int, sign: int) -> None:
    """Multiply the seminormal word (pos, neg) by x_idx^sign on the right.

    Implements the rewriting rules derived from x_j x_i -> x_i x_{j+1}
    (i < j) together with free cancellation; each passage through a
    letter either stops, increments an index, or cancels, so the walk
    terminates after one sweep.
    """
    if sign < 0:
        # bubble x_idx^-1 leftward through smaller negative indices
        k = 0
        while k < len(neg) and neg[k] < idx:
            idx += 1
            k += 1
        neg.insert(k, idx)
        return
    # move x_idx left through the whole negative segment
    k = 0
    while k < len(neg):
        if neg[k] == idx:
            del neg[k]
            return
        if neg[k] < idx:
            idx += 1
        else:
            neg[k] += 1
        k += 1
    # then into the positive segment past larger indices
    k = len(pos)
    while k > 0 and pos[k - 1] > idx:
        pos[k - 1] += 1
        k -= 1
    pos.insert(k, idx)


def _enforce_side_condition(pos: list[int], neg: list[int]) -> None:
    """Cancel x_m ... x_m^-1 pairs whose scope contains no x_{m+1}.

    Inside the scope all indices are >= m+2, and conjugation by x_m
    (another face of the defining relations) lowers each of them by one.
    """
    while True:
        shared = sorted(set(pos) & set(neg))
        for m in shared:
            if m + 1 in pos or m + 1 in neg:
                continue
            pos.remove(m)
            neg.remove(m)
            for lst in (pos, neg):
                for i, v in enumerate(lst):
                    if v > m + 1:
                        lst[i] = v - 1
            break
        else:
            return


def to_normal_form(f: GroupElement) -> NormalFormWord:
    """Unique normal form of an order-preserving element.

    Factor f = P(A) P(B)^-1 through the positive elements onto its range
    and domain codes, rewrite to seminormal form, enforce the side
    condition, and certify the result by multiplying it back out.
    """
    if not is_order_preserving(f):
        raise NotInF("normal forms exist only for order-preserving elements")
    letters = [(k, 1) for k in _positive_word(f.range_code())]
    letters += [(k, -1) for k in reversed(_positive_word(f.domain_code()))]
    pos: list[int] = []
    neg: list[int] = []
    for idx, sign in letters:
        _insert_letter(pos, neg, idx, sign)
    _enforce_side_condition(pos, neg)
    nf = NormalFormWord(tuple(pos), tuple(neg))
    if from_normal_form(nf).terms != f.terms:
        raise AssertionError(f"normal form {nf} does not reproduce {f}")
    return nf


def standard_generators() -> list[tuple[str, GroupElement]]:
    """x0, x0^-1, x1, x1^-1 with display names, in canonical order."""
    x0, x1 = gen_x(0), gen_x(1)
    return [
        ("x0", x0),
        ("x0^-1", inverse(x0)),
        ("x1", x1),
        ("x1^-1", inverse(x1)),
    ]


def generator_ball(radius: int) -> list[GroupElement]:
    """Distinct elements of word length <= radius over x0^+-1, x1^+-1,
    in breadth-first discovery order (deterministic)."""
    gens = [g for _, g in standard_generators()]
    seen: dict[tuple[Term, ...], GroupElement] = {}
    out: list[GroupElement] = []
    frontier = [GroupElement.identity()]
    seen[frontier[0].terms] = frontier[0]
    out.append(frontier[0])
    for _ in range(radius):
        nxt: list[GroupElement] = []
        for f in frontier:
            for g in gens:
                h = multiply(f, g)
                if h.terms not in seen:
                    seen[h.terms] = h
                    nxt.append(h)
                    out.append(h)
        frontier = nxt
    return out
