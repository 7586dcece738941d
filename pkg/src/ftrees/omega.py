"""The coset space F/H_2 as diagonal projections.

H_2 is the subgroup of F whose terms all have even gauge degree; the
coset of f is determined by the projection f_0 f_0*, so F/H_2 is the
orbit of 1 under

    f . p = f_0 p f_0* + f_1 (1 - p) f_1*.

A projection lies in the orbit iff its trace is k / 2^(2m+1) with
k = 2 (mod 3); `realize` produces an explicit witness.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import _packed
from .dyadic import Dyadic
from .elements import (
    GroupElement,
    NotInF,
    Term,
    inverse,
    is_order_preserving,
    multiply,
    parity_split,
    validate_unitary,
)
from .words import check_word, is_antichain

__all__ = [
    "DiagonalProjection",
    "NotInOmega2",
    "InternalSearchExhausted",
    "ZERO",
    "ONE",
    "trace",
    "meet",
    "join",
    "complement",
    "d_tau",
    "act",
    "h2_member",
    "coset_invariant",
    "omega2_member",
    "realize",
    "orbit",
    "orbit_levels",
    "OrbitRun",
]


class NotInOmega2(ValueError):
    """The projection is not in the orbit of 1 (trace condition fails)."""


class InternalSearchExhausted(RuntimeError):
    """realize() could not certify a constructed element (should not occur)."""


def _canonical_support(words: Iterable[str]) -> tuple[str, ...]:
    """Sort and collapse full sibling pairs until none remain."""
    stack: list[str] = []
    for w in sorted(set(words)):
        stack.append(w)
        while (
            len(stack) >= 2
            and stack[-1].endswith("2")
            and stack[-2] == stack[-1][:-1] + "1"
        ):
            parent = stack[-1][:-1]
            stack[-2:] = [parent]
    return tuple(stack)


@dataclass(frozen=True)
class DiagonalProjection:
    """Finite antichain of words: the projection sum of their cylinders.

    Empty support is the zero projection; support ("",) is the identity.
    The stored form is canonical (siblings collapsed, lex sorted), so
    equality and hashing are structural.
    """

    support: tuple[str, ...]

    def __init__(self, support: Iterable[str]) -> None:
        ws = [check_word(w) for w in support]
        if not is_antichain(ws):
            raise ValueError(f"support is not an antichain: {sorted(ws)}")
        object.__setattr__(self, "support", _canonical_support(ws))

    def is_zero(self) -> bool:
        return not self.support

    def is_one(self) -> bool:
        return self.support == ("",)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        if self.is_one():
            return "1"
        return "+".join(f"P[{w}]" for w in self.support)

    def __repr__(self) -> str:
        return f"DiagonalProjection({self})"


def _raw_projection(canonical: tuple[str, ...]) -> DiagonalProjection:
    # trusted constructor for supports already in canonical form
    p = object.__new__(DiagonalProjection)
    object.__setattr__(p, "support", canonical)
    return p


ZERO = DiagonalProjection(())
ONE = DiagonalProjection(("",))


def trace(p: DiagonalProjection) -> Dyadic:
    """Sum of 2^-|w| over the support; tau(P_w) = 2^-|w| exactly."""
    total = Dyadic(0)
    for w in p.support:
        total = total + Dyadic(1, len(w))
    return total


def _restrict_transport(support: Sequence[str], beta: str, alpha: str) -> list[str]:
    """Support of S_alpha (S_beta* p S_beta) S_alpha*: the part of p under
    beta, re-rooted at alpha."""
    out = []
    for w in support:
        if w.startswith(beta):
            out.append(alpha + w[len(beta):])
        elif beta.startswith(w):
            out.append(alpha)
            # an antichain contains at most one prefix of beta
    return out


def complement(p: DiagonalProjection) -> DiagonalProjection:
    """1 - p: the maximal cylinders disjoint from the support."""
    out: list[str] = []

    def walk(prefix: str, below: list[str]) -> None:
        if any(b == "" for b in below):
            return
        if not below:
            out.append(prefix)
            return
        for ch in ("1", "2"):
            walk(prefix + ch, [b[1:] for b in below if b[0] == ch])

    walk("", list(p.support))
    return DiagonalProjection(out)


def meet(p: DiagonalProjection, q: DiagonalProjection) -> DiagonalProjection:
    """Lattice meet p ^ q, the product projection."""
    out = set()
    for a in p.support:
        for b in q.support:
            if b.startswith(a):
                out.add(b)
            elif a.startswith(b):
                out.add(a)
    return DiagonalProjection(out)


def join(p: DiagonalProjection, q: DiagonalProjection) -> DiagonalProjection:
    """Lattice join p v q."""
    return complement(meet(complement(p), complement(q)))


def d_tau(p: DiagonalProjection, q: DiagonalProjection) -> Dyadic:
    """tau(|p - q|) = tau(p) + tau(q) - 2 tau(p ^ q)."""
    return trace(p) + trace(q) - Dyadic(2) * trace(meet(p, q))


def act(f: GroupElement, p: DiagonalProjection) -> DiagonalProjection:
    """The left action f . p = f_0 p f_0* + f_1 (1 - p) f_1*.

    Even-degree terms transport the part of p under their domain word;
    odd-degree terms transport the corresponding part of 1 - p.
    """
    if not is_order_preserving(f):
        raise NotInF("the action is defined for order-preserving elements")
    even, odd = parity_split(f)
    out: list[str] = []
    for t in even:
        out.extend(_restrict_transport(p.support, t.beta, t.alpha))
    if odd:
        comp = complement(p).support
        for t in odd:
            out.extend(_restrict_transport(comp, t.beta, t.alpha))
    return DiagonalProjection(out)


def h2_member(f: GroupElement) -> bool:
    """Membership in H_2: every term of the reduced form has even degree.

    Refinement preserves degrees, so this does not depend on the chosen
    representation.
    """
    if not is_order_preserving(f):
        raise NotInF("H_2 is a subgroup of F")
    return all(t.degree % 2 == 0 for t in f.terms)


def coset_invariant(f: GroupElement) -> DiagonalProjection:
    """The projection f_0 f_0* determining the coset of f; equals f . 1."""
    if not is_order_preserving(f):
        raise NotInF("cosets of H_2 are defined in F")
    even, _ = parity_split(f)
    return DiagonalProjection(t.alpha for t in even)


def omega2_member(p: DiagonalProjection) -> Optional[tuple[int, int]]:
    """(k, m) with tau(p) = k/2^(2m+1) and k = 2 (mod 3), if p is in Omega_2.

    The exponent is raised to the smallest odd value; raising it further
    by 2 multiplies k by 4 = 1 (mod 3), so the residue is well defined.
    """
    if p.is_zero():
        return None
    t = trace(p)
    e = t.exponent if t.exponent % 2 == 1 else t.exponent + 1
    k = t.scaled(e)
    m = (e - 1) // 2
    if k % 3 != 2:
        return None
    return (k, m)


# ---------------------------------------------------------------------------
# Constructive realization of admissible projections
# ---------------------------------------------------------------------------
#
# realize() strips lex-consecutive triples of atoms from the target
# support (each step an explicit order-preserving element built from
# five partial isometries, and verified by evaluating the action) until
# only two atoms remain; the two-atom base case is built directly by
# choosing a domain code whose leaf-depth parities make exactly the
# target cylinders the ranges of the even-degree terms.


def _parity_weight(parity: int) -> int:
    # Kraft contribution mod 3 of a leaf whose depth has this parity
    return 1 if parity % 2 == 0 else 2


def _solve_parities(items: list[tuple[int, str, str]]) -> list[tuple[str, str, str]]:
    """Leaves (domain word, atom word, suffix) of a binary tree whose
    leaf-depth parities match the requested ones.

    `items` holds (required parity, atom word, suffix so far); atoms may
    be split, flipping the required parity of both children.  Solvable
    exactly when the parity weights sum to 1 mod 3; a split point whose
    prefix weight is 2 mod 3 always exists after at most one split of the
    leading item.
    """
    total = sum(_parity_weight(p) for p, _, _ in items) % 3
    if total != 1:
        raise AssertionError(f"unsolvable parity sequence (weight {total})")
    if len(items) == 1 and items[0][0] % 2 == 0:
        parity, atom, suffix = items[0]
        return [("", atom, suffix)]
    prefix = 0
    split = None
    for j in range(len(items) - 1):
        prefix = (prefix + _parity_weight(items[j][0])) % 3
        if prefix == 2:
            split = j + 1
            break
    if split is None:
        # stuck pattern starts with an even requirement: split that atom
        parity, atom, suffix = items[0]
        items = [
            (parity + 1, atom, suffix + "1"),
            (parity + 1, atom, suffix + "2"),
        ] + items[1:]
        split = 1
    left = [(p + 1, a, s) for p, a, s in items[:split]]
    right = [(p + 1, a, s) for p, a, s in items[split:]]
    return [("1" + w, a, s) for w, a, s in _solve_parities(left)] + [
        ("2" + w, a, s) for w, a, s in _solve_parities(right)
    ]


def _element_with_invariant(p: DiagonalProjection) -> GroupElement:
    """An f in F with f . 1 = p, built in one pass from a parity tree."""
    comp = complement(p)
    atoms = sorted(
        [(w, True) for w in p.support] + [(w, False) for w in comp.support]
    )
    items = []
    for w, inside in atoms:
        parity = len(w) % 2 if inside else (len(w) + 1) % 2
        items.append((parity, w, ""))
    leaves = _solve_parities(items)
    terms = [Term(atom + suffix, b) for b, atom, suffix in leaves]
    return validate_unitary(terms)


def _interval_words(level: int, lo: str, hi: str) -> list[str]:
    """Level-`level` words strictly between lo and hi in lex order."""
    lo_i, hi_i = _packed.atom_index(lo), _packed.atom_index(hi)
    out = []
    for idx in range(lo_i + 1, hi_i):
        w = "".join("2" if idx >> (level - 1 - j) & 1 else "1" for j in range(level))
        out.append(w)
    return out


def _triple_removal_element(level: int, triple: Sequence[str]) -> GroupElement:
    """The order-preserving element moving P(support) to P(support minus
    triple), where the triple is lex-consecutive within the support.

    Five partial isometries squeeze the cylinders of a1, a2, a3 into the
    slack between them; everything outside the interval [a1, a3] is
    fixed.  The words strictly between consecutive support atoms are not
    in the support, which is exactly what makes the action clean.
    """
    a1, a2, a3 = triple
    mus = _interval_words(level, a1, a2)
    nus = _interval_words(level, a2, a3)
    terms: list[Term] = []
    # identity on the complement of the interval [a1 .. a3]
    inside = {a1, a2, a3, *mus, *nus}
    outside = complement(DiagonalProjection(inside))
    terms.extend(Term(w, w) for w in outside.support)
    # u1: a1 compressed into its left half
    terms.append(Term(a1 + "1", a1))
    if mus:
        # u2: the mu block translated back by half an atom
        terms.append(Term(a1 + "2", mus[0] + "1"))
        for j, mu in enumerate(mus):
            terms.append(Term(mu + "1", mu + "2"))
            if j + 1 < len(mus):
                terms.append(Term(mu + "2", mus[j + 1] + "1"))
        # u3: a2 compressed into the freed right half of the last mu
        terms.append(Term(mus[-1] + "2", a2))
    else:
        terms.append(Term(a1 + "2", a2))
    if nus:
        # u4: the nu block shifted down one atom
        terms.append(Term(a2, nus[0]))
        for i in range(1, len(nus)):
            terms.append(Term(nus[i - 1], nus[i]))
        # u5: a3 stretched over the last nu slot and itself
        terms.append(Term(nus[-1], a3 + "1"))
        terms.append(Term(a3, a3 + "2"))
    else:
        terms.append(Term(a2, a3 + "1"))
        terms.append(Term(a3, a3 + "2"))
    return validate_unitary(terms)


def _refine_to_level(p: DiagonalProjection, level: int) -> list[str]:
    words: list[str] = []
    for w in p.support:
        if len(w) > level:
            raise ValueError(f"support word {w} deeper than level {level}")
        suffixes = [""]
        for _ in range(level - len(w)):
            suffixes = [s + ch for s in suffixes for ch in ("1", "2")]
        words.extend(w + s for s in suffixes)
    return sorted(words)


def realize(p: DiagonalProjection) -> GroupElement:
    """An element f of F with f . 1 = p, certified before returning.

    Works at the uniform odd level implied by the trace; strips the three
    lex-first support atoms per step down to a two-atom base case, then
    composes the inverses of the removal steps with the base witness.
    """
    km = omega2_member(p)
    if km is None:
        raise NotInOmega2(f"tau = {trace(p)} is not k/2^(2m+1) with k = 2 mod 3")
    _, m = km
    # odd working level deep enough for the whole support; going deeper
    # in steps of two multiplies k by 4, preserving the residue
    level = max(2 * m + 1, *(len(w) for w in p.support))
    if level % 2 == 0:
        level += 1
    current = _refine_to_level(p, level)
    steps: list[GroupElement] = []
    current_proj = p
    while len(current) > 2:
        triple = current[:3]
        f_step = _triple_removal_element(level, triple)
        removed = DiagonalProjection(current[3:])
        if act(f_step, current_proj) != removed:
            raise InternalSearchExhausted(
                f"triple removal failed at {current_proj} -> {removed}"
            )
        steps.append(f_step)
        current = current[3:]
        current_proj = removed
    base = _element_with_invariant(current_proj)
    if act(base, ONE) != current_proj:
        raise InternalSearchExhausted(f"base witness failed for {current_proj}")
    f = base
    for step in reversed(steps):
        f = multiply(inverse(step), f)
    if act(f, ONE) != p:
        raise InternalSearchExhausted(f"assembled witness failed for {p}")
    return f


# ---------------------------------------------------------------------------
# Orbit enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrbitRun:
    """Result of a breadth-first orbit sweep."""

    depths: dict[DiagonalProjection, int]
    action_evaluations: int
    seconds: float

    def projections(self) -> set[DiagonalProjection]:
        return set(self.depths)


def _packed_generators() -> list[_packed.PackedElement]:
    from .generators import standard_generators

    return [
        _packed.PackedElement([(t.alpha, t.beta) for t in g.terms])
        for _, g in standard_generators()
    ]


def orbit_levels(
    start: DiagonalProjection, depth: int, threads: int | None = None
) -> OrbitRun:
    """BFS under x0^+-1, x1^+-1 with discovery depths and timing.

    The frontier may be fanned out over worker threads; results are
    merged in frontier order, so the outcome is identical for any thread
    count.
    """
    if omega2_member(start) is None:
        raise NotInOmega2(f"orbit start {start} is not in Omega_2")
    gens = _packed_generators()
    start_packed = _packed.pack(start.support)
    seen: dict[tuple[int, int], int] = {start_packed: 0}
    frontier = [start_packed]
    actions = 0
    t0 = time.perf_counter()

    def expand(chunk: list[tuple[int, int]]) -> list[tuple[int, int]]:
        out = []
        for lv, mask in chunk:
            for g in gens:
                out.append(g.act(lv, mask))
        return out

    for d in range(1, depth + 1):
        if not frontier:
            break
        if threads and threads > 1 and len(frontier) > threads:
            size = (len(frontier) + threads - 1) // threads
            chunks = [frontier[i : i + size] for i in range(0, len(frontier), size)]
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(expand, chunks))
            produced = [q for chunk in results for q in chunk]
        else:
            produced = expand(frontier)
        actions += len(produced)
        nxt = []
        for q in produced:
            if q not in seen:
                seen[q] = d
                nxt.append(q)
        frontier = nxt
    elapsed = time.perf_counter() - t0
    depths = {
        _raw_projection(_packed.unpack(lv, mask)): dd
        for (lv, mask), dd in seen.items()
    }
    return OrbitRun(depths, actions, elapsed)


def orbit(
    start: DiagonalProjection, depth: int, threads: int | None = None
) -> set[DiagonalProjection]:
    """All projections reachable from `start` in at most `depth` generator
    applications."""
    return orbit_levels(start, depth, threads).projections()
