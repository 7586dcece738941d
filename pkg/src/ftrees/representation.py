"""The permutation representation of F on l2(Omega_2), at finite support.

pi_2(f) relabels basis vectors delta_p by the coset action.  Any finite
family of distinct group elements moves some basis vector to pairwise
distinct images (a separating point), which yields machine-checkable
linear-independence certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .elements import GroupElement, NotInF, is_order_preserving
from .generators import generator_ball
from .omega import ONE, DiagonalProjection, act, omega2_member


class SearchExhausted(RuntimeError):
    """Bounded search for a separating point failed; the radius is reported."""

    def __init__(self, radius: int) -> None:
        super().__init__(f"no separating point in the generator ball of radius {radius}")
        self.radius = radius


@dataclass(frozen=True)
class FormalVector:
    """Finitely supported rational combination of basis projections."""

    coefficients: tuple[tuple[DiagonalProjection, Fraction], ...]

    def __init__(
        self, coefficients: Mapping[DiagonalProjection, Fraction | int]
    ) -> None:
        items = []
        for p, c in coefficients.items():
            c = Fraction(c)
            if c == 0:
                continue
            if omega2_member(p) is None:
                raise ValueError(f"basis projection {p} is not in Omega_2")
            items.append((p, c))
        items.sort(key=lambda pc: pc[0].support)
        object.__setattr__(self, "coefficients", tuple(items))

    @classmethod
    def basis(cls, p: DiagonalProjection) -> "FormalVector":
        return cls({p: Fraction(1)})

    def as_dict(self) -> dict[DiagonalProjection, Fraction]:
        return dict(self.coefficients)

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        return " + ".join(f"{c}*d[{p}]" for p, c in self.coefficients)


def apply(f: GroupElement, v: FormalVector) -> FormalVector:
    """pi_2(f) v: relabel each basis projection by the action."""
    if not is_order_preserving(f):
        raise NotInF("pi_2 is a representation of F")
    out: dict[DiagonalProjection, Fraction] = {}
    for p, c in v.coefficients:
        q = act(f, p)
        out[q] = out.get(q, Fraction(0)) + c
    return FormalVector(out)


def separating_point(
    fs: Sequence[GroupElement], max_radius: int = 8
) -> DiagonalProjection:
    """A projection p with f . p pairwise distinct over the family.

    Candidates are p = g . 1 for g over generator balls of increasing
    radius, tested directly; the first success in (radius, discovery)
    order is returned, so the result is deterministic.
    """
    for f in fs:
        if not is_order_preserving(f):
            raise NotInF("separating points are defined for families in F")
    for radius in range(max_radius + 1):
        for g in generator_ball(radius):
            p = act(g, ONE)
            images = [act(f, p) for f in fs]
            if len(set(images)) == len(images):
                return p
    raise SearchExhausted(max_radius)


@dataclass(frozen=True)
class IndependenceCertificate:
    """A point whose orbit images certify linear independence.

    Distinct basis deltas are linearly independent, so pairwise distinct
    images of one projection witness independence of the pi_2(f_i).
    """

    elements: tuple[GroupElement, ...]
    point: DiagonalProjection
    images: tuple[DiagonalProjection, ...]

    def verify(self) -> bool:
        recomputed = tuple(act(f, self.point) for f in self.elements)
        return recomputed == self.images and len(set(self.images)) == len(self.images)

    def to_json(self) -> dict:
        return {
            "p": str(self.point),
            "images": [str(q) for q in self.images],
            "elements": [str(f) for f in self.elements],
        }


def independence_certificate(
    fs: Sequence[GroupElement], max_radius: int = 8
) -> IndependenceCertificate:
    """Certificate that pi_2 of the given distinct elements is independent."""
    seen = set()
    for f in fs:
        if f.terms in seen:
            raise ValueError("certificate requires pairwise distinct elements")
        seen.add(f.terms)
    p = separating_point(fs, max_radius)
    images = tuple(act(f, p) for f in fs)
    return IndependenceCertificate(tuple(fs), p, images)
