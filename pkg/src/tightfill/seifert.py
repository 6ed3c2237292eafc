"""Seifert fibered spaces over S² given by gluing matrices.

A fiber with invariant ``β/α`` is glued in by ``A = (α γ; -β δ)`` mapping the
solid torus frame ``V(i)`` to the complement frame ``Neg(i)``.  Fibers with
``α = 1`` play the role of the integer Euler term, so ``(0; e0, ...)`` and the
shorthand ``(b1/a1, ...)`` share one representation.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd

from .frames import (
    FrameError,
    FrameMap,
    FramedClass,
    SL2Z,
    Slope,
    V,
    Neg,
    Frame,
    class_slope,
    det2,
    transport,
)


class GrammarError(ValueError):
    """Malformed textual input."""


@dataclass(frozen=True)
class Fiber:
    alpha: int
    beta: int
    matrix: SL2Z

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if gcd(self.alpha, self.beta) != 1:
            raise ValueError(f"gcd({self.alpha}, {self.beta}) != 1")
        if (self.matrix.a, self.matrix.c) != (self.alpha, -self.beta):
            raise ValueError(f"first column of {self.matrix} is not ({self.alpha}, {-self.beta})")

    @property
    def invariant(self) -> Fraction:
        return Fraction(self.beta, self.alpha)

    @classmethod
    def from_matrix(cls, m: SL2Z) -> "Fiber":
        return cls(m.a, -m.c, m)


@dataclass(frozen=True)
class SeifertPresentation:
    fibers: tuple[Fiber, ...]
    genus: int = 0

    @property
    def invariants(self) -> tuple[Fraction, ...]:
        return tuple(f.invariant for f in self.fibers)

    def gluing_map(self, i: int) -> FrameMap:
        """``A_i`` as a map ``V(i) -> Neg(i)``; fibers are numbered from 1."""
        return FrameMap(self.fiber(i).matrix, V(i), Neg(i))

    def fiber(self, i: int) -> Fiber:
        if not 1 <= i <= len(self.fibers):
            raise IndexError(f"no fiber {i}")
        return self.fibers[i - 1]

    def replace(self, i: int, matrix: SL2Z) -> "SeifertPresentation":
        fibers = list(self.fibers)
        fibers[i - 1] = Fiber.from_matrix(matrix)
        return SeifertPresentation(tuple(fibers), self.genus)

    def __str__(self) -> str:
        body = ", ".join(_fmt(x) for x in self.invariants)
        if self.genus:
            return f"(g={self.genus}; {body})"
        return f"({body})"


@dataclass(frozen=True, order=True)
class NormalizedInvariants:
    genus: int
    e0: int
    fractions: tuple[Fraction, ...] = field(default=())

    def __str__(self) -> str:
        parts = [str(self.e0)] + [_fmt(f) for f in self.fractions]
        return f"({self.genus}; {', '.join(parts)})"


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def canonical_matrix(alpha: int, beta: int) -> SL2Z:
    """``(α γ; -β δ)`` with ``αδ + βγ = 1`` and ``0 <= γ < α``."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if gcd(alpha, beta) != 1:
        raise ValueError(f"{beta}/{alpha} is not reduced")
    # βγ ≡ 1 (mod α)
    gamma = pow(beta, -1, alpha) if alpha > 1 else 0
    delta = (1 - beta * gamma) // alpha
    return SL2Z(alpha, gamma, -beta, delta)


def from_invariants(fractions, matrices=None, genus: int = 0) -> SeifertPresentation:
    """Build a presentation; explicit ``matrices`` override the canonical γ choice."""
    fibers = []
    for k, x in enumerate(fractions):
        x = Fraction(x)
        if matrices is not None and matrices[k] is not None:
            fibers.append(Fiber(x.denominator, x.numerator, matrices[k]))
        else:
            fibers.append(Fiber(x.denominator, x.numerator, canonical_matrix(x.denominator, x.numerator)))
    return SeifertPresentation(tuple(fibers), genus)


def normalize(p: SeifertPresentation) -> NormalizedInvariants:
    e0 = 0
    fracs = []
    for x in p.invariants:
        n = floor(x)
        e0 += n
        if x != n:
            fracs.append(x - n)
    return NormalizedInvariants(p.genus, e0, tuple(sorted(fracs, reverse=True)))


def equivalent(p1: SeifertPresentation, p2: SeifertPresentation) -> bool:
    return normalize(p1) == normalize(p2)


def euler_number(p: SeifertPresentation) -> Fraction:
    """Sum of the invariants ``β_i/α_i`` (so ``(-1/2, 1/3, 1/4)`` has 1/12)."""
    return sum(p.invariants, Fraction(0))


def orbifold_euler_characteristic(p: SeifertPresentation) -> Fraction:
    return 2 - 2 * p.genus - sum((1 - Fraction(1, f.alpha) for f in p.fibers), Fraction(0))


# M1 keeps these non-canonical matrices; all wall slopes below are computed with them.
M1_MATRICES = (SL2Z(2, -1, 1, 0), SL2Z(4, 1, -1, 0), SL2Z(4, 1, -1, 0))
M1_INVARIANTS = (Fraction(-1, 2), Fraction(1, 4), Fraction(1, 4))
M2_INVARIANTS = (Fraction(-2, 3), Fraction(1, 3), Fraction(1, 3))
LISCA_E7 = (Fraction(-1, 2), Fraction(1, 3), Fraction(1, 4))
LISCA_E6 = (Fraction(-1, 2), Fraction(1, 3), Fraction(1, 3))


def m1() -> SeifertPresentation:
    return from_invariants(M1_INVARIANTS, M1_MATRICES)


def m2() -> SeifertPresentation:
    return from_invariants(M2_INVARIANTS)


# -- wall data ---------------------------------------------------------------

FIBER = "fiber"
MERIDIAN = "meridian"


@dataclass(frozen=True)
class StdNbhdDividing:
    """Dividing curves of slope ``1/t`` on a standard neighborhood, V-frame."""

    twist: int


def wall_class(p: SeifertPresentation, i: int, which, in_frame: Frame) -> FramedClass:
    if in_frame.index != i:
        raise FrameError(f"{in_frame} is not adjacent to wall {i}")
    if which == FIBER:
        c = FramedClass(0, 1, Neg(i))
    elif which == MERIDIAN:
        c = FramedClass(1, 0, V(i))
    elif isinstance(which, StdNbhdDividing):
        c = FramedClass(which.twist, 1, V(i))
    else:
        raise ValueError(f"unknown wall class {which!r}")
    target = V(i) if in_frame.kind == "product" else in_frame
    out = transport(c, target, p.gluing_map(i))
    return FramedClass(out.p, out.q, in_frame)


def wall_slope(p: SeifertPresentation, i: int, which, in_frame: Frame) -> Slope:
    return class_slope(wall_class(p, i, which, in_frame))


def meridional_disk_data(p: SeifertPresentation, i: int, dividing: Slope | None = None) -> tuple[int, int]:
    """``(tb, arcs)`` of a meridional disk of ``V_i`` when ``∂V_i`` has two vertical dividing curves."""
    fiber = wall_class(p, i, FIBER, V(i))
    if dividing is not None and Slope.of(dividing) != class_slope(fiber):
        raise ValueError("dividing set on the wall is not vertical")
    tb = -abs(det2((1, 0), fiber.vector))
    return tb, abs(tb)


def round_corners_slope(n2: int):
    """Boundary slope of ``V_2 ∪ V_3 ∪ N(A)`` after rounding, in the Pos(1) sense.

    Returns the three summands and their total ``-(2n2+1)/(4n2+1)``.
    """
    if n2 >= 0:
        warnings.warn("twisting number n2 >= 0 is outside the normalized case", stacklevel=2)
    d = 4 * n2 + 1
    summands = (Fraction(-n2, d), Fraction(-n2, d), Fraction(-1, d))
    total = sum(summands, Fraction(0))
    return tuple(Slope.of(x) for x in summands), Slope.of(total)


def patched_boundary_class(contributions) -> tuple[FramedClass, int]:
    """Class on the remaining wall bounded by meridional disks on two walls.

    ``contributions`` is a list of ``(wall, multiplicity, FramedClass)`` with
    classes in ``Neg`` frames.  In ``H_1(Σ_0 × S¹)`` the horizontal classes obey
    ``h_1 + h_2 + h_3 = 0`` and the fiber classes agree, so a sum lies on the
    third wall only when both walls carry the same horizontal coefficient.
    Returns the class (oriented as the boundary of the patched surface) and
    its multiplicity.
    """
    totals: dict[int, list[int]] = {}
    for wall, mult, c in contributions:
        if wall not in (1, 2, 3):
            raise ValueError(f"no wall {wall}")
        if c.frame.kind == "pos":
            c = c.reoriented()
        if c.frame != Neg(wall):
            raise FrameError(f"contribution on wall {wall} given in {c.frame}")
        acc = totals.setdefault(wall, [0, 0])
        acc[0] += mult * c.p
        acc[1] += mult * c.q
    if len(totals) == 3:
        raise ValueError("contributions on all three walls")
    if len(totals) != 2:
        raise ValueError("need contributions on exactly two walls")
    (third,) = {1, 2, 3} - set(totals)
    (h_a, f_a), (h_b, f_b) = totals.values()
    if h_a != h_b:
        raise ValueError(f"horizontal parts {h_a} and {h_b} differ; sum is not carried by wall {third}")
    out = FramedClass(-h_a, f_a + f_b, Neg(third))
    return out, out.multiplicity


# -- notation ----------------------------------------------------------------

_FRAC = r"\s*[+-]?\d+(?:\s*/\s*\d+)?\s*"
_FULL = re.compile(rf"^\(\s*(\d+)\s*;({_FRAC}(?:,{_FRAC})*)\)$")
_SHORT = re.compile(rf"^\(({_FRAC}(?:,{_FRAC})*)\)$")


def parse_invariants(text: str) -> SeifertPresentation:
    """Parse ``(g; e0, b1/a1, ...)`` or the shorthand ``(b1/a1, ...)``."""
    text = text.strip()
    full = _FULL.match(text)
    short = _SHORT.match(text)
    if not (full or short):
        raise GrammarError(f"cannot parse Seifert invariants {text!r}")
    body = full.group(2) if full else short.group(1)
    try:
        items = [Fraction(x.replace(" ", "")) for x in body.split(",")]
    except ZeroDivisionError as exc:
        raise GrammarError(str(exc)) from None
    if not full:
        return from_invariants(items)
    e0, rest = items[0], items[1:]
    if e0.denominator != 1:
        raise GrammarError("e0 must be an integer")
    if e0 == 0 and rest:
        items = rest
    return from_invariants(items, genus=int(full.group(1)))

