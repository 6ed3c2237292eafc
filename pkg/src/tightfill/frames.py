"""Exact slope arithmetic on Q ∪ {∞}, SL(2,Z) matrices and torus-wall frames.

Conventions
-----------
A homology class ``(p, q)`` on a torus wall has slope ``q/p``; the meridian
``(1, 0)`` has slope 0 and the longitude ``(0, 1)`` has slope ∞.

Each wall ``i`` carries three coordinate frames:

* ``V(i)``     -- the boundary of the solid torus ``V_i``,
* ``Neg(i)``   -- ``-∂(M \\ V_i)``, horizontal direction first, fiber second,
* ``Pos(i)``   -- ``∂(M \\ V_i)``, the same wall with reversed orientation.

A gluing matrix ``A_i`` maps ``V(i)`` to ``Neg(i)``.  Passing between
``Neg(i)`` and ``Pos(i)`` sends ``(p, q)`` to ``(p, -q)``, which negates slopes.
``Product(i)`` is the product structure ``D² × S¹`` on a thickened copy of
``V_i`` and uses the same coordinates as ``V(i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

INFINITE = "infinite"


class FrameError(ValueError):
    """Raised when a class or slope is used in the wrong coordinate frame."""


@dataclass(frozen=True)
class Slope:
    """A reduced slope ``num/den`` with ``den >= 0``; ∞ is ``(1, 0)``."""

    num: int
    den: int

    def __post_init__(self):
        if self.num == 0 and self.den == 0:
            raise ValueError("0/0 is not a slope")
        g = gcd(self.num, self.den)
        num, den = self.num // g, self.den // g
        if den < 0 or (den == 0 and num < 0):
            num, den = -num, -den
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def of(cls, value: Union["Slope", Fraction, int, str]) -> "Slope":
        if isinstance(value, Slope):
            return value
        if isinstance(value, str):
            text = value.strip()
            if text in ("inf", "∞", "oo", "1/0"):
                return cls(1, 0)
            value = Fraction(text)
        value = Fraction(value)
        return cls(value.numerator, value.denominator)

    @classmethod
    def from_class(cls, p: int, q: int) -> "Slope":
        return cls(q, p)

    @property
    def is_infinite(self) -> bool:
        return self.den == 0

    def value(self) -> Fraction:
        if self.is_infinite:
            raise ValueError("∞ has no rational value")
        return Fraction(self.num, self.den)

    def lift(self) -> tuple[int, int]:
        """Primitive class ``(p, q)`` with this slope and ``p >= 0``."""
        return (self.den, self.num)

    def __str__(self) -> str:
        if self.is_infinite:
            return "inf"
        if self.den == 1:
            return str(self.num)
        return f"{self.num}/{self.den}"


INF = Slope(1, 0)


@dataclass(frozen=True)
class SL2Z:
    """Integer matrix ``(a b; c d)`` with determinant one."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.rows()} is not 1")

    @classmethod
    def identity(cls) -> "SL2Z":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rows(cls, rows) -> "SL2Z":
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def __matmul__(self, other):
        if isinstance(other, SL2Z):
            return SL2Z(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
            )
        p, q = other
        return (self.a * p + self.b * q, self.c * p + self.d * q)

    def __neg__(self) -> "SL2Z":
        return SL2Z(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "SL2Z":
        return SL2Z(self.d, -self.b, -self.c, self.a)

    def __pow__(self, k: int) -> "SL2Z":
        base = self if k >= 0 else self.inverse()
        result = SL2Z.identity()
        for _ in range(abs(k)):
            result = result @ base
        return result

    def __str__(self) -> str:
        return f"({self.a} {self.b}; {self.c} {self.d})"


@dataclass(frozen=True)
class Frame:
    kind: str
    index: int | None = None

    KINDS = ("V", "neg", "pos", "product")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown frame kind {self.kind!r}")

    @property
    def is_complement(self) -> bool:
        return self.kind in ("neg", "pos")

    def __str__(self) -> str:
        return self.kind if self.index is None else f"{self.kind}({self.index})"


def V(i: int) -> Frame:
    return Frame("V", i)


def Neg(i: int) -> Frame:
    return Frame("neg", i)


def Pos(i: int) -> Frame:
    return Frame("pos", i)


def Product(i: int) -> Frame:
    return Frame("product", i)


@dataclass(frozen=True)
class FramedClass:
    p: int
    q: int
    frame: Frame

    @property
    def vector(self) -> tuple[int, int]:
        return (self.p, self.q)

    @property
    def multiplicity(self) -> int:
        return gcd(self.p, self.q)

    def is_primitive(self) -> bool:
        return self.multiplicity == 1

    def reoriented(self) -> "FramedClass":
        """Same class seen from the other side of a complement wall."""
        if not self.frame.is_complement:
            raise FrameError(f"{self.frame} has no opposite orientation")
        other = Frame("pos" if self.frame.kind == "neg" else "neg", self.frame.index)
        return FramedClass(self.p, -self.q, other)


@dataclass(frozen=True)
class FrameMap:
    """An SL(2,Z) matrix together with the frames it maps between."""

    matrix: SL2Z
    source: Frame
    target: Frame

    def inverse(self) -> "FrameMap":
        return FrameMap(self.matrix.inverse(), self.target, self.source)


def class_slope(c: FramedClass) -> Slope:
    if not c.is_primitive():
        raise ValueError(f"class {c.vector} is not primitive")
    return Slope.from_class(c.p, c.q)


def lift(s: Slope, frame: Frame) -> FramedClass:
    p, q = s.lift()
    return FramedClass(p, q, frame)


def act(m: Union[SL2Z, FrameMap], c: FramedClass) -> FramedClass:
    """Apply ``m`` to ``c``; a bare matrix keeps the frame tag unchanged."""
    if isinstance(m, SL2Z):
        p, q = m @ c.vector
        return FramedClass(p, q, c.frame)
    if m.source != c.frame:
        raise FrameError(f"map expects {m.source}, class lives in {c.frame}")
    p, q = m.matrix @ c.vector
    return FramedClass(p, q, m.target)


def _to_neg(c: FramedClass) -> FramedClass:
    return c.reoriented() if c.frame.kind == "pos" else c


def _routing_frame(f: Frame) -> Frame:
    # Pos shares Neg's coordinates up to the sign rule; Product shares V's.
    if f.kind == "pos":
        return Neg(f.index)
    if f.kind == "product":
        return V(f.index)
    return f


def transport(c: FramedClass, to: Frame, via: FrameMap | None = None) -> FramedClass:
    """Move a class into frame ``to``, using ``via`` (or its inverse) and the sign rule."""
    if c.frame == to:
        return c
    # Pos frames are reached through the matching Neg frame.
    src_n, dst_n = _routing_frame(c.frame), _routing_frame(to)
    cur = _to_neg(c) if c.frame.kind == "pos" else c
    if src_n != dst_n:
        if via is None:
            raise FrameError(f"no map given from {c.frame} to {to}")
        if via.source == src_n and via.target == dst_n:
            cur = act(via, cur)
        elif via.target == src_n and via.source == dst_n:
            cur = act(via.inverse(), cur)
        else:
            raise FrameError(f"{via.source}->{via.target} does not connect {c.frame} and {to}")
    if to.kind == "pos":
        cur = cur.reoriented()
    return FramedClass(cur.p, cur.q, to)


def convert_slope(s: Slope, src: Frame, dst: Frame, via: FrameMap | None = None) -> Slope:
    return class_slope(transport(lift(Slope.of(s), src), dst, via))


def det2(u: tuple[int, int], v: tuple[int, int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def farey_neighbors(s1: Slope, s2: Slope) -> bool:
    return abs(det2(s1.lift(), s2.lift())) == 1


def neg_continued_fraction(r) -> list[int]:
    """Coefficients of ``r = a0 - 1/(a1 - 1/(... - 1/ak))`` with ``a_i >= 2`` for i >= 1."""
    s = Slope.of(r)
    if s.is_infinite or s.num == 0:
        raise ValueError("continued fraction undefined for 0 and ∞")
    x = s.value()
    coeffs = []
    while True:
        a = -((-x.numerator) // x.denominator)  # ceiling
        coeffs.append(a)
        rest = a - x
        if rest == 0:
            return coeffs
        x = 1 / rest


def eval_neg_continued_fraction(coeffs) -> Fraction:
    if not coeffs:
        raise ValueError("empty continued fraction")
    value = Fraction(coeffs[-1])
    for a in reversed(coeffs[:-1]):
        if value == 0:
            raise ZeroDivisionError("degenerate continued fraction")
        value = a - 1 / value
    return value


def matrix_order(m: SL2Z) -> Union[int, str]:
    """Order of ``m`` in SL(2,Z), or ``INFINITE``."""
    if m == SL2Z.identity():
        return 1
    if m == -SL2Z.identity():
        return 2
    return {0: 4, 1: 6, -1: 3}.get(m.trace, INFINITE)
