"""Torus bundles with periodic monodromy and their Seifert fibrations.

For ``A`` of finite order ``n`` the flow lines of the mapping torus close up
into circles, giving a Seifert fibration over the orbifold ``T²/<A>``.  A point
whose ``A``-orbit has ``d < n`` elements sits on an exceptional fiber of
multiplicity ``m = n/d``.  Near such a point the return map ``A^d`` is a
rotation by ``2πk/m``; in a product structure on the neighborhood the regular
fiber is the ``(k, m)`` curve, so the gluing matrix has ``γ = -k`` and
``β ≡ -k⁻¹ (mod m)``.  The integer parts are fixed by the Euler number being
zero, which also serves as a consistency check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .frames import INFINITE, SL2Z, det2, matrix_order
from .seifert import SeifertPresentation, from_invariants


class InfiniteOrderError(ValueError):
    pass


@dataclass(frozen=True)
class TorusBundle:
    monodromy: SL2Z

    def is_trivial(self) -> bool:
        return self.monodromy == SL2Z.identity()


@dataclass(frozen=True)
class Orbit:
    representative: tuple[Fraction, Fraction]
    size: int
    multiplicity: int
    rotation: int  # k with the local return map a rotation by 2πk/multiplicity


def _order(A: SL2Z) -> int:
    n = matrix_order(A)
    if n == INFINITE:
        raise InfiniteOrderError(f"{A} has infinite order")
    return n


def _act_mod1(A: SL2Z, x):
    a, b = A @ x
    return (a % 1, b % 1)


def fixed_points(B: SL2Z) -> list[tuple[Fraction, Fraction]]:
    """Points of ``Q²/Z²`` fixed by ``B != I``, by scanning the ``|det(B - I)|``-torsion."""
    a, b, c, d = B.a - 1, B.b, B.c, B.d - 1
    D = abs(a * d - b * c)
    if D == 0:
        raise ValueError(f"{B} fixes a circle of points")
    pts = []
    for i in range(D):
        for j in range(D):
            x, y = Fraction(i, D), Fraction(j, D)
            if (a * x + b * y).denominator == 1 and (c * x + d * y).denominator == 1:
                pts.append((x, y))
    assert len(pts) == D
    return pts


def local_rotation(L: SL2Z, m: int) -> int:
    """``k = ±1`` (mod m) with ``L`` an orientation-preserving rotation by ``2πk/m``."""
    if m == 2:
        return 1
    return 1 if det2((1, 0), L @ (1, 0)) > 0 else -1


def periodic_orbits(A: SL2Z) -> list[Orbit]:
    """Orbits of ``A`` on ``T²`` with nontrivial stabilizer, free orbits discarded."""
    n = _order(A)
    special = set()
    for k in range(1, n):
        if n % k == 0:
            special.update(fixed_points(A**k))
    orbits = []
    seen = set()
    for x in sorted(special):
        if x in seen:
            continue
        orbit = [x]
        y = _act_mod1(A, x)
        while y != x:
            orbit.append(y)
            y = _act_mod1(A, y)
        seen.update(orbit)
        d = len(orbit)
        m = n // d
        orbits.append(Orbit(min(orbit), d, m, local_rotation(A**d, m)))
    return orbits


def mapping_torus_seifert(A: SL2Z) -> SeifertPresentation:
    n = _order(A)
    if n == 1:
        return SeifertPresentation((), genus=1)
    fracs = []
    for orb in periodic_orbits(A):
        m, k = orb.multiplicity, orb.rotation
        fracs.append(Fraction((-pow(k, -1, m)) % m, m))
    e0 = -sum(fracs, Fraction(0))
    if e0.denominator != 1:
        raise ArithmeticError(f"local invariants of {A} do not sum to an integer")
    fracs.sort(reverse=True)
    return from_invariants(([e0] if e0 else []) + fracs)


def power_cover(A: SL2Z, k: int) -> TorusBundle:
    if k <= 0:
        raise ValueError("cover degree must be positive")
    return TorusBundle(A**k)


def parse_monodromy(text: str) -> SL2Z:
    """Accept ``[[a,b],[c,d]]`` or ``a,b,c,d``."""
    cleaned = text.replace("[", " ").replace("]", " ").replace(",", " ").split()
    if len(cleaned) != 4:
        raise ValueError(f"expected four entries in {text!r}")
    try:
        a, b, c, d = (int(x) for x in cleaned)
    except ValueError:
        raise ValueError(f"non-integer entry in {text!r}") from None
    return SL2Z(a, b, c, d)
