"""Star-shaped plumbings of disk bundles over S² and their boundary 3-manifolds."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .frames import eval_neg_continued_fraction
from .seifert import GrammarError, SeifertPresentation, from_invariants


@dataclass(frozen=True)
class PlumbingGraph:
    center: int
    legs: tuple[tuple[int, ...], ...] = ()

    def __str__(self) -> str:
        legs = "".join("; " + ",".join(map(str, leg)) for leg in self.legs)
        return f"star({self.center}{legs})"


E7_POSITIVE = PlumbingGraph(2, ((2,), (2, 2), (2, 2, 2)))
E6_POSITIVE = PlumbingGraph(2, ((2,), (2, 2), (2, 2)))
NAMED = {"e7+": E7_POSITIVE, "e6+": E6_POSITIVE}


def leg_invariant(weights) -> Fraction:
    """Value of the chain ``w1 - 1/(w2 - 1/(... - 1/wk))``, ``w1`` next to the center."""
    try:
        return eval_neg_continued_fraction(list(weights))
    except ZeroDivisionError:
        raise ValueError(f"degenerate chain {list(weights)}") from None


def boundary_seifert(g: PlumbingGraph, orientation: int = 1) -> SeifertPresentation:
    """Boundary of the plumbing as a Seifert space.

    The center contributes the integer invariant ``e`` and a leg with value
    ``α/β`` contributes ``-β/α``.  With this orientation the positive E7 and
    E6 graphs bound ``(-1/2, 1/3, 1/4)`` and ``(-1/2, 1/3, 1/3)``.
    ``orientation=-1`` gives the mirror.
    """
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    fracs = [Fraction(g.center)]
    for leg in g.legs:
        if not leg:
            raise ValueError("empty leg")
        value = leg_invariant(leg)
        if value == 0:
            raise ValueError(f"leg {list(leg)} has value 0")
        fracs.append(-1 / value)
    return from_invariants([orientation * x for x in fracs])


_STAR = re.compile(r"^star\(\s*(-?\d+)\s*((?:;\s*-?\d+(?:\s*,\s*-?\d+)*\s*)*)\)$")


def parse_graph(text: str) -> PlumbingGraph:
    """Parse ``star(center; w,w; w)`` or one of the names ``e6+``, ``e7+``."""
    text = text.strip()
    if text.lower() in NAMED:
        return NAMED[text.lower()]
    match = _STAR.match(text)
    if not match:
        raise GrammarError(f"cannot parse plumbing graph {text!r}")
    legs = tuple(
        tuple(int(w) for w in chunk.split(","))
        for chunk in match.group(2).split(";")[1:]
    )
    return PlumbingGraph(int(match.group(1)), legs)
