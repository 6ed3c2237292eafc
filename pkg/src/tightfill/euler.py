"""Relative Euler classes of layered toric annuli."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .frames import SL2Z, det2


class Verdict(str, Enum):
    NOT_REALIZABLE_TIGHT = "NotRealizableTight"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class RelEulerClass:
    a: int
    b: int

    @property
    def vector(self) -> tuple[int, int]:
        return (self.a, self.b)

    def __add__(self, other: "RelEulerClass") -> "RelEulerClass":
        return RelEulerClass(self.a + other.a, self.b + other.b)

    def __neg__(self) -> "RelEulerClass":
        return RelEulerClass(-self.a, -self.b)

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


ZERO = RelEulerClass(0, 0)


def basic_slice_euler(v0, v1) -> tuple[RelEulerClass, RelEulerClass]:
    """The two sign choices ``±(v1 - v0)`` for a basic slice between Farey neighbors."""
    if abs(det2(tuple(v0), tuple(v1))) != 1:
        raise ValueError(f"{tuple(v0)} and {tuple(v1)} are not Farey neighbors")
    e = RelEulerClass(v1[0] - v0[0], v1[1] - v0[1])
    return e, -e


def pushforward(A: SL2Z, e: RelEulerClass) -> RelEulerClass:
    return RelEulerClass(*(A @ e.vector))


def cover_total_euler(A: SL2Z, e: RelEulerClass, k: int) -> RelEulerClass:
    """Sum of ``A^j e`` over the ``k`` layers of the ``k``-fold cover."""
    if k <= 0:
        raise ValueError("k must be positive")
    total, layer = ZERO, e
    for _ in range(k):
        total = total + layer
        layer = pushforward(A, layer)
    return total


@dataclass(frozen=True)
class BoundaryConfig:
    """Boundary data of a layered ``T² × I`` plus the classes it provably excludes."""

    name: str
    slopes: tuple[str, str]
    rotation: str
    dividing_curves: tuple[int, int]
    excluded: frozenset = field(default_factory=frozenset)
    note: str = ""


# Only rows the double-cover argument asserts; everything else is Unknown.
HALF_TURN = BoundaryConfig(
    name="slopes-0-0-half-turn",
    slopes=("0", "0"),
    rotation="pi",
    dividing_curves=(2, 2),
    excluded=frozenset({RelEulerClass(0, 2), RelEulerClass(0, -2)}),
    note="(0,2) excluded for tight structures on the double cover; (0,-2) by reversing the coorientation",
)

CONFIGS = {HALF_TURN.name: HALF_TURN}


def obstruction_check(total: RelEulerClass, config: BoundaryConfig | str = HALF_TURN) -> Verdict:
    if isinstance(config, str):
        if config not in CONFIGS:
            raise KeyError(f"unrecognized boundary configuration {config!r}")
        config = CONFIGS[config]
    elif config.name not in CONFIGS:
        raise KeyError(f"unrecognized boundary configuration {config.name!r}")
    return Verdict.NOT_REALIZABLE_TIGHT if total in config.excluded else Verdict.UNKNOWN
