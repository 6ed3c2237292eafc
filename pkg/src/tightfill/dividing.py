"""Dividing sets on convex disks as signed non-crossing chord diagrams.

A diagram with ``n`` dividing arcs has ``2n`` endpoints on the boundary circle,
numbered ``0 .. 2n-1`` counterclockwise.  Gap ``j`` is the boundary interval
from point ``j`` to point ``j+1``; ``base_sign`` is the sign of the region
containing gap 0 and signs alternate from gap to gap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb

from .frames import Slope, det2

MAX_ENUMERATION = 8


@dataclass(frozen=True)
class DiskDiagram:
    matching: tuple[int, ...]
    base_sign: int = 1

    def __post_init__(self):
        m = tuple(self.matching)
        object.__setattr__(self, "matching", m)
        size = len(m)
        if size == 0 or size % 2:
            raise ValueError("a disk diagram needs an even, positive number of endpoints")
        if self.base_sign not in (1, -1):
            raise ValueError("base_sign must be +1 or -1")
        for i, j in enumerate(m):
            if not 0 <= j < size or j == i or m[j] != i:
                raise ValueError(f"{m} is not a perfect matching")
        for i, j in self.arcs:
            for k, l in self.arcs:
                if i < k < j < l:
                    raise ValueError(f"arcs ({i},{j}) and ({k},{l}) cross")

    @property
    def n(self) -> int:
        return len(self.matching) // 2

    @property
    def arcs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.matching) if i < j]

    def gap_sign(self, g: int) -> int:
        return self.base_sign if g % 2 == 0 else -self.base_sign

    @cached_property
    def gap_region(self) -> tuple[int, ...]:
        """Region label for each gap; walking gap g reaches gap ``partner(g+1)``."""
        size = len(self.matching)
        label = [-1] * size
        count = 0
        for start in range(size):
            if label[start] >= 0:
                continue
            g = start
            while label[g] < 0:
                label[g] = count
                g = self.matching[(g + 1) % size]
            count += 1
        return tuple(label)

    def regions(self) -> list[tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for g, r in enumerate(self.gap_region):
            out.setdefault(r, []).append(g)
        return [tuple(v) for _, v in sorted(out.items())]

    def region_sign(self, r: int) -> int:
        return self.gap_sign(self.gap_region.index(r))

    def arc_sides(self, arc: tuple[int, int]) -> tuple[int, int]:
        """Regions on either side of an arc: (inside gaps i..j-1, outside)."""
        i, j = arc
        return self.gap_region[i], self.gap_region[(j) % len(self.matching)]

    def leaves(self) -> list[int]:
        """Regions cut off by a single arc (∂-parallel half-disks)."""
        return [k for k, gaps in enumerate(self.regions()) if len(gaps) == 1]

    def to_json(self) -> dict:
        return {"matching": list(self.matching), "base_sign": self.base_sign}

    @classmethod
    def from_json(cls, data: dict) -> "DiskDiagram":
        return cls(tuple(data["matching"]), int(data["base_sign"]))


def _matchings(points: tuple[int, ...]):
    if not points:
        yield {}
        return
    first = points[0]
    for k in range(1, len(points), 2):
        inner, outer = points[1:k], points[k + 1:]
        for a in _matchings(inner):
            for b in _matchings(outer):
                m = {first: points[k], points[k]: first}
                m.update(a)
                m.update(b)
                yield m


def enumerate_disk_diagrams(n: int) -> list[DiskDiagram]:
    """All non-crossing matchings on ``2n`` points, each with both base signs."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_ENUMERATION:
        raise ValueError(f"n={n} exceeds the enumeration bound {MAX_ENUMERATION}")
    out = []
    for m in _matchings(tuple(range(2 * n))):
        match = tuple(m[i] for i in range(2 * n))
        out.extend(DiskDiagram(match, s) for s in (1, -1))
    return out


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def rotation_number(d: DiskDiagram) -> int:
    """``χ(D_+) - χ(D_-)``; every region of a disk diagram is a disk."""
    return sum(d.region_sign(r) for r in range(len(d.regions())))


def _realize_tree(adjacency: dict[int, list[int]], root: int, signs: dict[int, int]) -> DiskDiagram:
    """Embed a planar region tree as a chord diagram by walking around it."""
    points: list[int] = []  # edge id per boundary point
    gaps: list[int] = []  # region owning the gap after each point
    edge_ids: dict[frozenset, int] = {}

    def walk(node: int, parent: int | None):
        for child in adjacency[node]:
            if child == parent:
                continue
            eid = edge_ids.setdefault(frozenset((node, child)), len(edge_ids))
            points.append(eid)
            gaps.append(child)
            walk(child, node)
            points.append(eid)
            gaps.append(node)

    walk(root, None)
    size = len(points)
    first: dict[int, int] = {}
    matching = [0] * size
    for idx, eid in enumerate(points):
        if eid in first:
            matching[idx], matching[first[eid]] = first[eid], idx
        else:
            first[eid] = idx
    return DiskDiagram(tuple(matching), signs[gaps[0]])


def canonical_disk_diagram(n: int, r: int) -> DiskDiagram:
    """Representative with rotation number ``r`` carrying the most ∂-parallel arcs.

    Two adjacent hub regions of opposite sign; the remaining positive regions
    hang off the negative hub and the remaining negative ones off the positive
    hub.  For ``(4, -1)`` this has a positive ∂-parallel region.
    """
    if n < 1 or abs(r) > n - 1 or (r - n - 1) % 2:
        raise ValueError(f"no disk diagram with {n} arcs and rotation number {r}")
    pos = (n + 1 + r) // 2
    neg = (n + 1 - r) // 2
    hub_p, hub_n = 0, 1
    adjacency: dict[int, list[int]] = {hub_p: [hub_n], hub_n: [hub_p]}
    signs = {hub_p: 1, hub_n: -1}
    nxt = 2
    for _ in range(pos - 1):
        adjacency[hub_n].append(nxt)
        adjacency[nxt] = [hub_n]
        signs[nxt] = 1
        nxt += 1
    for _ in range(neg - 1):
        adjacency[hub_p].append(nxt)
        adjacency[nxt] = [hub_p]
        signs[nxt] = -1
        nxt += 1
    d = _realize_tree(adjacency, hub_p, signs)
    assert d.n == n and rotation_number(d) == r
    return d


def disk_boundary_parallel_arcs(d: DiskDiagram) -> list[tuple[int, int]]:
    size = len(d.matching)
    return [(i, j) for i, j in d.arcs if j == i + 1 or (i == 0 and j == size - 1)]


def imbalance_check(endpoints_left: int, endpoints_right: int) -> bool:
    """True when unequal endpoint counts force a ∂-parallel arc on an annulus."""
    if endpoints_left % 2 or endpoints_right % 2:
        raise ValueError("endpoint counts must be even")
    if endpoints_left < 0 or endpoints_right < 0 or endpoints_left + endpoints_right == 0:
        raise ValueError("need at least one endpoint")
    return endpoints_left != endpoints_right


@dataclass(frozen=True)
class PantsConfig:
    """Isotopy class of a ∂-parallel-free arc system on a pair of pants.

    ``across[(i, j)]`` counts arcs joining boundaries ``i`` and ``j``;
    ``loops[i]`` counts arcs from boundary ``i`` to itself that separate the
    other two boundaries.
    """

    across: tuple[tuple[tuple[int, int], int], ...]
    loops: tuple[tuple[int, int], ...]
    sign: int | None = None


def pants_admissible_configs(m1: int, m2: int, m3: int, signed: bool = False) -> list[PantsConfig]:
    ms = (m1, m2, m3)
    if any(m % 2 or m < 0 for m in ms):
        raise ValueError("endpoint counts must be even and non-negative")
    configs = []
    # Arcs joining distinct boundaries: solvable iff the triangle inequalities hold.
    x12, x13, x23 = (m1 + m2 - m3) // 2, (m1 + m3 - m2) // 2, (m2 + m3 - m1) // 2
    if min(x12, x13, x23) >= 0:
        configs.append(PantsConfig((((1, 2), x12), ((1, 3), x13), ((2, 3), x23)), ((1, 0), (2, 0), (3, 0))))
    else:
        # One boundary is too heavy; its extra endpoints pair into separating loops.
        i = max(range(3), key=lambda k: ms[k])
        j, k = [t for t in range(3) if t != i]
        y = (ms[i] - ms[j] - ms[k]) // 2
        across = {(1, 2): 0, (1, 3): 0, (2, 3): 0}
        across[tuple(sorted((i + 1, j + 1)))] = ms[j]
        across[tuple(sorted((i + 1, k + 1)))] = ms[k]
        loops = tuple((t + 1, y if t == i else 0) for t in range(3))
        configs.append(PantsConfig(tuple(sorted(across.items())), loops))
    if sum(ms) == 0:
        return []
    if signed:
        return [PantsConfig(c.across, c.loops, s) for c in configs for s in (1, -1)]
    return configs


def attach_bypass_slope(dividing, ruling) -> Slope:
    """Dividing slope after attaching a bypass along a ruling curve.

    Moving counterclockwise (increasing slope, through ∞) from the ruling slope
    towards the dividing slope, the first Farey neighbor of the dividing slope
    reached is the new dividing slope.
    """
    s, r = Slope.of(dividing), Slope.of(ruling)
    if s == r:
        raise ValueError("ruling slope equals dividing slope")
    R, S = r.lift(), s.lift()
    D = det2(R, S)
    if D < 0:
        S, D = (-S[0], -S[1]), -D
    # v0 with det(v0, S) = 1
    g, x, y = _ext_gcd(S[1], -S[0])
    assert g == 1
    v0 = (x, y)
    num = det2(R, v0)
    k = (-num) // D + 1  # smallest k with det(R, v0 + kS) > 0
    U = (v0[0] + k * S[0], v0[1] + k * S[1])
    return Slope.from_class(*U)


def twist_number_bypass(t: int) -> Slope:
    """Standard neighborhood with dividing slope ``1/t`` after a meridional bypass."""
    return attach_bypass_slope(Slope(1, t), Slope(0, 1))


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``a*x + b*y = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0
