"""Convex surfaces assembled from disk diagrams glued along boundary sides.

Every piece is a polygon carrying a chord diagram.  Its boundary circle is cut
into *sides*; a side is a run of pieces ``("gap", g)`` and ``("pt", i)`` that
starts and ends inside a gap.  Gluing two sides identifies them with reversed
orientation, continuing dividing curves across matched points and merging
regions across matched gaps.  Unglued sides make up the boundary.

Regions are unions of polygon faces, so their Euler characteristic is
``faces - glued gap pieces + interior corners``; the same count over whole
polygons gives the Euler characteristic of the surface.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .dividing import DiskDiagram, canonical_disk_diagram, disk_boundary_parallel_arcs

Piece = tuple[str, int]
SideRef = tuple[str, int]


class GluingError(ValueError):
    pass


class _DSU:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def groups(self) -> list[list]:
        out: dict = {}
        for x in list(self.parent):
            out.setdefault(self.find(x), []).append(x)
        return sorted((sorted(v) for v in out.values()), key=lambda g: g[0])


def boundary_run(size: int, start_gap: int, end_gap: int) -> tuple[Piece, ...]:
    """Pieces from inside ``start_gap`` counterclockwise to inside ``end_gap``.

    ``start_gap == end_gap`` runs once around the whole circle.
    """
    pieces: list[Piece] = [("gap", start_gap)]
    g = start_gap
    while True:
        g = (g + 1) % size
        pieces.append(("pt", g))
        pieces.append(("gap", g))
        if g == end_gap:
            return tuple(pieces)


@dataclass
class Polygon:
    name: str
    diagram: DiskDiagram
    sides: list[tuple[Piece, ...]]

    def __post_init__(self):
        self.sides = [tuple(s) for s in self.sides]
        flat: list[Piece] = []
        for side in self.sides:
            if not side or side[0][0] != "gap" or side[-1][0] != "gap":
                raise GluingError(f"{self.name}: sides must begin and end inside a gap")
            if flat and flat[-1] != side[0]:
                raise GluingError(f"{self.name}: consecutive sides do not share a gap")
            flat.extend(side if not flat else side[1:])
        if flat[0] != flat[-1]:
            raise GluingError(f"{self.name}: sides do not close up")
        pts = [i for kind, i in flat if kind == "pt"]
        size = len(self.diagram.matching)
        start = pts[0] if pts else 0
        if pts != [(start + k) % size for k in range(size)]:
            raise GluingError(f"{self.name}: sides do not traverse the boundary once")

    @classmethod
    def whole(cls, name: str, diagram: DiskDiagram) -> "Polygon":
        return cls(name, diagram, [boundary_run(len(diagram.matching), 0, 0)])


@dataclass(frozen=True)
class Curve:
    """A dividing-curve component; arcs have two ``free_ends``, closed curves none."""

    ident: int
    arcs: tuple[tuple[str, tuple[int, int]], ...]
    free_ends: tuple[tuple[str, int], ...]
    regions: tuple[int, int]  # (positive side, negative side)

    @property
    def closed(self) -> bool:
        return not self.free_ends


class CurveLabel(str, Enum):
    ARC = "arc"
    BOUNDARY_PARALLEL = "boundary-parallel"
    CONTRACTIBLE = "contractible"
    ESSENTIAL = "essential"


_KINDS = {(1, 1): "Disk", (0, 2): "Annulus", (-1, 3): "PairOfPants", (-1, 1): "PuncturedTorus", (0, 0): "Torus", (2, 0): "Sphere"}


@dataclass
class SurfaceDiagram:
    """A glued surface with its dividing set; build with :func:`glue`."""

    polygons: dict[str, Polygon]
    gluings: list[tuple[SideRef, SideRef]]
    _data: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._analyse()

    def free_sides(self) -> list[SideRef]:
        used = {s for pair in self.gluings for s in pair}
        return [(n, k) for n, p in self.polygons.items() for k in range(len(p.sides)) if (n, k) not in used]

    def _next_side(self, ref: SideRef) -> SideRef:
        return (ref[0], (ref[1] + 1) % len(self.polygons[ref[0]].sides))

    def _analyse(self):
        partner = {}
        for a, b in self.gluings:
            partner[a], partner[b] = b, a
        faces, points, corners = _DSU(), _DSU(), _DSU()
        for name, poly in self.polygons.items():
            d = poly.diagram
            for r in range(len(d.regions())):
                faces.find((name, r))
            for i, j in d.arcs:
                points.union((name, i), (name, j))
            for k in range(len(poly.sides)):
                corners.find((name, k))

        glued_gaps: list[tuple[str, int]] = []
        glued_pts = set()
        for a, b in self.gluings:
            pa, pb = self.polygons[a[0]], self.polygons[b[0]]
            sa, sb = pa.sides[a[1]], pb.sides[b[1]][::-1]
            if len(sa) != len(sb) or any(x[0] != y[0] for x, y in zip(sa, sb)):
                raise GluingError(f"endpoint mismatch gluing {a} to {b}")
            for (kind, ia), (_, ib) in zip(sa, sb):
                if kind == "pt":
                    points.union((a[0], ia), (b[0], ib))
                    glued_pts.update({(a[0], ia), (b[0], ib)})
                else:
                    if pa.diagram.gap_sign(ia) != pb.diagram.gap_sign(ib):
                        raise GluingError(f"sign mismatch gluing {a} to {b}")
                    faces.union((a[0], pa.diagram.gap_region[ia]), (b[0], pb.diagram.gap_region[ib]))
                    glued_gaps.append((a[0], pa.diagram.gap_region[ia]))
            corners.union(a, self._next_side(b))
            corners.union(self._next_side(a), b)

        face_region = {}
        for reg, members in enumerate(faces.groups()):
            for f in members:
                face_region[f] = reg
        sign = {}
        for (name, r), reg in face_region.items():
            sign[reg] = self.polygons[name].diagram.region_sign(r)

        # corner (name, k) sits at the start of side k; interior unless it touches a free side
        free = set(self.free_sides())
        interior = []
        for members in corners.groups():
            if not any(m in free or (m[0], (m[1] - 1) % len(self.polygons[m[0]].sides)) in free for m in members):
                interior.append(members[0])
        chi = {reg: 0 for reg in sign}
        for reg in face_region.values():
            chi[reg] += 1
        for f in glued_gaps:
            chi[face_region[f]] -= 1
        for name, k in interior:
            poly = self.polygons[name]
            chi[face_region[(name, poly.diagram.gap_region[poly.sides[k][0][1]])]] += 1

        curves = []
        for ident, members in enumerate(points.groups()):
            arcs, sides = [], set()
            for name, i in members:
                d = self.polygons[name].diagram
                if i < d.matching[i]:
                    arc = (i, d.matching[i])
                    arcs.append((name, arc))
                    sides.update(face_region[(name, r)] for r in d.arc_sides(arc))
            ends = tuple(m for m in members if m not in glued_pts)
            pos = [r for r in sides if sign[r] > 0]
            neg = [r for r in sides if sign[r] < 0]
            if len(pos) != 1 or len(neg) != 1:
                raise GluingError(f"dividing curve {arcs} does not separate one + and one - region")
            curves.append(Curve(ident, tuple(arcs), ends, (pos[0], neg[0])))

        circles, seen = [], set()
        for start in self.free_sides():
            if start in seen:
                continue
            circle, cur = [], start
            while cur not in seen:
                seen.add(cur)
                circle.append(cur)
                nxt = self._next_side(cur)
                while nxt in partner:
                    nxt = self._next_side(partner[nxt])
                cur = nxt
            circles.append(circle)

        boundary_regions = set()
        for name, k in free:
            poly = self.polygons[name]
            for kind, g in poly.sides[k]:
                if kind == "gap":
                    boundary_regions.add(face_region[(name, poly.diagram.gap_region[g])])

        self._data = dict(
            face_region=face_region,
            sign=sign,
            chi=chi,
            curves=curves,
            euler=len(self.polygons) - len(self.gluings) + len(interior),
            circles=circles,
            boundary_regions=boundary_regions,
        )

    # -- topology ----------------------------------------------------------

    @property
    def euler_characteristic(self) -> int:
        return self._data["euler"]

    @property
    def boundary_circles(self) -> list[list[SideRef]]:
        return self._data["circles"]

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic - len(self.boundary_circles)) // 2

    @property
    def kind(self) -> str:
        return _KINDS.get((self.euler_characteristic, len(self.boundary_circles)), "Surface")

    # -- dividing set ------------------------------------------------------

    def curves(self) -> list[Curve]:
        return self._data["curves"]

    def region_signs(self) -> dict[int, int]:
        return self._data["sign"]

    def region_chi(self) -> dict[int, int]:
        return self._data["chi"]

    def boundary_endpoint_count(self) -> int:
        return sum(len(c.free_ends) for c in self.curves())

    def _side_of(self, c: Curve, region: int) -> set[int]:
        dsu = _DSU()
        for r in self.region_signs():
            dsu.find(r)
        for other in self.curves():
            if other.ident != c.ident:
                dsu.union(*other.regions)
        root = dsu.find(region)
        return {r for r in self.region_signs() if dsu.find(r) == root}

    def _piece_chi(self, regions: set[int]) -> int:
        chi = self.region_chi()
        total = sum(chi[r] for r in regions)
        for c in self.curves():
            if not c.closed and c.regions[0] in regions:
                total -= 1
        return total

    def _circles_in(self, regions: set[int]) -> int:
        fr = self._data["face_region"]
        count = 0
        for circle in self.boundary_circles:
            name, k = circle[0]
            poly = self.polygons[name]
            if fr[(name, poly.diagram.gap_region[poly.sides[k][0][1]])] in regions:
                count += 1
        return count

    def classify(self, c: Curve) -> CurveLabel:
        if not c.closed:
            return CurveLabel.BOUNDARY_PARALLEL if self._arc_cuts_half_disk(c) else CurveLabel.ARC
        pos_side = self._side_of(c, c.regions[0])
        if c.regions[1] in pos_side:
            return CurveLabel.ESSENTIAL  # non-separating
        neg_side = self._side_of(c, c.regions[1])
        for side in (pos_side, neg_side):
            if self._piece_chi(side) == 1:
                return CurveLabel.CONTRACTIBLE
        for side in (pos_side, neg_side):
            if self._piece_chi(side) == 0 and self._circles_in(side) == 1:
                return CurveLabel.BOUNDARY_PARALLEL
        return CurveLabel.ESSENTIAL

    def _arc_cuts_half_disk(self, c: Curve) -> bool:
        chi = self.region_chi()
        for r in c.regions:
            touching = [d for d in self.curves() if r in d.regions]
            if len(touching) == 1 and chi[r] == 1:
                return True
        return False

    def boundary_parallel_arcs(self) -> list[Curve]:
        return [c for c in self.curves() if not c.closed and self._arc_cuts_half_disk(c)]

    def contractible_curves(self) -> list[Curve]:
        return [c for c in self.curves() if c.closed and self.classify(c) == CurveLabel.CONTRACTIBLE]

    def summary(self) -> dict:
        return {
            "surface": self.kind,
            "euler_characteristic": self.euler_characteristic,
            "boundary_components": len(self.boundary_circles),
            "boundary_endpoints": self.boundary_endpoint_count(),
            "curves": [
                {
                    "arcs": [[name, list(arc)] for name, arc in c.arcs],
                    "closed": c.closed,
                    "label": self.classify(c).value,
                }
                for c in self.curves()
            ],
        }


def glue(polygons, gluings) -> SurfaceDiagram:
    polys = {p.name: p for p in polygons}
    if len(polys) != len(polygons):
        raise GluingError("polygon names must be unique")
    used = set()
    for pair in gluings:
        for name, k in pair:
            if (name, k) in used:
                raise GluingError(f"side {(name, k)} glued twice")
            if name not in polys or not 0 <= k < len(polys[name].sides):
                raise GluingError(f"no side {(name, k)}")
            used.add((name, k))
    return SurfaceDiagram(polys, [tuple(map(tuple, p)) for p in gluings])


def disk_surface(d: DiskDiagram) -> SurfaceDiagram:
    return glue([Polygon.whole("D", d)], [])


def annulus_surface(n: int) -> SurfaceDiagram:
    """Annulus whose ``n`` dividing arcs all run from one boundary to the other."""
    if n < 2 or n % 2:
        raise ValueError("an annulus with traversing arcs needs an even, positive count")
    size = 2 * n
    d = DiskDiagram(tuple(size - 1 - i for i in range(size)), 1)
    sides = [
        boundary_run(size, size - 1, n - 1),  # bottom: points 0..n-1
        (("gap", n - 1),),
        boundary_run(size, n - 1, size - 1),  # top
        (("gap", size - 1),),
    ]
    return glue([Polygon("R", d, sides)], [(("R", 1), ("R", 3))])


def boundary_parallel_arcs(d) -> list:
    """∂-parallel arcs of a disk diagram (as endpoint pairs) or of a glued surface."""
    if isinstance(d, DiskDiagram):
        return disk_boundary_parallel_arcs(d)
    return d.boundary_parallel_arcs()


# -- the patched punctured torus ---------------------------------------------

class PatchVerdict(str, Enum):
    BYPASS_AVAILABLE = "BypassAvailable"
    CONTRADICTS_TIGHTNESS = "ContradictsTightness"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class StripPattern:
    """How the four bands of ``δ × [0,1]`` meet the disks.

    ``slots[k] = (copy, leaf)`` sends the ``k``-th positive gap of ``D₂``
    (counterclockwise from gap 0) to the ``leaf``-th positive gap of copy
    ``copy`` of ``D₁``.  With ``side = -1`` each band's dividing arc starts at
    the first endpoint of the ``D₂`` gap and ends at the last endpoint of the
    ``D₁`` gap; ``side = +1`` is the mirror choice.
    """

    slots: tuple[tuple[int, int], ...]
    side: int = -1

    def validate(self, d2_gaps: int, d1_gaps: int) -> None:
        if len(self.slots) != d2_gaps:
            raise GluingError(f"strip has {len(self.slots)} bands but D2 has {d2_gaps} positive gaps")
        if sorted(self.slots) != sorted((c, l) for c in (0, 1) for l in range(d1_gaps)):
            raise GluingError("strip does not use every positive gap of the D1 copies exactly once")
        if self.side not in (1, -1):
            raise GluingError("side must be +1 or -1")


def strip_from_positions(direction: int, shift: int, side: int = -1) -> StripPattern:
    """Bands as straight strips across the positive annulus.

    The ``k``-th positive gap of ``D₂`` crosses the annulus at position
    ``direction * k (mod 4)``; leaf ``l`` of copy ``c`` at ``2l + c + shift``.
    """
    where = {(2 * l + c + shift) % 4: (c, l) for c in (0, 1) for l in (0, 1)}
    return StripPattern(tuple(where[(direction * k) % 4] for k in range(4)), side)


# Frozen pattern; see the decisions log for how it was selected.
DEFAULT_STRIP = strip_from_positions(1, 0, -1)


def _positive_gaps(d: DiskDiagram) -> list[int]:
    return [g for g in range(len(d.matching)) if d.gap_sign(g) > 0]


def _disk_with_bands(name: str, d: DiskDiagram, gaps: list[int], start: bool) -> tuple[Polygon, dict[int, int]]:
    """Cut ``d``'s boundary so each listed gap gets a band side.

    The band side covers the first endpoint of the gap when ``start`` and the
    last one otherwise.  Returns the polygon and a map gap -> side index.
    """
    size = len(d.matching)
    cuts = sorted((g if start else (g + 1) % size, g) for g in gaps)
    sides: list[tuple[Piece, ...]] = []
    index: dict[int, int] = {}
    for k, (p, g) in enumerate(cuts):
        before, after = (p - 1) % size, p
        index[g] = len(sides)
        sides.append((("gap", before), ("pt", p), ("gap", after)))
        nxt_before = (cuts[(k + 1) % len(cuts)][0] - 1) % size
        if after != nxt_before:
            sides.append(boundary_run(size, after, nxt_before))
        else:
            sides.append((("gap", after),))
    return Polygon(name, d, sides), index


def _band(name: str, base_sign: int) -> Polygon:
    # point 0 sits on the D2 end, point 1 on the D1 end; gap 0 runs along free side A
    d = DiskDiagram((1, 0), base_sign)
    return Polygon(name, d, [
        (("gap", 1), ("pt", 0), ("gap", 0)),  # L: glued to D2
        (("gap", 0),),  # A
        (("gap", 0), ("pt", 1), ("gap", 1)),  # R: glued to a D1 copy
        (("gap", 1),),  # B
    ])


def patch_punctured_torus(d11: DiskDiagram, d12: DiskDiagram, d2: DiskDiagram,
                          strip: StripPattern = DEFAULT_STRIP) -> SurfaceDiagram:
    """``T = D₁₁ ∪ D₁₂ ∪ D₂ ∪ (δ × [0,1])`` with corners rounded."""
    if d11.n != 2 or d12.n != 2 or d2.n != 4:
        raise GluingError("expects two 2-arc copies of D1 and a 4-arc D2")
    gaps2 = _positive_gaps(d2)
    copies = (d11, d12)
    leaves = [_positive_gaps(d) for d in copies]
    strip.validate(len(gaps2), 2)
    d2_start = strip.side < 0
    poly2, idx2 = _disk_with_bands("D2", d2, gaps2, d2_start)
    polys = [poly2]
    idx1 = []
    for c, d in enumerate(copies):
        p, idx = _disk_with_bands(f"D1{c + 1}", d, leaves[c], not d2_start)
        polys.append(p)
        idx1.append(idx)
    gluings = []
    for k, (c, l) in enumerate(strip.slots):
        band = _band(f"S{k}", strip.side)
        polys.append(band)
        gluings.append(((band.name, 0), ("D2", idx2[gaps2[k]])))
        gluings.append(((band.name, 2), (f"D1{c + 1}", idx1[c][leaves[c][l]])))
    t = glue(polys, gluings)
    if t.euler_characteristic != -1 or len(t.boundary_circles) != 1:
        raise GluingError(f"strip pattern produced a {t.kind}, not a punctured torus")
    return t


def cap_surface(t: SurfaceDiagram, d3: DiskDiagram, offset: int) -> SurfaceDiagram:
    """Glue ``d3`` onto the single boundary circle of ``t``.

    Boundary point number ``j`` (counting along the circle) meets point
    ``offset - j`` of ``d3``.
    """
    if len(t.boundary_circles) != 1:
        raise GluingError("capping needs exactly one boundary circle")
    size = len(d3.matching)
    if t.boundary_endpoint_count() != size:
        raise GluingError(f"boundary has {t.boundary_endpoint_count()} endpoints but the cap has {size}")
    circle = t.boundary_circles[0]
    mapped = []
    j = 0
    for name, k in circle:
        out = []
        for kind, _ in t.polygons[name].sides[k]:
            if kind == "pt":
                out.append(("pt", (offset - j) % size))
                j += 1
            else:
                out.append(("gap", (offset - j) % size))
        if out[-1][0] == "gap" and out[-1] != ("gap", (offset - j) % size):
            raise GluingError("internal: boundary walk lost count")
        mapped.append(out)
    sides = [tuple(reversed(s)) for s in reversed(mapped)]
    cap = Polygon("D3", d3, sides)
    n = len(sides)
    gluings = [(("D3", n - 1 - i), ref) for i, ref in enumerate(circle)]
    return glue(list(t.polygons.values()) + [cap], list(t.gluings) + gluings)


def capping_offsets(t: SurfaceDiagram, d3: DiskDiagram) -> list[int]:
    """Rotations of ``d3`` whose region signs agree with the boundary of ``t``."""
    out = []
    for offset in range(len(d3.matching)):
        try:
            cap_surface(t, d3, offset)
        except GluingError:
            continue
        out.append(offset)
    return out


def cap_and_check(t: SurfaceDiagram | None, d3: DiskDiagram | None) -> PatchVerdict:
    """Bypass / Giroux-criterion verdict for a patched punctured torus and a cap.

    A contractible closed curve on ``t`` is a contradiction; otherwise a
    ∂-parallel arc gives a bypass; otherwise the cap is glued in every
    sign-compatible rotation and a contradiction is reported only when every
    rotation yields a contractible closed curve.
    """
    if t is None or not t.curves():
        return PatchVerdict.INCONCLUSIVE
    if t.contractible_curves():
        return PatchVerdict.CONTRADICTS_TIGHTNESS
    if t.boundary_parallel_arcs():
        return PatchVerdict.BYPASS_AVAILABLE
    if d3 is None:
        return PatchVerdict.INCONCLUSIVE
    if t.boundary_endpoint_count() != len(d3.matching):
        raise GluingError(f"boundary has {t.boundary_endpoint_count()} endpoints but the cap has {len(d3.matching)}")
    offsets = capping_offsets(t, d3)
    if offsets and all(cap_surface(t, d3, o).contractible_curves() for o in offsets):
        return PatchVerdict.CONTRADICTS_TIGHTNESS
    return PatchVerdict.INCONCLUSIVE


def standard_d1() -> DiskDiagram:
    """``D₁`` with two positive regions and one negative region."""
    return canonical_disk_diagram(2, 1)
