import itertools

import pytest

from tightfill.dividing import DiskDiagram, canonical_disk_diagram, enumerate_disk_diagrams, rotation_number
from tightfill.surfaces import (
    DEFAULT_STRIP,
    CurveLabel,
    GluingError,
    PatchVerdict,
    Polygon,
    StripPattern,
    annulus_surface,
    boundary_run,
    boundary_parallel_arcs,
    cap_and_check,
    cap_surface,
    capping_offsets,
    disk_surface,
    glue,
    patch_punctured_torus,
    standard_d1,
    strip_from_positions,
)


def C(n, r):
    return canonical_disk_diagram(n, r)


def patched(r):
    d1 = standard_d1()
    return patch_punctured_torus(d1, d1, C(4, r))


def test_disk_surface():
    s = disk_surface(C(4, -1))
    assert s.kind == "Disk"
    assert s.boundary_endpoint_count() == 8
    assert len(boundary_parallel_arcs(s)) == len(C(4, -1).leaves())


def test_nested_disk_outermost_arcs():
    d = DiskDiagram((7, 6, 5, 4, 3, 2, 1, 0))
    assert boundary_parallel_arcs(d) == [(0, 7), (3, 4)]
    assert len(boundary_parallel_arcs(disk_surface(d))) == 2


def test_annulus_with_traversing_arcs():
    for n in (2, 4, 6):
        a = annulus_surface(n)
        assert a.kind == "Annulus"
        assert boundary_parallel_arcs(a) == []
    with pytest.raises(ValueError):
        annulus_surface(3)


def test_torus_from_a_square():
    # vertical arcs on a square with opposite sides glued: two parallel essential curves
    d = DiskDiagram((3, 2, 1, 0), 1)
    sides = [boundary_run(4, 3, 1), (("gap", 1),), boundary_run(4, 1, 3), (("gap", 3),)]
    s = glue([Polygon("Q", d, sides)], [(("Q", 0), ("Q", 2)), (("Q", 1), ("Q", 3))])
    assert s.kind == "Torus"
    assert all(c.closed for c in s.curves())
    assert [s.classify(c) for c in s.curves()] == [CurveLabel.ESSENTIAL] * 2


def test_contractible_circle_on_a_sphere():
    a, b = DiskDiagram((1, 0), 1), DiskDiagram((1, 0), -1)
    # two disks glued along their whole boundary; b is reflected so signs match
    pa = Polygon("A", a, [(("gap", 1), ("pt", 0), ("gap", 0), ("pt", 1), ("gap", 1))])
    pb = Polygon("B", b, [(("gap", 0), ("pt", 1), ("gap", 1), ("pt", 0), ("gap", 0))])
    s = glue([pa, pb], [(("A", 0), ("B", 0))])
    assert s.kind == "Sphere"
    (c,) = s.curves()
    assert c.closed and s.classify(c) == CurveLabel.CONTRACTIBLE


@pytest.mark.parametrize("r", [-3, -1, 1, 3])
def test_patched_surface_is_a_punctured_torus(r):
    t = patched(r)
    assert t.kind == "PuncturedTorus"
    assert t.euler_characteristic == -1
    assert t.genus == 1
    assert t.boundary_endpoint_count() == 8


@pytest.mark.parametrize("r", [-1, 1, 3])
def test_bypass_when_some_disk_has_a_positive_leaf(r):
    t = patched(r)
    assert t.boundary_parallel_arcs()
    assert cap_and_check(t, C(4, -3)) == PatchVerdict.BYPASS_AVAILABLE


def test_no_bypass_from_all_negative_leaves():
    t = patched(-3)
    assert t.boundary_parallel_arcs() == []
    assert all(not c.closed for c in t.curves())


def test_capping_contradiction():
    t = patched(-3)
    d3 = C(4, -3)
    offsets = capping_offsets(t, d3)
    assert len(offsets) == 4
    for o in offsets:
        closed = cap_surface(t, d3, o)
        assert closed.kind == "Torus"
        assert closed.contractible_curves()
    assert cap_and_check(t, d3) == PatchVerdict.CONTRADICTS_TIGHTNESS


def test_capping_can_be_consistent():
    # a cap with rotation +1 only ever closes T up into essential curves
    t = patched(-3)
    cap = DiskDiagram((1, 0, 3, 2, 7, 6, 5, 4), 1)
    assert rotation_number(cap) == 1
    for o in capping_offsets(t, cap):
        closed = cap_surface(t, cap, o)
        assert {closed.classify(c) for c in closed.curves()} == {CurveLabel.ESSENTIAL}
    assert cap_and_check(t, cap) == PatchVerdict.INCONCLUSIVE


def test_every_strip_variant_agrees():
    d1 = standard_d1()
    for direction, shift, side in itertools.product((1, -1), range(4), (-1, 1)):
        strip = strip_from_positions(direction, shift, side)
        for r in (-1, 1, 3):
            assert cap_and_check(patch_punctured_torus(d1, d1, C(4, r), strip), None) == PatchVerdict.BYPASS_AVAILABLE
        t = patch_punctured_torus(d1, d1, C(4, -3), strip)
        assert cap_and_check(t, C(4, -3)) == PatchVerdict.CONTRADICTS_TIGHTNESS


def test_every_d2_patches():
    d1 = standard_d1()
    for d2 in enumerate_disk_diagrams(4):
        t = patch_punctured_torus(d1, d1, d2)
        assert t.euler_characteristic == -1 and len(t.boundary_circles) == 1


def test_degenerate_strip():
    d1 = standard_d1()
    with pytest.raises(GluingError):
        patch_punctured_torus(d1, d1, C(4, -1), StripPattern(()))
    with pytest.raises(GluingError):
        patch_punctured_torus(d1, d1, C(4, -1), StripPattern(((0, 0),) * 4))


def test_wrong_disk_sizes():
    with pytest.raises(GluingError):
        patch_punctured_torus(C(3, 0), C(2, 1), C(4, -1))


def test_cap_count_mismatch():
    with pytest.raises(GluingError):
        cap_and_check(patched(-3), C(3, 0))


def test_empty_input_is_inconclusive():
    assert cap_and_check(None, None) == PatchVerdict.INCONCLUSIVE


def test_default_strip_is_straight():
    assert DEFAULT_STRIP == StripPattern(((0, 0), (1, 0), (0, 1), (1, 1)), -1)


def test_sign_mismatch_is_rejected():
    a = Polygon.whole("A", DiskDiagram((1, 0), 1))
    b = Polygon.whole("B", DiskDiagram((1, 0), -1))
    with pytest.raises(GluingError):
        glue([a, b], [(("A", 0), ("B", 0))])


def test_summary_labels():
    s = patched(-1).summary()
    assert s["surface"] == "PuncturedTorus"
    assert "boundary-parallel" in {c["label"] for c in s["curves"]}
