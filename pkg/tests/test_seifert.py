import warnings
from fractions import Fraction

import pytest

from tightfill.frames import INF, SL2Z, FrameError, FramedClass, Neg, Pos, Slope, V, class_slope
from tightfill.seifert import (
    FIBER,
    LISCA_E7,
    MERIDIAN,
    GrammarError,
    StdNbhdDividing,
    canonical_matrix,
    equivalent,
    euler_number,
    from_invariants,
    m1,
    m2,
    meridional_disk_data,
    normalize,
    orbifold_euler_characteristic,
    parse_invariants,
    patched_boundary_class,
    round_corners_slope,
    wall_class,
    wall_slope,
)

F = Fraction


def test_m1_uses_the_fixed_matrices():
    assert [f.matrix for f in m1().fibers] == [SL2Z(2, -1, 1, 0), SL2Z(4, 1, -1, 0), SL2Z(4, 1, -1, 0)]


def test_canonical_matrices():
    assert from_invariants([1]).fibers[0].matrix == SL2Z(1, 0, -1, 1)
    assert m2().fibers[0].matrix == SL2Z(3, 1, 2, 1)
    assert canonical_matrix(4, 1) == SL2Z(4, 1, -1, 0)


def test_from_invariants_rejects_zero_alpha():
    with pytest.raises(ZeroDivisionError):
        from_invariants([F(1, 0)])


def test_fiber_checks_first_column():
    with pytest.raises(ValueError):
        from_invariants([F(1, 4)], [SL2Z(2, -1, 1, 0)])


def test_normalize():
    assert str(normalize(m1())) == "(0; -1, 1/2, 1/4, 1/4)"
    assert str(normalize(m2())) == "(0; -1, 1/3, 1/3, 1/3)"
    assert str(normalize(from_invariants([0]))) == "(0; 0)"


def test_equivalent():
    assert equivalent(m1(), from_invariants([F(1, 4), F(-1, 2), F(1, 4)]))
    assert equivalent(m1(), from_invariants([F(1, 2), F(-3, 4), F(1, 4)]))
    assert not equivalent(m1(), from_invariants(LISCA_E7))


def test_euler_number():
    assert euler_number(m1()) == 0
    assert euler_number(m2()) == 0
    assert euler_number(from_invariants(LISCA_E7)) == F(1, 12)


def test_orbifold_euler_characteristic_of_m1_is_zero():
    assert orbifold_euler_characteristic(m1()) == 0


def test_fiber_slopes_in_solid_torus_frames():
    p = m1()
    assert [wall_slope(p, i, FIBER, V(i)) for i in (1, 2, 3)] == [Slope.of(2), Slope.of(-4), Slope.of(-4)]


def test_fiber_is_vertical_in_complement_frames():
    for p in (m1(), m2()):
        for i in (1, 2, 3):
            assert wall_slope(p, i, FIBER, Neg(i)) == INF


def test_meridian_slopes_from_outside():
    p = m1()
    assert wall_slope(p, 1, MERIDIAN, Pos(1)) == Slope.of("-1/2")
    assert wall_slope(p, 2, MERIDIAN, Pos(2)) == Slope.of("1/4")


@pytest.mark.parametrize("n2", [-1, -2, -3, -6])
def test_standard_neighborhood_dividing_slope(n2):
    s = wall_slope(m1(), 2, StdNbhdDividing(n2), Neg(2))
    assert s == Slope.of(F(-n2, 4 * n2 + 1))


def test_wall_slope_frame_must_touch_the_wall():
    with pytest.raises(FrameError):
        wall_slope(m1(), 2, FIBER, V(1))


def test_meridional_disk_data():
    p = m1()
    assert [meridional_disk_data(p, i) for i in (1, 2, 3)] == [(-2, 2), (-4, 4), (-4, 4)]
    assert meridional_disk_data(from_invariants([1, F(1, 2)]), 1) == (-1, 1)


def test_meridional_disk_data_rejects_non_vertical():
    with pytest.raises(ValueError):
        meridional_disk_data(m1(), 1, Slope.of(0))
    assert meridional_disk_data(m1(), 1, Slope.of(2)) == (-2, 2)


def test_round_corners():
    assert round_corners_slope(-1)[1] == Slope.of("-1/3")
    assert round_corners_slope(-2)[1] == Slope.of("-3/7")


def test_round_corners_flags_nonnegative_twist():
    with pytest.warns(UserWarning):
        round_corners_slope(0)


def test_round_corners_summands_add_up():
    summands, total = round_corners_slope(-4)
    assert sum((s.value() for s in summands), F(0)) == total.value()


def test_patched_boundary_class_anchor():
    p = m1()
    d1 = wall_class(p, 1, MERIDIAN, Neg(1))
    d2 = wall_class(p, 2, MERIDIAN, Neg(2))
    assert (d1.vector, d2.vector) == ((2, 1), (4, -1))
    c, mult = patched_boundary_class([(1, 2, d1), (2, 1, d2)])
    assert c == FramedClass(-4, 1, Neg(3))
    assert class_slope(c) == Slope.of("-1/4")
    assert mult == 1


def test_patched_boundary_class_accepts_pos_frames():
    p = m1()
    d1 = wall_class(p, 1, MERIDIAN, Pos(1))
    d2 = wall_class(p, 2, MERIDIAN, Neg(2))
    c, _ = patched_boundary_class([(1, 2, d1), (2, 1, d2)])
    assert c.vector == (-4, 1)


def test_patched_boundary_class_needs_matching_horizontal_parts():
    # Homology of the pants times a circle: boundary classes must share the horizontal coefficient.
    with pytest.raises(ValueError):
        patched_boundary_class([(1, 1, FramedClass(1, 0, Neg(1)))])
    with pytest.raises(ValueError):
        patched_boundary_class([(1, 1, FramedClass(2, 1, Neg(1))), (2, 1, FramedClass(4, -1, Neg(2)))])


def test_patched_boundary_class_multiplicity():
    c, mult = patched_boundary_class([(1, 3, FramedClass(2, 1, Neg(1))), (2, 1, FramedClass(6, 1, Neg(2)))])
    assert c.vector == (-6, 4)
    assert mult == 2


def test_patched_boundary_class_rejects_three_walls():
    with pytest.raises(ValueError):
        patched_boundary_class([(i, 1, FramedClass(1, 0, Neg(i))) for i in (1, 2, 3)])


@pytest.mark.parametrize("text, expected", [
    ("(0; -1, 1/2, 1/4, 1/4)", "(0; -1, 1/2, 1/4, 1/4)"),
    ("(-1/2, 1/4, 1/4)", "(0; -1, 1/2, 1/4, 1/4)"),
    ("(-2/3,1/3,1/3)", "(0; -1, 1/3, 1/3, 1/3)"),
    ("(0; 0, -1/2, 1/3, 1/4)", "(0; -1, 1/2, 1/3, 1/4)"),
])
def test_parse_invariants(text, expected):
    assert str(normalize(parse_invariants(text))) == expected


@pytest.mark.parametrize("text", ["(0; -1, 1/5", "", "(1/0)", "(0; 1/2; 1/3)", "(a, b)", "(0; 1/2, 1/3)"])
def test_parse_invariants_errors(text):
    with pytest.raises(GrammarError):
        parse_invariants(text)
