"""Acceptance criteria 1-11, one check each.

Each check prints a single PASS/FAIL line.  Run ``pytest tests/test_acceptance.py -v``
(the lines are repeated in the terminal summary) or ``python3 tests/test_acceptance.py``.
"""

from fractions import Fraction as F
from pathlib import Path

import pytest

from tightfill import euler
from tightfill.cli import main as cli_main
from tightfill.dividing import (
    attach_bypass_slope,
    canonical_disk_diagram,
    catalan,
    enumerate_disk_diagrams,
    rotation_number,
)
from tightfill.frames import INF, SL2Z, Neg, Pos, Product, Slope, V, class_slope, convert_slope
from tightfill.pipeline import CONCLUSION, SurgerySpec, apply_legendrian_surgery, build_certificate, verify
from tightfill.plumbing import E6_POSITIVE, E7_POSITIVE, boundary_seifert
from tightfill.seifert import (
    FIBER,
    MERIDIAN,
    equivalent,
    from_invariants,
    m1,
    m2,
    meridional_disk_data,
    patched_boundary_class,
    round_corners_slope,
    wall_class,
    wall_slope,
)
from tightfill.surfaces import PatchVerdict, cap_and_check, patch_punctured_torus, standard_d1
from tightfill.torusbundle import mapping_torus_seifert

RESULTS: dict[int, bool] = {}
ERRORS: dict[int, str] = {}


def c1_torus_bundles():
    a = mapping_torus_seifert(SL2Z(0, 1, -1, 0))
    b = mapping_torus_seifert(SL2Z(0, 1, -1, -1))
    return equivalent(a, from_invariants([F(-1, 2), F(1, 4), F(1, 4)])) and equivalent(
        b, from_invariants([F(-2, 3), F(1, 3), F(1, 3)])
    )


def c2_surgery_replay():
    q1 = apply_legendrian_surgery(m1(), SurgerySpec(3, 0))
    q2 = apply_legendrian_surgery(m2(), SurgerySpec(1, 0))
    return (
        m1().fiber(3).matrix == SL2Z(4, 1, -1, 0)
        and q1.fiber(3).matrix == SL2Z(3, 1, -1, 0)
        and sorted(q1.invariants) == sorted([F(-1, 2), F(1, 3), F(1, 4)])
        and sorted(q2.invariants) == sorted([F(-1, 2), F(1, 3), F(1, 3)])
    )


def c3_certificates():
    for name in ("m1", "m2"):
        cert = build_certificate(name)
        last = cert.steps[-1]
        if last["op"] != "pipeline.lisca_check" or last["output"] is not True:
            return False
        if cert.conclusion != CONCLUSION or CONCLUSION != "not weakly symplectically semi-fillable":
            return False
        report = verify(cert.dumps())
        if not report.ok or report.mismatches:
            return False
        if cli_main(["certify", name, "--json"], out=_Sink()) != 0:
            return False
    return True


def c4_plumbing():
    return equivalent(boundary_seifert(E7_POSITIVE), from_invariants([F(-1, 2), F(1, 3), F(1, 4)])) and equivalent(
        boundary_seifert(E6_POSITIVE), from_invariants([F(-1, 2), F(1, 3), F(1, 3)])
    )


def c5_slope_ledger():
    p = m1()
    walls = [wall_slope(p, i, FIBER, V(i)) for i in (1, 2, 3)]
    outer = [wall_slope(p, 1, MERIDIAN, Pos(1)), wall_slope(p, 2, MERIDIAN, Pos(2))]
    c, _ = patched_boundary_class([(1, 2, wall_class(p, 1, MERIDIAN, Neg(1))), (2, 1, wall_class(p, 2, MERIDIAN, Neg(2)))])
    disks = [meridional_disk_data(p, i) for i in (1, 2, 3)]
    return (
        walls == [Slope.of(2), Slope.of(-4), Slope.of(-4)]
        and outer == [Slope.of("-1/2"), Slope.of("1/4")]
        and class_slope(c) == Slope.of("-1/4")
        and disks == [(-2, 2), (-4, 4), (-4, 4)]
    )


def c6_corner_rounding():
    for n2 in range(-1, -7, -1):
        _, total = round_corners_slope(n2)
        if total != Slope.of(-F(2 * n2 + 1, 4 * n2 + 1)):
            return False
        if convert_slope(total, Pos(1), V(1), m1().gluing_map(1)) != Slope.of(F(1, 2 * n2 + 1)):
            return False
    return True


def c7_euler_obstruction():
    A = SL2Z(0, 1, -1, 0)
    e, _ = euler.basic_slice_euler((1, 0), (0, 1))
    return (
        e == euler.RelEulerClass(-1, 1)
        and euler.pushforward(A, e) == euler.RelEulerClass(1, 1)
        and euler.cover_total_euler(A, e, 2) == euler.RelEulerClass(0, 2)
        and euler.obstruction_check(euler.RelEulerClass(0, 2)) == euler.Verdict.NOT_REALIZABLE_TIGHT
    )


def c8_rotation_numbers():
    four = enumerate_disk_diagrams(4)
    if len(four) != 28 or {rotation_number(d) for d in four} != {-3, -1, 1, 3}:
        return False
    for n in range(1, 7):
        diagrams = enumerate_disk_diagrams(n)
        if len(diagrams) != 2 * catalan(n):
            return False
        for d in diagrams:
            r = rotation_number(d)
            if (r - n - 1) % 2 or abs(r) > n - 1:
                return False
    return True


def c9_patching_dichotomy():
    d1 = standard_d1()
    bypass = cap_and_check(patch_punctured_torus(d1, d1, canonical_disk_diagram(4, -1)), canonical_disk_diagram(4, -3))
    worst = canonical_disk_diagram(4, -3)
    contra = cap_and_check(patch_punctured_torus(d1, d1, worst), worst)
    return bypass == PatchVerdict.BYPASS_AVAILABLE and contra == PatchVerdict.CONTRADICTS_TIGHTNESS


def c10_bypass_arithmetic():
    s = attach_bypass_slope(INF, Slope.of("-1/4"))
    return s == Slope.of(0) and convert_slope(s, Neg(3), Product(3), m1().gluing_map(3)) == INF


def c11_property_suites():
    # the hypothesis suites live in test_properties.py; run the named ones here
    names = [
        "test_frame_round_trip",
        "test_sl2z_closed_under_products",
        "test_action_preserves_det_and_farey",
        "test_euler_number_invariances",
        "test_finite_order_bundles_have_zero_euler_number",
        "test_catalan_counts",
    ]
    args = ["-q", "-p", "no:cacheprovider", str(Path(__file__).with_name("test_properties.py")), "-k", " or ".join(names)]
    return pytest.main(args, plugins=[]) == 0


class _Sink:
    def write(self, _):
        pass

    def flush(self):
        pass


CRITERIA = {
    1: ("torus-bundle conversion", c1_torus_bundles),
    2: ("surgery replay", c2_surgery_replay),
    3: ("certificates verify", c3_certificates),
    4: ("plumbing boundaries", c4_plumbing),
    5: ("slope ledger", c5_slope_ledger),
    6: ("corner rounding", c6_corner_rounding),
    7: ("Euler obstruction", c7_euler_obstruction),
    8: ("rotation numbers", c8_rotation_numbers),
    9: ("patching dichotomy", c9_patching_dichotomy),
    10: ("bypass arithmetic", c10_bypass_arithmetic),
    11: ("property suites", c11_property_suites),
}


def line(n: int, ok: bool) -> str:
    text = f"criterion {n:2d} {CRITERIA[n][0]}: {'PASS' if ok else 'FAIL'}"
    return f"{text} ({ERRORS[n]})" if n in ERRORS else text


def evaluate(n: int) -> bool:
    try:
        ok = bool(CRITERIA[n][1]())
    except Exception as exc:
        ERRORS[n] = f"{type(exc).__name__}: {exc}"
        ok = False
    RESULTS[n] = ok
    return ok


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok = evaluate(n)
    with capsys.disabled():
        print(f"\n{line(n, ok)}")
    assert ok


if __name__ == "__main__":
    import sys

    results = [evaluate(n) for n in sorted(CRITERIA)]
    for n in sorted(CRITERIA):
        print(line(n, RESULTS[n]))
    sys.exit(0 if all(results) else 1)
