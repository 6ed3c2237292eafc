"""Legendrian surgery on fibers, the Lisca list, and replayable certificates.

A certificate is a list of steps ``{op, args, output, anchor}``.  Arguments
may refer to an earlier step's output as ``"@k"``; :func:`verify` resolves
those references and recomputes every output with the public operations in
:data:`OPS`, so a certificate is checked only against the library, never
against itself.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import dividing, surfaces
from .frames import SL2Z, Frame, Slope, class_slope, convert_slope
from .seifert import (
    FIBER,
    LISCA_E6,
    LISCA_E7,
    MERIDIAN,
    SeifertPresentation,
    from_invariants,
    equivalent,
    m1,
    m2,
    meridional_disk_data,
    normalize,
    patched_boundary_class,
    wall_class,
    wall_slope,
)
from .torusbundle import mapping_torus_seifert

SCHEMA = "tightfill.certificate/1"
CONCLUSION = "not weakly symplectically semi-fillable"


class CertificateError(ValueError):
    pass


# -- surgery -----------------------------------------------------------------

def surgery_gluing_matrix() -> SL2Z:
    return SL2Z(1, 0, -1, 1)


def surgery_coefficient(t: int) -> int:
    """Legendrian surgery on a knot with twisting ``t`` is ``t - 1`` surgery."""
    return t - 1


@dataclass(frozen=True)
class SurgerySpec:
    fiber: int
    twist: int = 0


def surgery_update(twist: int) -> SL2Z:
    """Right factor applied to ``A_i``: the surgery matrix conjugated by the framing shear."""
    shear = SL2Z(1, twist, 0, 1)
    return shear.inverse() @ surgery_gluing_matrix() @ shear


def apply_legendrian_surgery(p: SeifertPresentation, s: SurgerySpec) -> SeifertPresentation:
    A = p.fiber(s.fiber).matrix
    new = A @ surgery_update(s.twist)
    if new.a <= 0:
        raise ValueError(f"surgery on fiber {s.fiber} with twist {s.twist} leaves {new}, not a Seifert fiber")
    out = p.replace(s.fiber, new)
    assert new.det == 1
    return out


def lisca_check(p: SeifertPresentation) -> bool:
    return any(equivalent(p, from_invariants(x)) for x in (LISCA_E7, LISCA_E6))


# -- JSON encodings ----------------------------------------------------------

def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def encode_presentation(p: SeifertPresentation) -> dict:
    return {
        "genus": p.genus,
        "invariants": [_frac(x) for x in p.invariants],
        "matrices": [[list(r) for r in f.matrix.rows()] for f in p.fibers],
        "normalized": str(normalize(p)),
    }


def decode_presentation(data: dict) -> SeifertPresentation:
    matrices = [SL2Z.from_rows(m) for m in data["matrices"]]
    p = from_invariants([Fraction(-m.c, m.a) for m in matrices], matrices, genus=data.get("genus", 0))
    if "invariants" in data and [_frac(x) for x in p.invariants] != list(data["invariants"]):
        raise CertificateError("presentation invariants disagree with its matrices")
    return p


def _frame(text: str) -> Frame:
    for kind in Frame.KINDS:
        if text.startswith(kind + "(") and text.endswith(")"):
            return Frame(kind, int(text[len(kind) + 1:-1]))
    raise CertificateError(f"unknown frame {text!r}")


def _which(text):
    if text in (FIBER, MERIDIAN):
        return text
    raise CertificateError(f"unknown wall class {text!r}")


# -- replayable operations ---------------------------------------------------
# Each takes decoded JSON arguments and returns a JSON value.

def _op_bundle(args):
    return encode_presentation(mapping_torus_seifert(SL2Z.from_rows(args["monodromy"])))


def _op_equivalent(args):
    return equivalent(decode_presentation(args["a"]), decode_presentation(args["b"]))


def _op_wall_slope(args):
    p = decode_presentation(args["presentation"])
    return str(wall_slope(p, args["wall"], _which(args["which"]), _frame(args["frame"])))


def _op_disk_data(args):
    tb, arcs = meridional_disk_data(decode_presentation(args["presentation"]), args["wall"])
    return {"tb": tb, "arcs": arcs}


def _op_patched(args):
    p = decode_presentation(args["presentation"])
    contributions = [
        (wall, mult, wall_class(p, wall, MERIDIAN, _frame(f"neg({wall})")))
        for wall, mult in args["disks"]
    ]
    c, mult = patched_boundary_class(contributions)
    return {"class": [c.p, c.q], "frame": str(c.frame), "slope": str(class_slope(c)), "multiplicity": mult}


def _op_rotation_values(args):
    return sorted({dividing.rotation_number(d) for d in dividing.enumerate_disk_diagrams(args["n"])})


def _diagram(spec) -> dividing.DiskDiagram:
    if "canonical" in spec:
        n, r = spec["canonical"]
        return dividing.canonical_disk_diagram(n, r)
    return dividing.DiskDiagram.from_json(spec)


def _op_patch(args):
    d1 = _diagram(args["d1"])
    t = surfaces.patch_punctured_torus(d1, d1, _diagram(args["d2"]))
    d3 = _diagram(args["d3"]) if args.get("d3") else None
    return {
        "surface": t.kind,
        "euler_characteristic": t.euler_characteristic,
        "boundary_parallel": len(t.boundary_parallel_arcs()),
        "verdict": surfaces.cap_and_check(t, d3).value,
    }


def _op_bypass(args):
    return str(dividing.attach_bypass_slope(Slope.of(args["dividing"]), Slope.of(args["ruling"])))


def _op_convert(args):
    p = decode_presentation(args["presentation"])
    wall = args["wall"]
    return str(convert_slope(Slope.of(args["slope"]), _frame(args["src"]), _frame(args["dst"]), p.gluing_map(wall)))


def _op_twist(args):
    """Twisting of the core of a standard neighborhood with dividing slope ``1/t``."""
    s = Slope.of(args["slope"])
    if s.is_infinite:
        return 0
    v = s.value()
    if v.numerator != 1:
        raise CertificateError(f"slope {s} is not of the form 1/t")
    return int(1 / v)


def _op_surgery(args):
    p = decode_presentation(args["presentation"])
    return encode_presentation(apply_legendrian_surgery(p, SurgerySpec(args["fiber"], args["twist"])))


def _op_lisca(args):
    return lisca_check(decode_presentation(args["presentation"]))


OPS = {
    "bundle.to_seifert": _op_bundle,
    "seifert.equivalent": _op_equivalent,
    "seifert.wall_slope": _op_wall_slope,
    "seifert.meridional_disk_data": _op_disk_data,
    "seifert.patched_boundary_class": _op_patched,
    "dividing.rotation_values": _op_rotation_values,
    "dividing.patch_and_cap": _op_patch,
    "dividing.attach_bypass_slope": _op_bypass,
    "frames.convert_slope": _op_convert,
    "seifert.twist_number": _op_twist,
    "pipeline.surgery": _op_surgery,
    "pipeline.lisca_check": _op_lisca,
}


def _resolve(value, outputs: list):
    if isinstance(value, str) and value.startswith("@"):
        k = int(value[1:])
        if not 0 <= k < len(outputs):
            raise CertificateError(f"reference {value} points past the current step")
        return outputs[k]
    if isinstance(value, dict):
        return {k: _resolve(v, outputs) for k, v in value.items()}
    if isinstance(value, list):
        return [_resolve(v, outputs) for v in value]
    return value


def run_step(op: str, args, outputs: list):
    if op not in OPS:
        raise CertificateError(f"unknown operation {op!r}")
    return OPS[op](_resolve(args, outputs))


# -- certificates ------------------------------------------------------------

@dataclass
class Certificate:
    input: dict
    provenance: str
    steps: list[dict]
    conclusion: str | None

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "input": self.input,
            "provenance": self.provenance,
            "steps": self.steps,
            "conclusion": self.conclusion,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        if data.get("schema") != SCHEMA:
            raise CertificateError(f"unsupported schema {data.get('schema')!r}")
        return cls(data["input"], data.get("provenance", ""), list(data["steps"]), data.get("conclusion"))


class _Builder:
    def __init__(self):
        self.steps: list[dict] = []
        self.outputs: list = []

    def add(self, op: str, args: dict, anchor: str, expect=None) -> str:
        out = run_step(op, args, self.outputs)
        if expect is not None and out != expect:
            raise CertificateError(f"{op} produced {out!r}, expected {expect!r}")
        self.steps.append({"op": op, "args": args, "output": out, "anchor": anchor})
        self.outputs.append(out)
        return f"@{len(self.outputs) - 1}"


TIGHT_M1 = (
    "Tight structure from the torus bundle with monodromy (0 1; -1 0): I-invariant neighborhoods "
    "of two convex tori with slopes 0 and infinity, glued by the monodromy; tightness by the "
    "bypass-removal induction (not recomputed)."
)
TIGHT_M2 = (
    "Tight structures from the torus bundle with monodromy (0 1; -1 -1), built as for M1; "
    "the two nonisotopic structures share this combinatorial chain. The twist of the surgered "
    "fiber is only required to be large enough after thinning; the chain uses twist 0."
)


def _m1_chain(b: _Builder, pres: dict) -> str:
    for i, slope in ((1, "2"), (2, "-4"), (3, "-4")):
        b.add("seifert.wall_slope", {"presentation": pres, "wall": i, "which": FIBER, "frame": f"V({i})"},
              "walls.fiber-slopes", slope)
    for i, tb in ((1, -2), (2, -4), (3, -4)):
        b.add("seifert.meridional_disk_data", {"presentation": pres, "wall": i},
              "walls.meridional-disks", {"tb": tb, "arcs": -tb})
    b.add("seifert.wall_slope", {"presentation": pres, "wall": 1, "which": MERIDIAN, "frame": "pos(1)"},
          "walls.disk-slopes", "-1/2")
    b.add("seifert.wall_slope", {"presentation": pres, "wall": 2, "which": MERIDIAN, "frame": "pos(2)"},
          "walls.disk-slopes", "1/4")
    patched = b.add("seifert.patched_boundary_class", {"presentation": pres, "disks": [[1, 2], [2, 1]]},
                    "patching.boundary-slope")
    b.add("dividing.rotation_values", {"n": 4}, "patching.rotation-numbers", [-3, -1, 1, 3])
    d1 = {"canonical": [2, 1]}
    for r in (3, 1, -1):
        b.add("dividing.patch_and_cap", {"d1": d1, "d2": {"canonical": [4, r]}, "d3": None},
              "patching.bypass-case", None)
    b.add("dividing.patch_and_cap", {"d1": d1, "d2": {"canonical": [4, -3]}, "d3": {"canonical": [4, -3]}},
          "patching.overtwisted-case", None)
    for step in b.steps[-4:-1]:
        if step["output"]["verdict"] != surfaces.PatchVerdict.BYPASS_AVAILABLE.value:
            raise CertificateError("expected a bypass when some meridional disk has r > -3")
    if b.steps[-1]["output"]["verdict"] != surfaces.PatchVerdict.CONTRADICTS_TIGHTNESS.value:
        raise CertificateError("expected a contradiction when both rotation numbers are -3")
    slope = b.outputs[int(patched[1:])]["slope"]
    thick = b.add("dividing.attach_bypass_slope", {"dividing": "inf", "ruling": slope}, "bypass.thicken", "0")
    product = b.add("frames.convert_slope",
                    {"presentation": pres, "wall": 3, "slope": thick, "src": "neg(3)", "dst": "product(3)"},
                    "bypass.product-frame", "inf")
    return b.add("seifert.twist_number", {"slope": product}, "bypass.twist-zero", 0)


def _finish(b: _Builder, pres, fiber: int, twist, anchor: str):
    after = b.add("pipeline.surgery", {"presentation": pres, "fiber": fiber, "twist": twist}, anchor)
    ok = b.add("pipeline.lisca_check", {"presentation": after}, "lisca.list")
    return b.outputs[int(ok[1:])]


def build_certificate(manifold, evidence: list[dict] | None = None, fiber: int | None = None,
                      variant: int = 1) -> Certificate:
    """Certificate for ``"m1"``, ``"m2"`` or a custom presentation.

    For a custom presentation ``evidence`` is a list of steps whose last
    output is the twisting number of the fiber ``fiber``; it is replayed
    before the surgery and Lisca steps are appended.
    """
    b = _Builder()
    if manifold == "m1":
        pres = encode_presentation(m1())
        bundle = b.add("bundle.to_seifert", {"monodromy": [[0, 1], [-1, 0]]}, "bundle.seifert")
        b.add("seifert.equivalent", {"a": bundle, "b": pres}, "bundle.seifert", True)
        twist = _m1_chain(b, pres)
        ok = _finish(b, pres, 3, twist, "surgery.m1")
        inp, prov = {"manifold": "m1", "presentation": pres}, TIGHT_M1
    elif manifold == "m2":
        if variant not in (1, 2):
            raise ValueError("M2 carries structure variants 1 and 2")
        pres = encode_presentation(m2())
        bundle = b.add("bundle.to_seifert", {"monodromy": [[0, 1], [-1, -1]]}, "bundle.seifert")
        b.add("seifert.equivalent", {"a": bundle, "b": pres}, "bundle.seifert", True)
        for i in (1, 2, 3):
            b.add("seifert.meridional_disk_data", {"presentation": pres, "wall": i}, "walls.meridional-disks")
        ok = _finish(b, pres, 1, 0, "surgery.m2")
        inp, prov = {"manifold": "m2", "presentation": pres, "structure": variant}, TIGHT_M2
    else:
        if not isinstance(manifold, SeifertPresentation):
            raise ValueError(f"unknown manifold {manifold!r}")
        if not evidence or fiber is None:
            raise CertificateError("a custom presentation needs twist evidence and a fiber index")
        pres = encode_presentation(manifold)
        for step in evidence:
            b.add(step["op"], step["args"], step.get("anchor", "custom"), step.get("output"))
        ok = _finish(b, pres, fiber, f"@{len(b.outputs) - 1}", "surgery.custom")
        inp, prov = {"manifold": "custom", "presentation": pres}, "supplied by caller"
    if not ok:
        raise CertificateError("surgered manifold is not on the Lisca list; no conclusion")
    return Certificate(inp, prov, b.steps, CONCLUSION)


@dataclass
class VerifyReport:
    steps: int
    mismatches: list[str]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify(cert: Certificate | dict | str) -> VerifyReport:
    """Replay every step; fails closed on any error or disagreement."""
    try:
        if isinstance(cert, str):
            cert = json.loads(cert)
        if isinstance(cert, dict):
            cert = Certificate.from_json(cert)
    except (CertificateError, KeyError, TypeError, ValueError) as exc:
        return VerifyReport(0, [f"unreadable certificate: {exc}"])
    mismatches = []
    outputs: list = []
    for k, step in enumerate(cert.steps):
        try:
            out = run_step(step["op"], step["args"], outputs)
        except Exception as exc:  # fail closed on any replay failure
            mismatches.append(f"step {k} ({step.get('op')}): {type(exc).__name__}: {exc}")
            out = None
        else:
            if out != step.get("output"):
                mismatches.append(f"step {k} ({step['op']}): recorded {step.get('output')!r}, recomputed {out!r}")
        outputs.append(out)
    if not cert.steps or cert.steps[-1].get("op") != "pipeline.lisca_check":
        mismatches.append("final step is not a Lisca check")
    elif outputs[-1] is True and cert.conclusion != CONCLUSION:
        mismatches.append(f"conclusion {cert.conclusion!r} does not match {CONCLUSION!r}")
    elif outputs[-1] is not True and cert.conclusion:
        mismatches.append("conclusion present without a Lisca match")
    surgeries = [s for s in cert.steps if s.get("op") == "pipeline.surgery"]
    if not surgeries or surgeries[0]["args"].get("presentation") != cert.input.get("presentation"):
        mismatches.append("surgery does not start from the input presentation")
    return VerifyReport(len(cert.steps), mismatches)
