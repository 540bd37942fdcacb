"""End-to-end checks for one variety type, collected into a Report."""

from __future__ import annotations

from . import classify as cl
from . import coxring as cx
from . import varieties as va
from .cones import Cone
from .report import CheckRecord, Report
from .varieties import EXTREMAL_TYPES, W, VarietyType

# printed values of the W-graded piece, one per extremal type at n = 3
PRINTED_KOSZUL = {
    VarietyType.X3: 66,
    VarietyType.XS: 53,
    VarietyType.XS2: 64,
    VarietyType.XSSS: 75,
}

_FAMILY_NAME = {"one_point": "one point", "two_points": "two points", "three_points": "three points"}


def anchor(what: str, vtype=None) -> str:
    return f"{what}, {VarietyType(vtype).symbol}" if vtype is not None else what


def check_mordell_weil(vtype) -> Report:
    rep = Report("mw", {"type": VarietyType(vtype).value})
    rep.add(CheckRecord.compare(
        "Mordell-Weil group",
        str(va.printed_mordell_weil(vtype)),
        str(va.mordell_weil(vtype)),
        anchor("Mordell-Weil group table", vtype),
    ))
    return rep


def check_cones(vtype) -> Report:
    vtype = VarietyType(vtype)
    rep = Report("cones", {"type": vtype.value})
    nef = va.nef_cone(vtype, check=False)
    printed = Cone(va.printed_nef_generators(vtype))
    rep.data["mori_generators"] = va.mori_generators(vtype)
    rep.data["nef_rays"] = nef.rays
    rep.add(CheckRecord.compare(
        "nef cone = dual of Mori cone",
        printed.rays, nef.rays,
        anchor(f"nef cone matrix, blow-ups at {_FAMILY_NAME[va.family(vtype)]}"),
    ))
    if vtype in (VarietyType.X3, VarietyType.XS2):
        flop = va.flop_action(vtype)
        rep.add(CheckRecord.holds("flop matrix squares to the identity", flop.is_involution(),
                                  anchor=anchor("flop action", vtype)))
        flopped = nef.map(flop.M)
        expected = Cone([va.twist(c) for c in va.flop_dual_generators(vtype)]).dual()
        rep.add(CheckRecord.compare("flopped nef chamber", expected.rays, flopped.rays,
                                    anchor("flopped chamber", vtype)))
        u = va.chamber_union(nef, flopped)
        rep.add(CheckRecord.info("chambers share a wall and their union is convex",
                                 {"wall_dim": u.wall_dim, "convex": u.convex, "hull_rays": u.hull_rays}))
    if vtype in EXTREMAL_TYPES:
        w = va.check_w_ample(vtype, strict=False)
        rep.add(CheckRecord.holds("W pairs positively with every Mori generator", w.in_nef_interior,
                                  w.pairings, anchor("ampleness of W", vtype)))
        rep.add(CheckRecord.holds("W is the sum of four nef classes",
                                  w.decomposition_holds and w.summands_nef, w.decomposition,
                                  anchor("ampleness of W", vtype)))
    return rep


def check_coxring(vtype, n: int, seed: int) -> tuple[Report, "cx.CoxPresentation"]:
    vtype = VarietyType(vtype)
    rep = Report("coxring", {"type": vtype.value, "n": n, "seed": seed})
    p = cx.build_presentation(vtype, n, seed)
    rep.repair_notes.extend(p.repair_notes)
    rep.data["grading_matrix"] = [list(r) for r in p.Q.rows]
    rep.data["generators"] = [str(g) for g in p.generators]
    solved = p.beta.exponents
    printed = p.printed_beta.exponents
    if solved == printed:
        rep.add(CheckRecord.compare("S-exponents solved from the grading", printed, solved,
                                    anchor("S-exponent table", vtype)))
    else:
        rep.add(CheckRecord.info("S-exponents solved from the grading (repaired)", solved,
                                 anchor("S-exponent table", vtype),
                                 detail=f"printed {list(map(list, printed))}"))
    rep.add(CheckRecord.holds("generators are homogeneous", True, p.generator_degrees,
                              anchor("Cox ring generators", vtype)))
    if vtype is VarietyType.XS:
        rep.add(CheckRecord.compare("generator degree", [(3, -3, 0, 0)], p.generator_degrees,
                                    anchor("Cox ring generators", vtype)))
    rep.add(CheckRecord.compare("extracted S-monomials", p.printed_denominators, p.extracted_denominators,
                                anchor("Cox ring generators", vtype)))
    mov = cx.moving_cone_of_degrees(p.degrees)
    rep.add(CheckRecord.holds("W lies in the moving cone of the degrees", mov.contains(W),
                              anchor=anchor("ampleness of W", vtype)))
    return rep, p


def check_koszul(p: "cx.CoxPresentation") -> Report:
    rep = Report("koszul", {"type": p.vtype.value, "n": p.n, "seed": p.seed})
    value = cx.koszul_quotient_dim(p, W)
    ambient = cx.hilbert_dim(p.Q, W)
    if p.n == 3:
        rep.add(CheckRecord.compare("Koszul dimension at W", PRINTED_KOSZUL[p.vtype], value,
                                    anchor("dimension of the W-graded piece", p.vtype),
                                    detail="printed value coincides with the ambient count below"))
        rep.add(CheckRecord.info("ambient polynomial ring count at W", ambient))
    rep.add(CheckRecord.info("Euler characteristic of W (Riemann-Roch)", cx.euler_characteristic_w(p.n)))
    if p.n != 3:
        rep.add(CheckRecord.info("Koszul dimension at W", value))
    return rep


def check_git(p: "cx.CoxPresentation") -> Report:
    rep = Report("git", {"type": p.vtype.value, "n": p.n, "seed": p.seed})
    g = cx.git_chamber_report(p, W)
    a = anchor("GIT chamber of W", p.vtype)
    rep.add(CheckRecord.compare("2-subset cones containing W", [], g.two_cones_containing_w, a))
    rep.add(CheckRecord.compare("uncertified 3-subset cones", [], [f.indices for f in g.uncertified], a))
    found = sorted("{" + ", ".join(f) + "}" for f in g.families_found)
    if g.families_printed:
        printed = sorted("{" + ", ".join(f) + "}" for f in g.families_printed)
        rep.add(CheckRecord.compare("index families", printed, found, a))
    else:
        rep.add(CheckRecord.info("index families", found, a,
                                 detail=f"{len(g.findings)} 3-subset cones hold W in their relative interior"))
    for fam, certs in sorted(g.families_found.items()):
        rep.add(CheckRecord.info("certificate for {" + ", ".join(fam) + "}",
                                 [f"f_{j}^I = {t}" for j, t in certs]))
    for m in g.certificate_mismatches:
        rep.add(CheckRecord.info("printed certificate differs", m, a))
    return rep


def check_restriction(p: "cx.CoxPresentation") -> Report:
    rep = Report("restriction", {"type": p.vtype.value, "n": p.n, "seed": p.seed})
    try:
        r = cx.restrict_to_hyperplane(p)
    except cx.StructuralMismatch as exc:
        rep.add(CheckRecord.holds("restriction to T1 = 0", False, str(exc), anchor("restriction", p.vtype)))
        return rep
    rep.add(CheckRecord.compare("restricted generator degrees", p.generator_degrees, r.generator_degrees,
                                anchor("restriction", p.vtype)))
    return rep


def check_round_trip(vtype, n: int, seed: int) -> Report:
    vtype = VarietyType(vtype)
    rep = Report("classify", {"type": vtype.value, "n": n, "seed": seed})
    nf = cl.normal_form_instance(vtype, n, seed)
    rep.repair_notes.extend(nf.notes)
    got = cl.analyze(nf.cubic, nf.line)
    rep.add(CheckRecord.compare("classification of the normal form", vtype.value, got.type.value,
                                anchor("equations of the seven types", vtype)))
    rep.add(CheckRecord.info("intersection pattern", [
        {"point": list(r.point), "multiplicity": r.multiplicity, "star": r.is_star} for r in got.records
    ]))
    return rep


def verify(vtype, n: int = 3, seed: int = 0) -> Report:
    vtype = VarietyType(vtype)
    rep = Report("verify", {"type": vtype.value, "n": n, "seed": seed})
    rep.extend(check_mordell_weil(vtype), vtype.value)
    rep.extend(check_cones(vtype), vtype.value)
    if vtype in EXTREMAL_TYPES:
        sub, p = check_coxring(vtype, n, seed)
        rep.extend(sub, vtype.value)
        rep.extend(check_koszul(p), vtype.value)
        rep.extend(check_git(p), vtype.value)
        if n > 3:
            rep.extend(check_restriction(p), vtype.value)
    rep.extend(check_round_trip(vtype, n, seed), vtype.value)
    return rep


def verify_all(n: int = 3, seed: int = 0) -> Report:
    rep = Report("verify", {"type": "all", "n": n, "seed": seed})
    for t in VarietyType:
        sub = verify(t, n, seed)
        rep.records.extend(sub.records)
        rep.repair_notes.extend(f"{t.value}: {x}" for x in sub.repair_notes)
    return rep
