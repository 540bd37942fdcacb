"""Acceptance gate: one check per criterion, each printed as a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cubic_elliptic import classify as cl
from cubic_elliptic import coxring as cx
from cubic_elliptic import varieties as va
from cubic_elliptic.cones import Cone
from cubic_elliptic.linalg import IntMatrix, snf
from cubic_elliptic.varieties import EXTREMAL_TYPES, W, VarietyType as V
from oracles import determinantal_invariants, hilbert_by_dp, positive_weight
from test_cones import corpus_cones
from test_coxring import small_degrees

RESULTS: dict[int, tuple[bool, str]] = {}

MW_TABLE = {V.X3: "0", V.XS: "0", V.XS2: "Z/2Z", V.XSSS: "Z/3Z", V.X12: "Z", V.XS11: "Z", V.X111: "Z + Z"}
PRINTED_KOSZUL = {V.X3: 66, V.XS: 53, V.XS2: 64, V.XSSS: 75}
PRINTED_FAMILIES = {
    V.X3: {("i", "n+1", "n+2"), ("i", "n", "n+4"), ("n+3", "n+4", "n+5")},
    V.XS: {("i", "n", "n+3")},
    V.XS2: {("i", "n+2", "n+4"), ("n", "n+2", "n+4")},
}


def criterion_1():
    t0 = time.perf_counter()
    got = {t: str(va.mordell_weil(t)) for t in V}
    dt = time.perf_counter() - t0
    ok = got == MW_TABLE and dt < 1
    return ok, f"{[got[t] for t in V]} in {dt:.3f}s"


def criterion_2():
    ncols = {}
    for t in (V.X3, V.XS2, V.XSSS):
        nef = Cone([va.twist(c) for c in va.mori_generators(t)]).dual()
        printed = va.printed_nef_generators(t)
        if nef != Cone(printed):
            return False, f"{t.symbol}: dual {nef.rays}"
        ncols[va.family(t)] = len(printed)
    return ncols == {"one_point": 4, "two_points": 6, "three_points": 8}, f"columns {ncols}"


def criterion_3():
    out = []
    for t in (V.X3, V.XS2):
        f = va.flop_action(t)
        flopped = va.nef_cone(t).map(f.M)
        expected = Cone([va.twist(c) for c in va.flop_dual_generators(t)]).dual()
        out.append(f.is_involution() and flopped == expected)
    return all(out), f"involution and chamber equality: {out}"


def criterion_4():
    b1 = cx.solve_beta_exponents(cx.grading_matrix(V.X3, 3)) == cx.beta_table(V.X3, 3).exponents
    b2 = cx.solve_beta_exponents(cx.grading_matrix(V.XS, 3)) == cx.beta_table(V.XS, 3).exponents
    repairs = {}
    for t in (V.XS2, V.XSSS):
        solved = cx.solve_beta_exponents(cx.grading_matrix(t, 3))
        repairs[t.value] = sum(a != b for a, b in zip(solved, cx.beta_table(t, 3).exponents))
    degs = {t.value: cx.build_presentation(t, 3).generator_degrees for t in EXTREMAL_TYPES}
    ok = b1 and b2 and all(repairs.values()) and degs["XS"] == [(3, -3, 0, 0)]
    return ok, f"beta1 {b1}, beta2 {b2}, repaired entries {repairs}, XS degree {degs['XS']}"


def criterion_5():
    t0 = time.perf_counter()
    values, ambient, stable = {}, {}, True
    for t in EXTREMAL_TYPES:
        seen = {cx.koszul_quotient_dim(cx.build_presentation(t, 3, s), W) for s in range(10)}
        stable &= len(seen) == 1
        values[t.value] = seen.pop()
        ambient[t.value] = cx.hilbert_dim(cx.grading_matrix(t, 3), W)
    dt = time.perf_counter() - t0
    expected = {t.value: v for t, v in PRINTED_KOSZUL.items()}
    ok = values == expected and stable and dt < 60
    detail = (
        f"Koszul {values} vs printed {expected}; ambient counts {ambient}; "
        f"chi(W) = {cx.euler_characteristic_w(3)}; seed-stable {stable}; {dt:.1f}s"
    )
    return ok, detail


def criterion_6():
    bad = []
    for t in EXTREMAL_TYPES:
        r = va.check_w_ample(t, strict=False)
        mov = cx.moving_cone_of_degrees(cx.grading_matrix(t, 3).columns())
        if not (r.ok and mov.contains(W)):
            bad.append(t.value)
    return not bad, f"failures {bad}"


def criterion_7():
    notes = []
    ok = True
    for n in (3, 4):
        for t in EXTREMAL_TYPES:
            r = cx.git_chamber_report(cx.build_presentation(t, n), W)
            ok &= not r.two_cones_containing_w and not r.uncertified
            if t in PRINTED_FAMILIES:
                ok &= set(r.families_found) == PRINTED_FAMILIES[t]
            elif n == 3:
                notes.append(f"X_SSS: {len(r.findings)} 3-cones hold W in their relative interior")
    return ok, "; ".join(notes) or "families match"


def criterion_8():
    bad, retried = [], 0
    for t in V:
        for n in (3, 4):
            for s in range(50):
                nf = cl.normal_form_instance(t, n, s)
                retried += any("rejected" in x for x in nf.notes)
                got = cl.classify(nf.cubic, nf.line)
                if got is not t:
                    bad.append((t.value, n, s, got.value))
    collinear = 0
    for s in range(50):
        nf = cl.normal_form_instance(V.XSSS, 3, s)
        stars = [r.point for r in cl.analyze(nf.cubic, nf.line).records if r.is_star]
        third = [r for r in cl.line_intersection(nf.cubic, cl.ProjLine(stars[0], stars[1]))
                 if r.point not in stars[:2]]
        collinear += len(third) == 1 and cl.is_star_point(nf.cubic, third[0].point)
    return not bad and collinear == 50, f"{len(bad)} misclassified, {retried} draws retried, collinearity {collinear}/50"


def criterion_9():
    out = []
    for t in EXTREMAL_TYPES:
        for n in (4, 5):
            p = cx.build_presentation(t, n)
            r = cx.restrict_to_hyperplane(p)
            out.append(r.n == n - 1 and r.Q == cx.grading_matrix(t, n - 1)
                       and r.generator_degrees == p.generator_degrees)
    return all(out), f"{sum(out)}/{len(out)} restrictions valid"


def criterion_10():
    rng = random.Random(2024)
    snf_fail = 0
    for _ in range(1000):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        A = IntMatrix(rows)
        r = snf(A)
        if not (r.U @ A @ r.V == r.D and abs(r.U.det()) == 1 and abs(r.V.det()) == 1
                and r.invariant_factors == determinantal_invariants(rows)):
            snf_fail += 1
    hil_fail, hil_count = 0, 0
    for t in EXTREMAL_TYPES:
        Q = cx.grading_matrix(t, 3)
        weight = positive_weight(Q.columns())
        degrees = small_degrees(Q, 20, seed=11)
        hil_count += len(degrees)
        hil_fail += sum(cx.hilbert_dim(Q, w) != hilbert_by_dp(Q.columns(), w, weight) for w in degrees)
    cones = corpus_cones()
    bid_fail = sum(c.dual().dual() != c for c in cones)
    ok = snf_fail == hil_fail == bid_fail == 0
    return ok, f"SNF 1000 cases {snf_fail} failures; Hilbert {hil_count} degrees {hil_fail} failures; biduality {len(cones)} cones {bid_fail} failures"


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 11)}


def record(i):
    ok, detail = CRITERIA[i]()
    RESULTS[i] = (ok, detail)
    return ok, detail


@pytest.mark.parametrize("i", sorted(CRITERIA))
def test_criterion(i):
    ok, detail = record(i)
    assert ok, detail


def summary_lines():
    return [f"criterion {i:2d}: {'PASS' if ok else 'FAIL'}  {detail}" for i, (ok, detail) in sorted(RESULTS.items())]


if __name__ == "__main__":
    for i in sorted(CRITERIA):
        record(i)
        print(f"criterion {i:2d}: {'PASS' if RESULTS[i][0] else 'FAIL'}  {RESULTS[i][1]}", flush=True)
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
