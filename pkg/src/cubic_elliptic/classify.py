"""Classify a cubic hypersurface and a line by the type of the blow-up.

The line meets the cubic in a degree-3 scheme.  Its multiplicity pattern
together with the star flags of the intersection points decides the type:

========  ===============================  ======
pattern   star points                      type
========  ===============================  ======
(3)       the point is a star point        XS
(3)       not a star point                 X3
(2, 1)    the simple point is a star point XS2
(2, 1)    the simple point is not          X12
(1,1,1)   0 / 1 / 3 star points            X111 / XS11 / XSSS
========  ===============================  ======

Only rational intersection points are handled.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Optional, Sequence

from .coxring import draw_admissible
from .linalg import rank
from .polynom import MultiPoly, VariableContext, parse_poly
from .varieties import VarietyType

__all__ = [
    "CubicHypersurface",
    "ProjLine",
    "IntersectionRecord",
    "LocalForm",
    "Classification",
    "NormalForm",
    "LineContainedInY",
    "IrrationalIntersection",
    "SingularPoint",
    "PointNotOnY",
    "InconsistentStarPattern",
    "ClassifierInputError",
    "x_context",
    "line_intersection",
    "is_smooth_at",
    "local_form",
    "is_star_point",
    "analyze",
    "classify",
    "normal_form",
    "normal_form_instance",
    "parse_classifier_input",
    "format_classifier_input",
]

log = logging.getLogger(__name__)

Point = tuple[Fraction, ...]


class LineContainedInY(ValueError):
    pass


class IrrationalIntersection(ValueError):
    pass


class SingularPoint(ValueError):
    pass


class PointNotOnY(ValueError):
    pass


class InconsistentStarPattern(AssertionError):
    pass


class ClassifierInputError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def x_context(n: int) -> VariableContext:
    return VariableContext([f"x{i}" for i in range(1, n + 3)])


def _point(p) -> Point:
    return tuple(Fraction(x) for x in p)


def _normalize(p: Sequence[Fraction]) -> Point:
    """Scale so that the first nonzero coordinate is 1."""
    lead = next(x for x in p if x)
    return tuple(Fraction(x) / lead for x in p)


@dataclass(frozen=True)
class CubicHypersurface:
    f: MultiPoly

    def __post_init__(self):
        if self.f.is_zero():
            raise ValueError("the zero polynomial does not define a hypersurface")
        if self.f.total_degrees() != {3}:
            raise ValueError(f"not a homogeneous cubic: total degrees {sorted(self.f.total_degrees())}")
        if self.f.ctx.arity < 5:
            raise ValueError("need at least 5 homogeneous coordinates")

    @property
    def n(self) -> int:
        return self.f.ctx.arity - 2

    def contains(self, p) -> bool:
        return self.f.evaluate(p) == 0


@dataclass(frozen=True)
class ProjLine:
    p: Point
    q: Point

    def __post_init__(self):
        object.__setattr__(self, "p", _point(self.p))
        object.__setattr__(self, "q", _point(self.q))
        if len(self.p) != len(self.q):
            raise ValueError("points of different lengths")
        if rank([self.p, self.q]) < 2:
            raise ValueError("the two points of a line must be distinct")

    def at(self, u, v) -> Point:
        return tuple(u * a + v * b for a, b in zip(self.p, self.q))


@dataclass(frozen=True)
class IntersectionRecord:
    point: Point
    multiplicity: int
    smooth: Optional[bool] = None
    is_star: Optional[bool] = None


@dataclass(frozen=True)
class LocalForm:
    """``F = y_{n+1} a + y_{n+2} b + c`` in coordinates with p = (0:...:0:1).

    ``basis`` lists the images of the new unit vectors; the last is p and
    the tangent hyperplane at p is ``y_{n+1} = 0``.
    """

    a: MultiPoly
    b: MultiPoly
    c: MultiPoly
    basis: tuple[Point, ...]
    transformed: MultiPoly

    def reconstruct(self) -> MultiPoly:
        ctx = self.a.ctx
        n2 = ctx.arity
        return MultiPoly.var(ctx, n2 - 2) * self.a + MultiPoly.var(ctx, n2 - 1) * self.b + self.c


# -- the binary cubic on the line ---------------------------------------------------


def _binary_cubic(Y: CubicHypersurface, L: ProjLine) -> list[Fraction]:
    """Coefficients c[k] of u^(3-k) v^k in f(u*p + v*q)."""
    if len(L.p) != Y.f.ctx.arity:
        raise ValueError("line and hypersurface live in different projective spaces")
    uv = VariableContext(["u", "v"])
    u, v = MultiPoly.var(uv, 0), MultiPoly.var(uv, 1)
    g = Y.f.compose([u * a + v * b for a, b in zip(L.p, L.q)])
    return [g.coefficient((3 - k, k)) for k in range(4)]


def _poly_div_linear(coeffs: list[Fraction], r: Fraction) -> tuple[list[Fraction], Fraction]:
    """Divide sum coeffs[k] t^k by (t - r); return quotient and remainder."""
    out = [Fraction(0)] * (len(coeffs) - 1)
    acc = Fraction(0)
    for k in range(len(coeffs) - 1, 0, -1):
        acc = coeffs[k] + acc * r
        out[k - 1] = acc
    rem = coeffs[0] + acc * r
    return out, rem


def _divisors(m: int) -> list[int]:
    m = abs(m)
    out = []
    for d in range(1, isqrt(m) + 1):
        if m % d == 0:
            out.extend({d, m // d})
    return out


def _rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    """Distinct rational roots of sum coeffs[k] t^k (nonzero constant term)."""
    from math import lcm

    den = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    roots = []
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if r not in roots and sum(c * r**k for k, c in enumerate(coeffs)) == 0:
                    roots.append(r)
    return roots


def line_intersection(Y: CubicHypersurface, L: ProjLine) -> list[IntersectionRecord]:
    """Points of L on Y with multiplicities (summing to 3)."""
    c = _binary_cubic(Y, L)
    if not any(c):
        raise LineContainedInY("the line lies on the hypersurface")
    # u^(3-k) v^k; roots at v = 0 give p, roots at u = 0 give q
    at_p = next(k for k in range(4) if c[k])  # power of v dividing g
    at_q = next(k for k in range(4) if c[3 - k])  # power of u dividing g
    records = []
    if at_p:
        records.append((L.p, at_p))
    if at_q:
        records.append((L.q, at_q))
    # remaining factor as a polynomial in t = v/u with nonzero constant term
    h = [c[k] for k in range(at_p, 4 - at_q)]
    while len(h) > 1:
        roots = _rational_roots(h)
        if not roots:
            raise IrrationalIntersection(f"binary cubic has an irreducible factor of degree {len(h) - 1} over Q")
        for r in roots:
            mult = 0
            while len(h) > 1:
                q, rem = _poly_div_linear(h, r)
                if rem:
                    break
                h, mult = q, mult + 1
            records.append((L.at(1, r), mult))
    out = [IntersectionRecord(_normalize(p), m) for p, m in records]
    assert sum(r.multiplicity for r in out) == 3
    return sorted(out, key=lambda r: (-r.multiplicity, r.point))


# -- local analysis at a point -------------------------------------------------------------


def _gradient_at(Y: CubicHypersurface, p) -> list[Fraction]:
    if not Y.contains(p):
        raise PointNotOnY(f"{tuple(str(x) for x in p)} is not on the hypersurface")
    return [d.evaluate(p) for d in Y.f.gradient()]


def is_smooth_at(Y: CubicHypersurface, p) -> bool:
    return any(_gradient_at(Y, p))


def local_form(Y: CubicHypersurface, p) -> LocalForm:
    p = _point(p)
    g = _gradient_at(Y, p)
    if not any(g):
        raise SingularPoint(f"the hypersurface is singular at {tuple(str(x) for x in p)}")
    N = len(p)
    k = next(i for i, x in enumerate(g) if x)
    unit = lambda i: tuple(Fraction(int(j == i)) for j in range(N))
    # tangent hyperplane basis e_j - (g_j/g_k) e_k, completed greedily around p
    chosen = [p]
    for j in range(N):
        if j == k:
            continue
        v = tuple(Fraction(int(i == j)) - (g[j] / g[k] if i == k else 0) for i in range(N))
        if rank(chosen + [v]) > len(chosen):
            chosen.append(v)
        if len(chosen) == N - 1:
            break
    basis = tuple(chosen[1:]) + (unit(k), p)
    ctx = Y.f.ctx
    ys = [MultiPoly.var(ctx, i) for i in range(N)]
    images = [sum((ys[j] * basis[j][i] for j in range(N)), MultiPoly.zero(ctx)) for i in range(N)]
    F = Y.f.compose(images)
    a_terms, b_terms, c_terms = {}, {}, {}
    for m, coef in F.terms.items():
        if m[N - 2]:
            mm = list(m)
            mm[N - 2] -= 1
            a_terms[tuple(mm)] = coef
        elif m[N - 1]:
            if m[N - 1] != 1:
                raise AssertionError("local form has a power of the last coordinate outside a")
            mm = list(m)
            mm[N - 1] = 0
            b_terms[tuple(mm)] = coef
        else:
            c_terms[m] = coef
    lf = LocalForm(MultiPoly(ctx, a_terms), MultiPoly(ctx, b_terms), MultiPoly(ctx, c_terms), basis, F)
    assert lf.reconstruct() == F
    return lf


def is_star_point(Y: CubicHypersurface, p) -> bool:
    return local_form(Y, p).b.is_zero()


# -- classification ----------------------------------------------------------------------


@dataclass
class Classification:
    type: VarietyType
    records: list[IntersectionRecord]
    notes: list[str] = field(default_factory=list)

    @property
    def pattern(self) -> tuple[int, ...]:
        return tuple(r.multiplicity for r in self.records)


_PATTERN_NOTE = (
    "pattern (2,1): the star flag is read at the simple point; "
    "a tangency point of a line can never be a star point"
)


def analyze(Y: CubicHypersurface, L: ProjLine) -> Classification:
    records = []
    for r in line_intersection(Y, L):
        lf = local_form(Y, r.point)  # raises SingularPoint
        records.append(IntersectionRecord(r.point, r.multiplicity, True, lf.b.is_zero()))
    pattern = tuple(r.multiplicity for r in records)
    stars = [r.is_star for r in records]
    notes = []
    if pattern == (3,):
        t = VarietyType.XS if stars[0] else VarietyType.X3
    elif pattern == (2, 1):
        if stars[0]:
            raise InconsistentStarPattern("a point of multiplicity 2 on the line is a star point")
        t = VarietyType.XS2 if stars[1] else VarietyType.X12
        notes.append(_PATTERN_NOTE)
    else:
        count = sum(stars)
        if count == 2:
            raise InconsistentStarPattern("two of three collinear intersection points are star points")
        t = {0: VarietyType.X111, 1: VarietyType.XS11, 3: VarietyType.XSSS}[count]
    notes.append("smoothness checked at the intersection points only")
    return Classification(t, records, notes)


def classify(Y: CubicHypersurface, L: ProjLine) -> VarietyType:
    return analyze(Y, L).type


# -- normal forms ---------------------------------------------------------------------------


@dataclass
class NormalForm:
    type: VarietyType
    n: int
    seed: int
    cubic: CubicHypersurface
    line: ProjLine
    notes: list[str]

    def __iter__(self):
        return iter((self.cubic, self.line))


def _cubic_from_forms(vtype: VarietyType, coeffs) -> CubicHypersurface:
    n = coeffs.n
    ctx = VariableContext.standard(n + 2)
    f = {k: v.drop_variables(ctx, [n + 2]) for k, v in coeffs.forms.items()}
    T = lambda k: MultiPoly.var(ctx, k - 1)
    if vtype is VarietyType.X3:
        poly = T(n + 1) * (f["a'"] + T(n + 2) * f["a1"]) + T(n + 2) * f["b'"] + f["b1"]
    elif vtype is VarietyType.XS:
        poly = T(n + 1) * f["a2"] + f["b2"]
    elif vtype is VarietyType.XS2:
        poly = T(n + 1) * f["a3"] + f["b3"]
    elif vtype is VarietyType.XSSS:
        poly = T(n + 1) * T(n + 2) * f["a4"] + f["b4"]
    elif vtype is VarietyType.X12:
        poly = T(n + 1) * f["a5"] + T(n + 2) * f["b5"] + f["c5"]
    elif vtype is VarietyType.XS11:
        poly = T(n + 1) * f["a6"] + f["b6"]
    else:
        poly = T(n + 1) * f["a7"] + T(n + 2) * f["b7"] + f["c7"]
    return CubicHypersurface(poly.with_context(x_context(n)))


def _line_for(vtype: VarietyType, n: int) -> ProjLine:
    e = lambda i: tuple(int(j == i) for j in range(1, n + 3))
    if vtype in (VarietyType.X3, VarietyType.XS, VarietyType.X12):
        return ProjLine(e(n), e(n + 2))
    return ProjLine(e(n + 1), e(n + 2))


def normal_form_instance(vtype, n: int, seed: int = 0, max_attempts: int = 100) -> NormalForm:
    """Seeded cubic and line of the given type, smooth along the line."""
    vtype = VarietyType(vtype)
    L = _line_for(vtype, n)

    def singular_points(coeffs):
        Y = _cubic_from_forms(vtype, coeffs)
        return [
            f"singular at {tuple(str(x) for x in r.point)}"
            for r in line_intersection(Y, L)
            if not is_smooth_at(Y, r.point)
        ]

    coeffs, notes = draw_admissible(vtype, n, seed, max_attempts, extra_check=singular_points)
    return NormalForm(vtype, n, seed, _cubic_from_forms(vtype, coeffs), L, list(coeffs.notes))


def normal_form(vtype, n: int, seed: int = 0) -> tuple[CubicHypersurface, ProjLine]:
    nf = normal_form_instance(vtype, n, seed)
    return nf.cubic, nf.line


# -- text input ---------------------------------------------------------------------------------


def _parse_point(text: str, size: int, lineno: int) -> Point:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != size:
        raise ClassifierInputError(f"point needs {size} coordinates, got {len(parts)}", lineno)
    try:
        return tuple(Fraction(s) for s in parts)
    except (ValueError, ZeroDivisionError):
        raise ClassifierInputError(f"bad coordinate in {text.strip()!r}", lineno) from None


def parse_classifier_input(text: str) -> tuple[CubicHypersurface, ProjLine]:
    """Read ``n = ...``, ``cubic: ...`` and ``line: p ; q`` (``#`` starts a comment)."""
    fields: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n") and "=" in line and line.split("=", 1)[0].strip() == "n":
            key, val = "n", line.split("=", 1)[1]
        elif ":" in line:
            key, val = (s.strip() for s in line.split(":", 1))
        else:
            raise ClassifierInputError(f"cannot read {line!r}", lineno)
        if key not in ("n", "cubic", "line"):
            raise ClassifierInputError(f"unknown field {key!r}", lineno)
        if key in fields:
            raise ClassifierInputError(f"duplicate field {key!r}", lineno)
        fields[key] = (val.strip(), lineno)
    for key in ("n", "cubic", "line"):
        if key not in fields:
            raise ClassifierInputError(f"missing field {key!r}", len(text.splitlines()) + 1)
    nval, nline = fields["n"]
    try:
        n = int(nval)
    except ValueError:
        raise ClassifierInputError(f"n must be an integer, got {nval!r}", nline) from None
    if n < 3:
        raise ClassifierInputError("n must be at least 3", nline)
    ctx = x_context(n)
    ctext, cline = fields["cubic"]
    try:
        Y = CubicHypersurface(parse_poly(ctext, ctx))
    except ValueError as exc:
        raise ClassifierInputError(str(exc), cline) from None
    ltext, lline = fields["line"]
    halves = ltext.split(";")
    if len(halves) != 2:
        raise ClassifierInputError("line needs two points separated by ';'", lline)
    try:
        L = ProjLine(*(_parse_point(h, n + 2, lline) for h in halves))
    except ClassifierInputError:
        raise
    except ValueError as exc:
        raise ClassifierInputError(str(exc), lline) from None
    return Y, L


def format_classifier_input(Y: CubicHypersurface, L: ProjLine) -> str:
    pt = lambda p: ", ".join(str(x) for x in p)
    return f"n = {Y.n}\ncubic: {Y.f}\nline: {pt(L.p)} ; {pt(L.q)}\n"
